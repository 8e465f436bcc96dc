"""oreweave: linked aggregations of research artifacts.

Build aggregations and their resource maps, serialize them to a canonical
line format or a strict RDF/XML subset, persist them in per-map stores,
serve them over HTTP with content negotiation, harvest them back into a
union graph, and trace relationships across map boundaries.
"""

from oreweave.errors import (
    InvalidTripleError,
    InvalidUriError,
    ModelError,
    OreweaveError,
    ParseError,
    SerializeError,
    StoreConflictError,
    StoreError,
)
from oreweave.harvest import (
    HarvestResult,
    TraceResult,
    UnionGraph,
    co_referenced,
    harvest,
    trace,
)
from oreweave.lifecycle import (
    KINDS,
    LifecycleBundle,
    LifecycleStage,
    StagedArtifact,
    build_stage,
    link_lifecycle,
    load_stage_table,
    stage_of,
)
from oreweave.fixtures import FIXTURE_NAMES, load_fixture
from oreweave.model import (
    Aggregation,
    Finding,
    Relationship,
    ResourceMap,
    UnknownResourceWarning,
    ValidationReport,
    assert_version_chain,
    describe,
    nest,
    new_aggregation,
    validate,
)
from oreweave.rdf import Graph, Literal, Term, Triple, Uri
from oreweave.server import DerefRequest, DerefResponse, resolve, serve
from oreweave.store import MapStore
from oreweave.vocab import DEFAULT_VOCABULARY, Vocabulary

__version__ = "0.1.0"

__all__ = [
    "Aggregation",
    "DEFAULT_VOCABULARY",
    "DerefRequest",
    "DerefResponse",
    "FIXTURE_NAMES",
    "Finding",
    "Graph",
    "HarvestResult",
    "InvalidTripleError",
    "InvalidUriError",
    "KINDS",
    "LifecycleBundle",
    "LifecycleStage",
    "Literal",
    "MapStore",
    "ModelError",
    "OreweaveError",
    "ParseError",
    "Relationship",
    "ResourceMap",
    "SerializeError",
    "StagedArtifact",
    "StoreConflictError",
    "StoreError",
    "Term",
    "TraceResult",
    "Triple",
    "UnionGraph",
    "UnknownResourceWarning",
    "Uri",
    "ValidationReport",
    "Vocabulary",
    "assert_version_chain",
    "build_stage",
    "co_referenced",
    "describe",
    "harvest",
    "link_lifecycle",
    "load_fixture",
    "load_stage_table",
    "nest",
    "new_aggregation",
    "resolve",
    "serve",
    "stage_of",
    "trace",
    "validate",
    "__version__",
]
