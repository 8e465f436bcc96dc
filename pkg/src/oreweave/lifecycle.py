"""The three-stage research life cycle and its aggregation builders.

Artifacts are classified by a kind tag; a shipped table maps each kind to
one of three stages (design and calibration; capture, cleaning and analysis;
publication and preservation). A stage becomes one aggregation plus its map,
and a whole campaign becomes a total aggregation nesting the stage
aggregations in order. Stages may be skipped: the chain links whichever
stages are present.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from oreweave.errors import ModelError
from oreweave.model import (
    Aggregation,
    Relationship,
    ResourceMap,
    describe,
    new_aggregation,
)
from oreweave.rdf import Literal, Triple, Uri
from oreweave.vocab import DEFAULT_VOCABULARY, IS_DESCRIBED_BY, PUBLISHER, Vocabulary


class LifecycleStage(Enum):
    """One stage of the integrated research life cycle, in fixed order."""

    DESIGN_CALIBRATION = (1, "DesignCalibration", "Design & Calibration")
    CAPTURE_CLEANING_ANALYSIS = (2, "CaptureCleaningAnalysis", "Capture, Cleaning & Analysis")
    PUBLICATION_PRESERVATION = (3, "PublicationPreservation", "Publication & Preservation")

    @property
    def ordinal(self) -> int:
        return self.value[0]

    @property
    def token(self) -> str:
        """Stable machine-readable name used in stage tables and triples."""
        return self.value[1]

    @property
    def label(self) -> str:
        return self.value[2]

    @classmethod
    def from_token(cls, token: str) -> "LifecycleStage":
        for stage in cls:
            if stage.token == token:
                return stage
        valid = ", ".join(s.token for s in cls)
        raise ModelError(f"unknown lifecycle stage {token!r}; valid stages: {valid}")


KINDS = frozenset(
    {
        "deployment-plan",
        "lab-notebook",
        "calibration-report",
        "raw-dataset",
        "cleaned-dataset",
        "analysis-output",
        "context-record",
        "network-health-record",
        "preprint",
        "publication",
        "publisher-metadata",
        "supplemental",
        "software",
        "media",
    }
)


def load_stage_table(path: str | Path | None = None) -> dict[str, LifecycleStage]:
    """Load a kind-to-stage table from a tab-separated file.

    None loads the table shipped with the package. Rows are
    ``kind<TAB>stage-token``; blank lines and #-comments are skipped.
    """
    if path is None:
        text = (importlib_resources.files("oreweave") / "data" / "stages.tsv").read_text("utf-8")
        source = "builtin stages.tsv"
    else:
        text = Path(path).read_text("utf-8")
        source = str(path)
    table: dict[str, LifecycleStage] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        row = line.strip()
        if not row or row.startswith("#"):
            continue
        parts = row.split("\t")
        if len(parts) != 2:
            raise ModelError(f"{source} line {lineno}: expected 'kind<TAB>stage'")
        kind, token = parts[0].strip(), parts[1].strip()
        if kind in table:
            raise ModelError(f"{source} line {lineno}: duplicate kind {kind!r}")
        table[kind] = LifecycleStage.from_token(token)
    if not table:
        raise ModelError(f"{source}: stage table is empty")
    return table


_default_table: dict[str, LifecycleStage] | None = None


def default_stage_table() -> dict[str, LifecycleStage]:
    global _default_table
    if _default_table is None:
        _default_table = load_stage_table()
    return dict(_default_table)


def stage_of(kind: str, table: Mapping[str, LifecycleStage] | None = None) -> LifecycleStage:
    """Map an artifact kind to its lifecycle stage."""
    table = default_stage_table() if table is None else table
    try:
        return table[kind]
    except KeyError:
        valid = ", ".join(sorted(table))
        raise ModelError(f"unknown artifact kind {kind!r}; valid kinds: {valid}") from None


@dataclass(frozen=True)
class StagedArtifact:
    """A research artifact tagged with its kind, stage, and hosting archive."""

    uri: Uri
    kind: str
    stage: LifecycleStage
    source_library: str | None = None

    @classmethod
    def of(
        cls,
        uri: Uri,
        kind: str,
        source_library: str | None = None,
        table: Mapping[str, LifecycleStage] | None = None,
    ) -> "StagedArtifact":
        return cls(uri=uri, kind=kind, stage=stage_of(kind, table), source_library=source_library)


@dataclass(frozen=True)
class LifecycleBundle:
    """A campaign's stage aggregations plus the total aggregation tying them together."""

    stages: dict[LifecycleStage, Aggregation]
    total: Aggregation
    total_map: ResourceMap


def build_stage(
    stage: LifecycleStage,
    artifacts: Sequence[StagedArtifact],
    uri: Uri,
    rem_uri: Uri,
    *,
    extra: Iterable[Relationship] = (),
    created: datetime | None = None,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
    table: Mapping[str, LifecycleStage] | None = None,
) -> tuple[Aggregation, ResourceMap]:
    """Aggregate one stage's artifacts and describe the result.

    Every artifact must belong to ``stage`` under the active table. The map
    records the stage with an inStage triple and each artifact's hosting
    archive with a publisher triple.
    """
    if not artifacts:
        raise ModelError(f"stage {stage.token} has no artifacts")
    for a in artifacts:
        expected = stage_of(a.kind, table)
        if a.stage != stage or expected != stage:
            raise ModelError(
                f"artifact {a.uri} has kind {a.kind!r} (stage {expected.token}), "
                f"which does not belong in stage {stage.token}"
            )
    agg = new_aggregation(uri, [a.uri for a in artifacts])
    extras: list[Relationship] = [Triple(uri, vocabulary.in_stage, Literal(stage.token))]
    for a in artifacts:
        if a.source_library is not None:
            extras.append(Triple(a.uri, PUBLISHER, Literal(a.source_library)))
    extras.extend(extra)
    rem = describe(agg, rem_uri, extras, created=created)
    return agg, rem


def link_lifecycle(
    stages: Mapping[LifecycleStage, tuple[Aggregation, ResourceMap]],
    total_uri: Uri,
    rem_uri: Uri,
    *,
    created: datetime | None = None,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
) -> LifecycleBundle:
    """Tie the present stage aggregations into one total aggregation.

    The total map aggregates each stage aggregation, links consecutive
    present stages with precedesStage (skipped stages close the gap), tags
    each member with its stage, and records where each member's own map
    lives so a harvester can walk down the hierarchy.
    """
    if not stages:
        raise ModelError("lifecycle needs at least one stage")
    ordered = sorted(stages.items(), key=lambda kv: kv[0].ordinal)
    total = new_aggregation(total_uri, [agg.uri for _, (agg, _) in ordered])
    extras: list[Relationship] = []
    for stage, (agg, rem) in ordered:
        extras.append(Triple(agg.uri, IS_DESCRIBED_BY, rem.uri))
        extras.append(Triple(agg.uri, vocabulary.has_lifecycle_stage, Literal(stage.token)))
    for (_, (earlier, _)), (_, (later, _)) in zip(ordered, ordered[1:]):
        extras.append(Triple(earlier.uri, vocabulary.precedes_stage, later.uri))
    total_map = describe(total, rem_uri, extras, created=created)
    return LifecycleBundle(
        stages={stage: agg for stage, (agg, _) in ordered},
        total=total,
        total_map=total_map,
    )
