"""Predicate vocabulary used throughout the package.

The ORE and Dublin Core URIs are fixed. The project-specific terms hang off a
single configurable base so another deployment can rehome them; everything
else about the vocabulary is closed.
"""

from __future__ import annotations

import os

from oreweave.rdf import Uri

ORE_NS = "http://www.openarchives.org/ore/terms/"
DCTERMS_NS = "http://purl.org/dc/terms/"

DESCRIBES = Uri(ORE_NS + "describes")
AGGREGATES = Uri(ORE_NS + "aggregates")
IS_DESCRIBED_BY = Uri(ORE_NS + "isDescribedBy")

HAS_VERSION = Uri(DCTERMS_NS + "hasVersion")
CREATED = Uri(DCTERMS_NS + "created")
PUBLISHER = Uri(DCTERMS_NS + "publisher")

DEFAULT_VOCAB_BASE = "http://example.org/oreweave/terms/"

ENV_VOCAB_BASE = "OREWEAVE_VOCAB_BASE"


class Vocabulary:
    """Resolved predicate set for one vocabulary base.

    Only the project-term base is a knob; the ORE and Dublin Core predicates
    are the same on every instance.
    """

    __slots__ = (
        "base",
        "has_bibliographic_description",
        "in_stage",
        "has_lifecycle_stage",
        "precedes_stage",
    )

    def __init__(self, base: str = DEFAULT_VOCAB_BASE):
        if not base.endswith(("/", "#")):
            base = base + "/"
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "has_bibliographic_description", Uri(base + "hasBibliographicDescription"))
        object.__setattr__(self, "in_stage", Uri(base + "inStage"))
        object.__setattr__(self, "has_lifecycle_stage", Uri(base + "hasLifecycleStage"))
        object.__setattr__(self, "precedes_stage", Uri(base + "precedesStage"))

    def __setattr__(self, name, val):
        raise AttributeError("Vocabulary is immutable")

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.base == other.base

    def __hash__(self):
        return hash((Vocabulary, self.base))

    def __repr__(self):
        return f"Vocabulary(base={self.base!r})"

    @classmethod
    def from_env(cls) -> "Vocabulary":
        """Vocabulary honoring the OREWEAVE_VOCAB_BASE environment variable."""
        return cls(os.environ.get(ENV_VOCAB_BASE, DEFAULT_VOCAB_BASE))


DEFAULT_VOCABULARY = Vocabulary()

# Predicates that wire the model together rather than assert domain facts.
# Validation and co-reference analysis treat these as plumbing.
STRUCTURAL_PREDICATES = frozenset({DESCRIBES, AGGREGATES, IS_DESCRIBED_BY, CREATED})
