"""Built-in example stores under the fictional http://example.org/cens/ namespace.

Three self-contained case studies:

* ``scholarly-publication``: one aggregation tracing an article from
  manuscript through revision and preprint to the published version, with
  the publisher's metadata record and additional material alongside.
* ``seismology``: a field campaign whose raw seismic dataset exists in two
  formats (Mini-SEED and SAC) held at different sites, wrapped in a nested
  aggregation, with three technical publications at the end of the line.
* ``environmental``: an aquatic sensing campaign whose raw contaminant
  dataset circulates in three formats, with documentation split across two
  data libraries and two articles each available as preprint and published
  copy.

Every fixture uses a fixed creation timestamp so the resulting stores are
byte-for-byte reproducible.
"""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping

from oreweave.lifecycle import (
    LifecycleStage,
    StagedArtifact,
    build_stage,
    link_lifecycle,
)
from oreweave.model import ResourceMap, assert_version_chain, describe, new_aggregation
from oreweave.rdf import Triple, Uri
from oreweave.store import MapStore
from oreweave.vocab import DEFAULT_VOCABULARY, IS_DESCRIBED_BY, Vocabulary

FIXTURE_NAMES = ("scholarly-publication", "seismology", "environmental")

FIXTURE_CREATED = datetime(2009, 6, 1, 0, 0, 0, tzinfo=timezone.utc)

_NS = "http://example.org/cens/"

DESIGN = LifecycleStage.DESIGN_CALIBRATION
CAPTURE = LifecycleStage.CAPTURE_CLEANING_ANALYSIS
PUBLICATION = LifecycleStage.PUBLICATION_PRESERVATION


def _scholarly_maps(vocabulary: Vocabulary) -> list[ResourceMap]:
    base = _NS + "scholarly/"
    manuscript = Uri(base + "article/manuscript")
    revision = Uri(base + "article/revision")
    preprint = Uri(base + "article/preprint")
    publication = Uri(base + "article/publication")
    publisher_metadata = Uri(base + "article/publisher-metadata")
    additional = Uri(base + "article/additional-material")

    agg = new_aggregation(
        Uri(base + "A"),
        [manuscript, revision, preprint, publication, publisher_metadata, additional],
    )
    extras = assert_version_chain([manuscript, revision, preprint, publication])
    extras.append(Triple(publication, vocabulary.has_bibliographic_description, publisher_metadata))
    rem = describe(agg, Uri(base + "ReM"), extras, created=FIXTURE_CREATED)
    return [rem]


def _seismology_maps(
    vocabulary: Vocabulary,
    table: Mapping[str, LifecycleStage] | None = None,
) -> list[ResourceMap]:
    base = _NS + "seismology/"

    def artifact(path: str, kind: str, library: str | None) -> StagedArtifact:
        return StagedArtifact.of(Uri(base + path), kind, library, table)

    # Stage 1: the deployment record set for the sensor network sites.
    stage1 = [
        artifact("docs/deployment-plan", "deployment-plan", "censdc"),
        artifact("docs/topographic-maps", "deployment-plan", "censdc"),
        artifact("docs/permission-letters", "deployment-plan", "censdc"),
        artifact("docs/payment-agreements", "deployment-plan", "censdc"),
        artifact("docs/site-documentation", "deployment-plan", "censdc"),
    ]
    a1, rem1 = build_stage(
        DESIGN, stage1, Uri(base + "A-1"), Uri(base + "ReM-1"),
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    # The collected seismic dataset exists in two formats at two sites and
    # is an aggregation in its own right, nested inside stage 2.
    miniseed = Uri(base + "data/seismic-miniseed")
    sac = Uri(base + "data/seismic-sac")
    ar2 = new_aggregation(Uri(base + "AR-2"), [miniseed, sac])
    rem_ar2 = describe(ar2, Uri(base + "ReM-AR-2"), created=FIXTURE_CREATED)

    stage2 = [
        artifact("AR-2", "raw-dataset", None),
        artifact("records/deployment-context", "context-record", "censdc"),
        artifact("records/network-health", "network-health-record", "project-database"),
    ]
    a2, rem2 = build_stage(
        CAPTURE, stage2, Uri(base + "A-2"), Uri(base + "ReM-2"),
        extra=[Triple(ar2.uri, IS_DESCRIBED_BY, rem_ar2.uri)],
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    # Stage 3: three technical publications; two are online both as preprint
    # and publisher copy, the third only in the institutional repository.
    protocols_article = Uri(base + "pubs/network-protocols-article")
    protocols_preprint = Uri(base + "pubs/network-protocols-preprint")
    requirements_article = Uri(base + "pubs/field-requirements-article")
    requirements_preprint = Uri(base + "pubs/field-requirements-preprint")
    stage3 = [
        artifact("pubs/network-protocols-article", "publication", "publisher-website"),
        artifact("pubs/network-protocols-preprint", "preprint", "cens-escholarship"),
        artifact("pubs/field-requirements-article", "publication", "publisher-website"),
        artifact("pubs/field-requirements-preprint", "preprint", "cens-escholarship"),
        artifact("pubs/array-characterization-report", "publication", "cens-escholarship"),
    ]
    version_links = assert_version_chain([protocols_preprint, protocols_article])
    version_links += assert_version_chain([requirements_preprint, requirements_article])
    a3, rem3 = build_stage(
        PUBLICATION, stage3, Uri(base + "A-3"), Uri(base + "ReM-3"),
        extra=version_links,
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    bundle = link_lifecycle(
        {DESIGN: (a1, rem1), CAPTURE: (a2, rem2), PUBLICATION: (a3, rem3)},
        Uri(base + "A-t"),
        Uri(base + "ReM-t"),
        created=FIXTURE_CREATED,
        vocabulary=vocabulary,
    )
    return [rem1, rem_ar2, rem2, rem3, bundle.total_map]


def _environmental_maps(
    vocabulary: Vocabulary,
    table: Mapping[str, LifecycleStage] | None = None,
) -> list[ResourceMap]:
    base = _NS + "environmental/"

    def artifact(path: str, kind: str, library: str | None) -> StagedArtifact:
        return StagedArtifact.of(Uri(base + path), kind, library, table)

    # Stage 1: four documents split across two disjoint data libraries.
    stage1 = [
        artifact("docs/calibration-reports", "calibration-report", "ucmerced-snsjho"),
        artifact("docs/field-setup-notes", "lab-notebook", "ucmerced-snsjho"),
        artifact("docs/equipment-list", "deployment-plan", "censdc"),
        artifact("docs/team-roster", "deployment-plan", "censdc"),
    ]
    a1, rem1 = build_stage(
        DESIGN, stage1, Uri(base + "A-1"), Uri(base + "ReM-1"),
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    # Stage 2: the contaminant dataset in three interconvertible formats,
    # background records, media, and the analysis software.
    cont_txt = Uri(base + "data/contaminant-txt")
    cont_csv = Uri(base + "data/contaminant-csv")
    cont_kml = Uri(base + "data/contaminant-kml")
    stage2 = [
        artifact("data/contaminant-txt", "raw-dataset", "ucmerced-snsjho"),
        artifact("data/contaminant-csv", "raw-dataset", "ucmerced-snsjho"),
        artifact("data/contaminant-kml", "raw-dataset", "ucmerced-snsjho"),
        artifact("data/weather-station-record", "raw-dataset", "ucmerced-snsjho"),
        artifact("data/bathymetry-record", "raw-dataset", "ucmerced-snsjho"),
        artifact("data/deployment-media", "media", "ucmerced-snsjho"),
        artifact("software/post-processing", "software", "ucmerced-snsjho"),
    ]
    a2, rem2 = build_stage(
        CAPTURE, stage2, Uri(base + "A-2"), Uri(base + "ReM-2"),
        extra=assert_version_chain([cont_txt, cont_csv, cont_kml]),
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    # Stage 3: two articles, each a preprint in the institutional repository
    # plus a published copy in the publisher's library.
    water_article = Uri(base + "pubs/water-quality-article")
    water_preprint = Uri(base + "pubs/water-quality-preprint")
    robot_article = Uri(base + "pubs/robotic-sensing-article")
    robot_preprint = Uri(base + "pubs/robotic-sensing-preprint")
    stage3 = [
        artifact("pubs/water-quality-article", "publication", "publisher-library"),
        artifact("pubs/water-quality-preprint", "preprint", "cens-escholarship"),
        artifact("pubs/robotic-sensing-article", "publication", "publisher-library"),
        artifact("pubs/robotic-sensing-preprint", "preprint", "cens-escholarship"),
    ]
    version_links = assert_version_chain([water_preprint, water_article])
    version_links += assert_version_chain([robot_preprint, robot_article])
    a3, rem3 = build_stage(
        PUBLICATION, stage3, Uri(base + "A-3"), Uri(base + "ReM-3"),
        extra=version_links,
        created=FIXTURE_CREATED, vocabulary=vocabulary, table=table,
    )

    bundle = link_lifecycle(
        {DESIGN: (a1, rem1), CAPTURE: (a2, rem2), PUBLICATION: (a3, rem3)},
        Uri(base + "A-t"),
        Uri(base + "ReM-t"),
        created=FIXTURE_CREATED,
        vocabulary=vocabulary,
    )
    return [rem1, rem2, rem3, bundle.total_map]


def fixture_maps(
    name: str,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
    table: Mapping[str, LifecycleStage] | None = None,
) -> list[ResourceMap]:
    """The resource maps making up one named fixture."""
    if name == "scholarly-publication":
        return _scholarly_maps(vocabulary)
    if name == "seismology":
        return _seismology_maps(vocabulary, table)
    if name == "environmental":
        return _environmental_maps(vocabulary, table)
    raise ValueError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")


def load_fixture(
    name: str,
    root: str | Path | None = None,
    vocabulary: Vocabulary = DEFAULT_VOCABULARY,
    table: Mapping[str, LifecycleStage] | None = None,
) -> MapStore:
    """Build a named fixture as a map store, on disk when ``root`` is given."""
    store = MapStore(root)
    for rem in fixture_maps(name, vocabulary, table):
        store.put(rem)
    return store
