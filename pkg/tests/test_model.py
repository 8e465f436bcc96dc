import random
import warnings
from datetime import datetime, timedelta, timezone

import pytest

import oracles
from genmaps import random_resource_map
from oreweave.errors import ModelError
from oreweave.model import (
    Aggregation,
    Finding,
    ResourceMap,
    UnknownResourceWarning,
    ValidationReport,
    assert_version_chain,
    describe,
    format_timestamp,
    nest,
    new_aggregation,
    normalize_timestamp,
    parse_timestamp,
    validate,
)
from oreweave.rdf import Graph, Literal, Triple, Uri
from oreweave.vocab import AGGREGATES, CREATED, DESCRIBES, HAS_VERSION, IS_DESCRIBED_BY

AGG = Uri("http://example.org/store/agg")
REM = Uri("http://example.org/store/rem")
DOC_A = Uri("http://example.org/store/doc-a")
DOC_B = Uri("http://example.org/store/doc-b")
ELSEWHERE = Uri("http://elsewhere.example.net/resource")
NOTE = Uri("http://vocab.example.org/terms/note")
WHEN = datetime(2009, 6, 1, tzinfo=timezone.utc)


def single_map(agg_uri, rem_uri, resources, extra=()):
    return describe(new_aggregation(agg_uri, resources), rem_uri, extra, created=WHEN)


class TestTimestamps:
    def test_format_parse_round_trip(self):
        assert parse_timestamp(format_timestamp(WHEN)) == WHEN

    def test_format_is_utc_second_precision(self):
        eastern = timezone(timedelta(hours=-5))
        value = datetime(2009, 5, 31, 19, 0, 0, 123456, tzinfo=eastern)
        assert format_timestamp(value) == "2009-06-01T00:00:00Z"

    def test_naive_datetimes_are_taken_as_utc(self):
        assert normalize_timestamp(datetime(2009, 6, 1)) == WHEN

    def test_bad_timestamp_is_a_model_error(self):
        with pytest.raises(ModelError):
            parse_timestamp("last tuesday")


class TestAggregation:
    def test_basic_construction(self):
        agg = new_aggregation(AGG, [DOC_A, DOC_B])
        assert len(agg) == 2
        assert DOC_A in agg
        assert ELSEWHERE not in agg

    def test_self_aggregation_is_rejected(self):
        with pytest.raises(ModelError):
            new_aggregation(AGG, [DOC_A, AGG])

    def test_duplicate_resources_are_rejected(self):
        with pytest.raises(ModelError):
            new_aggregation(AGG, [DOC_A, DOC_A])

    def test_metadata_must_be_about_the_aggregation(self):
        good = Triple(AGG, NOTE, Literal("fine"))
        bad = Triple(DOC_A, NOTE, Literal("not about the aggregation"))
        Aggregation(AGG, (DOC_A,), (good,))
        with pytest.raises(ModelError):
            Aggregation(AGG, (DOC_A,), (bad,))


class TestNest:
    def test_nest_appends_child_uri(self):
        parent = new_aggregation(AGG, [DOC_A])
        child = new_aggregation(Uri("http://example.org/store/child"), [DOC_B])
        nested = nest(parent, child)
        assert child.uri in nested
        assert DOC_A in nested

    def test_nest_self_is_rejected(self):
        parent = new_aggregation(AGG, [DOC_A])
        with pytest.raises(ModelError):
            nest(parent, parent)

    def test_nest_twice_is_rejected(self):
        parent = new_aggregation(AGG, [DOC_A])
        child = new_aggregation(Uri("http://example.org/store/child"), [DOC_B])
        with pytest.raises(ModelError):
            nest(nest(parent, child), child)


class TestVersionChain:
    def test_four_versions_yield_three_links(self):
        versions = [Uri(f"http://example.org/v/{i}") for i in range(4)]
        links = assert_version_chain(versions)
        assert links == [
            Triple(versions[0], HAS_VERSION, versions[1]),
            Triple(versions[1], HAS_VERSION, versions[2]),
            Triple(versions[2], HAS_VERSION, versions[3]),
        ]

    def test_requires_two_distinct_versions(self):
        v = Uri("http://example.org/v/only")
        with pytest.raises(ModelError):
            assert_version_chain([v])
        with pytest.raises(ModelError):
            assert_version_chain([v, v])


class TestDescribe:
    def test_statement_count_law(self):
        # describes + one aggregates per resource + each extra
        extra = [Triple(DOC_A, HAS_VERSION, DOC_B)]
        rem = single_map(AGG, REM, [DOC_A, DOC_B], extra)
        assert len(rem.statements) == oracles.describe_statement_count(2, 1)

    def test_statement_count_law_on_random_maps(self):
        for seed in range(25):
            rng = random.Random(seed)
            rem = random_resource_map(rng)
            n = len(rem.resources())
            k = len(rem.statements) - (1 + n)
            assert len(rem.statements) == oracles.describe_statement_count(n, k)

    def test_rem_uri_must_differ_from_aggregation(self):
        with pytest.raises(ModelError):
            single_map(AGG, AGG, [DOC_A])

    def test_unknown_reference_warns(self):
        extra = [Triple(DOC_A, NOTE, ELSEWHERE)]
        with pytest.warns(UnknownResourceWarning):
            single_map(AGG, REM, [DOC_A], extra)

    def test_known_references_do_not_warn(self):
        extra = [Triple(DOC_A, HAS_VERSION, DOC_B), Triple(AGG, NOTE, Literal("x"))]
        with warnings.catch_warnings():
            warnings.simplefilter("error", UnknownResourceWarning)
            single_map(AGG, REM, [DOC_A, DOC_B], extra)

    def test_structural_links_to_external_maps_do_not_warn(self):
        # Children keep their own maps outside the parent aggregation, so an
        # isDescribedBy pointer must stay quiet.
        child = Uri("http://example.org/store/child")
        child_rem = Uri("http://example.org/store/child-rem")
        extra = [Triple(child, IS_DESCRIBED_BY, child_rem)]
        with warnings.catch_warnings():
            warnings.simplefilter("error", UnknownResourceWarning)
            single_map(AGG, REM, [DOC_A, child], extra)

    def test_literal_objects_never_warn(self):
        extra = [Triple(DOC_A, NOTE, Literal("just text"))]
        with warnings.catch_warnings():
            warnings.simplefilter("error", UnknownResourceWarning)
            single_map(AGG, REM, [DOC_A], extra)


class TestResourceMap:
    def test_resources_are_sorted(self):
        rem = single_map(AGG, REM, [DOC_B, DOC_A])
        assert rem.resources() == (DOC_A, DOC_B)

    def test_aggregation_round_trips(self):
        rem = single_map(AGG, REM, [DOC_A, DOC_B])
        agg = rem.aggregation()
        assert agg.uri == AGG
        assert set(agg.resources) == {DOC_A, DOC_B}

    def test_statements_must_contain_describes(self):
        with pytest.raises(ModelError):
            ResourceMap(REM, AGG, Graph([Triple(AGG, AGGREGATES, DOC_A)]), WHEN)

    def test_to_graph_adds_exactly_the_created_stamp(self):
        rem = single_map(AGG, REM, [DOC_A])
        g = rem.to_graph()
        assert len(g) == len(rem.statements) + 1
        stamps = g.match(subject=REM, predicate=CREATED)
        assert len(stamps) == 1
        (stamp,) = stamps
        assert stamp.obj == Literal("2009-06-01T00:00:00Z")

    def test_to_graph_rejects_conflicting_created(self):
        conflict = Triple(REM, CREATED, Literal("1999-01-01T00:00:00Z"))
        rem = single_map(AGG, REM, [DOC_A], [conflict])
        with pytest.raises(ModelError):
            rem.to_graph()

    def test_from_graph_inverts_to_graph(self):
        rem = single_map(AGG, REM, [DOC_A, DOC_B], [Triple(DOC_A, HAS_VERSION, DOC_B)])
        back = ResourceMap.from_graph(rem.to_graph())
        assert back == rem

    def test_from_graph_requires_describes(self):
        g = Graph([Triple(REM, CREATED, Literal("2009-06-01T00:00:00Z"))])
        with pytest.raises(ModelError):
            ResourceMap.from_graph(g)

    def test_from_graph_rejects_two_describes(self):
        g = single_map(AGG, REM, [DOC_A]).to_graph()
        g = g.insert(Triple(Uri("http://example.org/store/rem2"), DESCRIBES, AGG))
        with pytest.raises(ModelError):
            ResourceMap.from_graph(g)

    def test_from_graph_requires_created(self):
        g = Graph(single_map(AGG, REM, [DOC_A]).statements)
        with pytest.raises(ModelError):
            ResourceMap.from_graph(g)

    def test_from_graph_rejects_two_created(self):
        g = single_map(AGG, REM, [DOC_A]).to_graph()
        g = g.insert(Triple(REM, CREATED, Literal("2010-01-01T00:00:00Z")))
        with pytest.raises(ModelError):
            ResourceMap.from_graph(g)


def finding_codes(report: ValidationReport) -> list[str]:
    return [f.code for f in report.errors + report.warnings]


class TestValidate:
    def test_clean_store(self):
        report = validate([single_map(AGG, REM, [DOC_A, DOC_B])])
        assert report.ok
        assert report.summary() == "0 errors, 0 warnings"
        assert report.lines() == ["0 errors, 0 warnings"]

    def test_empty_aggregation_is_e1(self):
        report = validate([single_map(AGG, REM, [])])
        assert finding_codes(report) == ["E1"]
        assert report.errors[0].subject == AGG
        assert not report.ok

    def test_duplicate_maps_are_one_e2(self):
        rem2 = Uri("http://example.org/store/rem-rival")
        report = validate(
            [single_map(AGG, REM, [DOC_A]), single_map(AGG, rem2, [DOC_A])]
        )
        assert finding_codes(report) == ["E2"]
        assert report.errors[0].subject == AGG
        assert str(REM) in report.errors[0].message
        assert str(rem2) in report.errors[0].message

    def test_nesting_cycle_is_one_e3(self):
        a = Uri("http://example.org/store/agg-a")
        b = Uri("http://example.org/store/agg-b")
        map_a = single_map(a, Uri("http://example.org/store/rem-a"), [b])
        map_b = single_map(b, Uri("http://example.org/store/rem-b"), [a])
        report = validate([map_a, map_b])
        assert finding_codes(report) == ["E3"]
        assert "->" in report.errors[0].message

    def test_three_party_cycle_is_still_one_e3(self):
        uris = [Uri(f"http://example.org/store/agg-{i}") for i in range(3)]
        rems = [Uri(f"http://example.org/store/rem-{i}") for i in range(3)]
        maps = [
            single_map(uris[i], rems[i], [uris[(i + 1) % 3]]) for i in range(3)
        ]
        report = validate(maps)
        assert finding_codes(report) == ["E3"]

    def test_self_loop_is_e3(self):
        # Builders refuse self-aggregation, so assemble the defect directly.
        statements = Graph(
            [Triple(REM, DESCRIBES, AGG), Triple(AGG, AGGREGATES, AGG)]
        )
        rem = ResourceMap(REM, AGG, statements, WHEN)
        report = validate([rem])
        assert finding_codes(report) == ["E3"]

    def test_nested_aggregation_without_map_is_one_w1(self):
        child = Uri("http://example.org/store/child")
        child_rem = Uri("http://example.org/store/child-rem")
        extra = [Triple(child, IS_DESCRIBED_BY, child_rem)]
        report = validate([single_map(AGG, REM, [DOC_A, child], extra)])
        assert finding_codes(report) == ["W1"]
        assert report.warnings[0].subject == child
        assert report.ok

    def test_w1_clears_when_child_map_is_present(self):
        child = Uri("http://example.org/store/child")
        child_rem = Uri("http://example.org/store/child-rem")
        extra = [Triple(child, IS_DESCRIBED_BY, child_rem)]
        parent = single_map(AGG, REM, [DOC_A, child], extra)
        child_map = single_map(child, child_rem, [DOC_B])
        assert finding_codes(validate([parent, child_map])) == []

    def test_unknown_reference_is_one_w2(self):
        extra = [Triple(DOC_A, NOTE, ELSEWHERE)]
        with pytest.warns(UnknownResourceWarning):
            rem = single_map(AGG, REM, [DOC_A], extra)
        report = validate([rem])
        assert finding_codes(report) == ["W2"]
        assert report.warnings[0].subject == DOC_A
        assert str(ELSEWHERE) in report.warnings[0].message

    def test_w2_clears_when_another_map_knows_the_uri(self):
        extra = [Triple(DOC_A, NOTE, ELSEWHERE)]
        with pytest.warns(UnknownResourceWarning):
            rem = single_map(AGG, REM, [DOC_A], extra)
        other = single_map(
            Uri("http://example.org/store/agg-other"),
            Uri("http://example.org/store/rem-other"),
            [ELSEWHERE],
        )
        assert finding_codes(validate([rem, other])) == []

    def test_literals_are_exempt_from_w2(self):
        extra = [Triple(DOC_A, NOTE, Literal("free text"))]
        assert finding_codes(validate([single_map(AGG, REM, [DOC_A], extra)])) == []

    def test_report_is_permutation_invariant(self):
        a = Uri("http://example.org/store/agg-a")
        b = Uri("http://example.org/store/agg-b")
        maps = [
            single_map(a, Uri("http://example.org/store/rem-a"), [b]),
            single_map(b, Uri("http://example.org/store/rem-b"), [a]),
            single_map(AGG, REM, []),
        ]
        forward = validate(maps)
        backward = validate(list(reversed(maps)))
        assert forward == backward
        assert forward.lines() == backward.lines()

    def test_cycle_detection_agrees_with_oracle(self):
        rng = random.Random(7)
        for _ in range(50):
            uris = [Uri(f"http://example.org/store/agg-{i}") for i in range(5)]
            rems = [Uri(f"http://example.org/store/rem-{i}") for i in range(5)]
            maps = []
            edges = []
            for i in range(5):
                children = [
                    u for j, u in enumerate(uris) if j != i and rng.random() < 0.3
                ]
                edges.extend((uris[i], c) for c in children)
                maps.append(single_map(uris[i], rems[i], children or [DOC_A]))
            report = validate(maps)
            has_e3 = any(f.code == "E3" for f in report.errors)
            assert has_e3 == oracles.has_cycle(edges)

    def test_finding_line_format(self):
        f = Finding("E1", AGG, "aggregation has no resources")
        assert f.line() == f"E1\t{AGG}\taggregation has no resources"
