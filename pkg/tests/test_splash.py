from datetime import datetime, timezone

from oreweave.fixtures import load_fixture
from oreweave.model import describe, new_aggregation
from oreweave.rdf import Literal, Triple, Uri
from oreweave.splash import MEDIA_TYPE, render
from oreweave.store import MapStore
from oreweave.vocab import HAS_VERSION

SCHOLARLY_AGG = Uri("http://example.org/cens/scholarly/A")
TOTAL_AGG = Uri("http://example.org/cens/seismology/A-t")
MINISEED = Uri("http://example.org/cens/seismology/data/seismic-miniseed")
SAC = Uri("http://example.org/cens/seismology/data/seismic-sac")
WHEN = datetime(2009, 6, 1, tzinfo=timezone.utc)


def agg_of(store, uri):
    return store.get_by_aggregation(uri).aggregation()


class TestScholarlyPage:
    def test_lists_every_resource_as_a_link(self):
        store = load_fixture("scholarly-publication")
        rem = store.get_by_aggregation(SCHOLARLY_AGG)
        page = render(rem.aggregation(), store)
        assert page.count("<li><a href=") == 6
        for r in rem.resources():
            assert f'href="{r.value}"' in page

    def test_shows_resource_count_and_relationships(self):
        store = load_fixture("scholarly-publication")
        page = render(agg_of(store, SCHOLARLY_AGG), store)
        assert "Aggregated resources (6)" in page
        assert "Relationships (4)" in page
        assert ">hasVersion</code>" in page
        assert f'title="{HAS_VERSION.value}"' in page

    def test_footer_names_the_map_and_timestamp(self):
        store = load_fixture("scholarly-publication")
        page = render(agg_of(store, SCHOLARLY_AGG), store)
        assert "created 2009-06-01T00:00:00Z" in page


class TestNestedExpansion:
    def test_total_page_reaches_leaf_data_files(self):
        # total aggregates the stage aggregations; the capture stage
        # aggregates the data aggregation; its files must appear inline.
        store = load_fixture("seismology")
        page = render(agg_of(store, TOTAL_AGG), store)
        assert "<details open>" in page
        assert f'href="{MINISEED.value}"' in page
        assert f'href="{SAC.value}"' in page

    def test_without_store_the_list_stays_flat(self):
        store = load_fixture("seismology")
        page = render(agg_of(store, TOTAL_AGG), None)
        assert "<details" not in page
        assert MINISEED.value not in page

    def test_cyclic_nesting_terminates(self):
        # Hand-build two maps that nest each other; rendering must not recurse
        # forever and must mention both aggregations.
        a = Uri("http://example.org/loop/a")
        b = Uri("http://example.org/loop/b")
        store = MapStore(None)
        store.put(describe(new_aggregation(a, [b]), Uri("http://example.org/loop/rem-a"), created=WHEN))
        store.put(describe(new_aggregation(b, [a]), Uri("http://example.org/loop/rem-b"), created=WHEN))
        page = render(agg_of(store, a), store)
        assert page.count("<html") == 1
        assert b.value in page


class TestRendering:
    def test_is_deterministic(self):
        store = load_fixture("environmental")
        aggs = store.aggregations()
        pages = [render(agg_of(store, u), store) for u in aggs]
        again = [render(agg_of(store, u), store) for u in aggs]
        assert pages == again

    def test_media_type(self):
        assert MEDIA_TYPE == "text/html"

    def test_literal_objects_are_escaped(self):
        agg_uri = Uri("http://example.org/esc/agg")
        doc = Uri("http://example.org/esc/doc")
        sneaky = Literal('<script>alert("x")</script>')
        rem = describe(
            new_aggregation(agg_uri, [doc]),
            Uri("http://example.org/esc/rem"),
            [Triple(doc, Uri("http://vocab.example.org/terms/note"), sneaky)],
            created=WHEN,
        )
        store = MapStore(None)
        store.put(rem)
        page = render(agg_of(store, agg_uri), store)
        assert "<script>" not in page
        assert "&lt;script&gt;" in page

    def test_uri_labels_use_last_segment(self):
        agg_uri = Uri("http://example.org/esc/agg")
        doc = Uri("http://example.org/esc/doc")
        rem = describe(
            new_aggregation(agg_uri, [doc]),
            Uri("http://example.org/esc/rem"),
            [Triple(doc, Uri("http://vocab.example.org/terms/note"), Literal("x"))],
            created=WHEN,
        )
        store = MapStore(None)
        store.put(rem)
        page = render(agg_of(store, agg_uri), store)
        assert ">note</code>" in page
