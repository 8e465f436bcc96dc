from datetime import datetime, timezone
from urllib.parse import quote

import pytest

from oreweave import canonical
from oreweave.errors import ParseError, StoreConflictError, StoreError
from oreweave.model import describe, new_aggregation
from oreweave.rdf import Uri
from oreweave.store import MapStore, filename_for, uri_from_filename

AGG = Uri("http://example.org/keep/agg")
REM = Uri("http://example.org/keep/rem")
DOC = Uri("http://example.org/keep/doc")
WHEN = datetime(2009, 6, 1, tzinfo=timezone.utc)


def sample_map(agg=AGG, rem=REM, resources=(DOC,)):
    return describe(new_aggregation(agg, resources), rem, created=WHEN)


class TestFilenames:
    def test_map_uri_is_percent_encoded_whole(self):
        assert filename_for(REM) == quote(REM.value, safe="") + ".remc"
        assert "/" not in filename_for(REM)

    def test_filename_round_trips(self):
        name = filename_for(REM)
        assert uri_from_filename(name.removesuffix(".remc")) == REM

    def test_distinct_uris_get_distinct_files(self):
        other = Uri("http://example.org/keep/rem2")
        assert filename_for(REM) != filename_for(other)


class TestInMemory:
    def test_put_and_get(self):
        store = MapStore(None)
        rem = sample_map()
        store.put(rem)
        assert store.get(REM) == rem
        assert store.get_by_aggregation(AGG) == rem
        assert len(store) == 1
        assert REM in store

    def test_get_missing_is_an_error(self):
        store = MapStore(None)
        with pytest.raises(StoreError):
            store.get(REM)

    def test_get_by_aggregation_missing_is_none(self):
        assert MapStore(None).get_by_aggregation(AGG) is None

    def test_document_serializes_on_the_fly(self):
        store = MapStore(None)
        rem = sample_map()
        store.put(rem)
        assert store.document(REM) == canonical.serialize(rem)
        assert store.path_for(REM) is None


class TestPutRules:
    def test_identical_reput_is_a_noop(self, tmp_path):
        store = MapStore(tmp_path)
        rem = sample_map()
        store.put(rem)
        before = store.document(REM)
        store.put(rem)
        assert len(store) == 1
        assert store.document(REM) == before

    def test_second_map_for_same_aggregation_is_refused(self):
        store = MapStore(None)
        store.put(sample_map())
        rival = sample_map(rem=Uri("http://example.org/keep/rem-rival"))
        with pytest.raises(StoreConflictError) as exc:
            store.put(rival)
        assert str(AGG) in str(exc.value)
        assert len(store) == 1

    def test_updating_a_map_in_place_is_allowed(self):
        store = MapStore(None)
        store.put(sample_map())
        grown = sample_map(resources=(DOC, Uri("http://example.org/keep/doc2")))
        store.put(grown)
        assert store.get(REM) == grown
        assert len(store) == 1

    def test_map_can_move_to_a_fresh_aggregation(self):
        store = MapStore(None)
        store.put(sample_map())
        other_agg = Uri("http://example.org/keep/agg2")
        moved = sample_map(agg=other_agg)
        store.put(moved)
        assert store.get_by_aggregation(other_agg) == moved
        assert store.get_by_aggregation(AGG) is None
        # the old aggregation is free for a new map again
        store.put(sample_map(rem=Uri("http://example.org/keep/rem-new")))


class TestDiskStore:
    def test_put_writes_canonical_bytes(self, tmp_path):
        store = MapStore(tmp_path)
        rem = sample_map()
        store.put(rem)
        path = tmp_path / filename_for(REM)
        assert path.exists()
        assert path.read_bytes() == canonical.serialize(rem)
        assert store.document(REM) == path.read_bytes()
        assert store.path_for(REM) == path

    def test_reopen_reads_everything_back(self, tmp_path):
        first = MapStore(tmp_path)
        rem = sample_map()
        first.put(rem)
        second = MapStore(tmp_path)
        assert second.get(REM) == rem
        assert second.document(REM) == first.document(REM)

    def test_reopen_is_byte_identical(self, tmp_path):
        store = MapStore(tmp_path)
        store.put(sample_map())
        snapshot = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
        MapStore(tmp_path)
        assert {p.name: p.read_bytes() for p in tmp_path.iterdir()} == snapshot

    def test_unrelated_files_are_ignored(self, tmp_path):
        (tmp_path / "README.txt").write_text("not a map\n")
        store = MapStore(tmp_path)
        assert len(store) == 0

    def test_corrupt_file_fails_loudly(self, tmp_path):
        (tmp_path / "broken.remc").write_bytes(b"not a triple line\n")
        with pytest.raises(ParseError):
            MapStore(tmp_path)

    def test_missing_root_directory_is_created(self, tmp_path):
        root = tmp_path / "deep" / "nested"
        MapStore(root)
        assert root.is_dir()

    def test_maps_listing_is_sorted(self, tmp_path):
        store = MapStore(tmp_path)
        uris = [
            ("http://example.org/keep/agg-c", "http://example.org/keep/rem-c"),
            ("http://example.org/keep/agg-a", "http://example.org/keep/rem-a"),
            ("http://example.org/keep/agg-b", "http://example.org/keep/rem-b"),
        ]
        for agg, rem in uris:
            store.put(sample_map(agg=Uri(agg), rem=Uri(rem)))
        assert [m.uri.value for m in store.maps()] == sorted(r for _, r in uris)
        assert store.aggregations() == sorted(Uri(a) for a, _ in uris)
