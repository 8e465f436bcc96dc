"""Disk-backed store holding one canonical document per resource map.

Layout: a flat directory with one ``<percent-encoded-map-uri>.remc`` file
per map. The directory is the source of truth; opening a store re-reads it,
and every mutation writes through immediately, so the in-memory index and
the directory never drift. A store opened with ``root=None`` keeps maps in
memory only, which is convenient for tests and throwaway pipelines.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator
from urllib.parse import quote, unquote

from oreweave import canonical
from oreweave.errors import StoreConflictError, StoreError
from oreweave.model import ResourceMap
from oreweave.rdf import Uri


def filename_for(rem_uri: Uri) -> str:
    return quote(rem_uri.value, safe="") + canonical.FILE_EXTENSION


class MapStore:
    """A collection of resource maps, at most one per aggregation."""

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        self._maps: dict[Uri, ResourceMap] = {}
        self._paths: dict[Uri, Path] = {}
        self._by_agg: dict[Uri, list[Uri]] = {}
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)
            self._load()

    def _load(self) -> None:
        assert self.root is not None
        for path in sorted(self.root.iterdir()):
            if path.suffix != canonical.FILE_EXTENSION:
                continue
            rem = canonical.parse(path.read_bytes())
            if rem.uri in self._maps:
                raise StoreError(f"{path.name}: resource map {rem.uri} already loaded")
            self._index(rem, path)

    def _index(self, rem: ResourceMap, path: Path | None) -> None:
        self._maps[rem.uri] = rem
        if path is not None:
            self._paths[rem.uri] = path
        group = self._by_agg.setdefault(rem.describes, [])
        if rem.uri not in group:
            group.append(rem.uri)

    def __len__(self) -> int:
        return len(self._maps)

    def __iter__(self) -> Iterator[ResourceMap]:
        return iter(self.maps())

    def __contains__(self, rem_uri: Uri) -> bool:
        return rem_uri in self._maps

    def maps(self) -> list[ResourceMap]:
        return [self._maps[u] for u in sorted(self._maps)]

    def aggregations(self) -> list[Uri]:
        return sorted(self._by_agg)

    def get(self, rem_uri: Uri) -> ResourceMap:
        try:
            return self._maps[rem_uri]
        except KeyError:
            raise StoreError(f"no such resource map: {rem_uri}") from None

    def get_by_aggregation(self, agg_uri: Uri) -> ResourceMap | None:
        """The map describing ``agg_uri``, or None.

        A store corrupted into holding several maps for one aggregation (a
        validation error) answers with the lexicographically first map so
        reads stay deterministic.
        """
        group = self._by_agg.get(agg_uri)
        if not group:
            return None
        return self._maps[min(group)]

    def put(self, rem: ResourceMap) -> None:
        """Add or update a map; re-putting an identical map is a no-op.

        A different map claiming an aggregation some other map already
        describes is refused, keeping the one-map-per-aggregation rule.
        """
        existing = self._maps.get(rem.uri)
        if existing == rem:
            return
        rivals = [u for u in self._by_agg.get(rem.describes, []) if u != rem.uri]
        if rivals:
            raise StoreConflictError(
                f"aggregation {rem.describes} is already described by {min(rivals)}"
            )
        if existing is not None and existing.describes != rem.describes:
            # The map moved to a new aggregation; drop the old back-link.
            old = self._by_agg.get(existing.describes, [])
            if rem.uri in old:
                old.remove(rem.uri)
                if not old:
                    del self._by_agg[existing.describes]
        path = None
        if self.root is not None:
            path = self.root / filename_for(rem.uri)
            path.write_bytes(canonical.serialize(rem))
        self._index(rem, path)

    def document(self, rem_uri: Uri) -> bytes:
        """The canonical bytes for a stored map, straight from disk when rooted."""
        rem = self.get(rem_uri)
        path = self._paths.get(rem_uri)
        if path is not None:
            return path.read_bytes()
        return canonical.serialize(rem)

    def path_for(self, rem_uri: Uri) -> Path | None:
        return self._paths.get(rem_uri)


def uri_from_filename(name: str) -> Uri:
    """Invert filename_for; the extension must already be stripped."""
    return Uri(unquote(name))
