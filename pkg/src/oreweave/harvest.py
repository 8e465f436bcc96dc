"""Harvesting resource maps and querying the merged graph.

A harvester pulls maps from HTTP endpoints, files, or whole store
directories, merges their statement graphs into one union graph, and keeps
per-triple provenance (which maps assert it). On top of the union sit the
two cross-map queries: co-referenced URIs (artifacts several maps talk
about) and trace (walk outward from any URI across map boundaries).
"""

from __future__ import annotations

import urllib.request
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence
from urllib.parse import urlparse
from urllib.request import url2pathname

from oreweave import canonical, rdfxml, vocab
from oreweave.errors import OreweaveError
from oreweave.model import ResourceMap
from oreweave.rdf import Graph, Triple, Uri

ACCEPT_HEADER = f"{canonical.MEDIA_TYPE}, {rdfxml.MEDIA_TYPE}"

# Predicates that merely wire maps to aggregations; a URI has to show up in
# an actual relationship assertion to count as "mentioned" by a map.
_MENTION_EXEMPT = frozenset({vocab.DESCRIBES, vocab.AGGREGATES})


@dataclass(frozen=True)
class UnionGraph:
    """The merge of several maps' statements, with per-triple provenance."""

    graph: Graph = field(default_factory=Graph)
    provenance: dict[Triple, frozenset[Uri]] = field(default_factory=dict)

    @classmethod
    def from_maps(cls, maps: Iterable[ResourceMap]) -> "UnionGraph":
        graph = Graph()
        prov: dict[Triple, set[Uri]] = {}
        for rem in maps:
            graph = graph.merge(rem.statements)
            for t in rem.statements.triples():
                prov.setdefault(t, set()).add(rem.uri)
        return cls(graph, {t: frozenset(s) for t, s in prov.items()})

    def merge(self, other: "UnionGraph") -> "UnionGraph":
        prov = dict(self.provenance)
        for t, sources in other.provenance.items():
            prov[t] = prov.get(t, frozenset()) | sources
        return UnionGraph(self.graph.merge(other.graph), prov)

    def sources(self) -> frozenset[Uri]:
        out: set[Uri] = set()
        for s in self.provenance.values():
            out |= s
        return frozenset(out)


@dataclass(frozen=True)
class SourceReport:
    """Outcome of fetching one harvest source."""

    source: str
    ok: bool
    triples: int = 0
    reason: str = ""

    def line(self) -> str:
        if self.ok:
            return f"OK {self.source} {self.triples}"
        return f"FAIL {self.source} {self.reason}"


@dataclass(frozen=True)
class HarvestResult:
    maps: tuple[ResourceMap, ...]
    union: UnionGraph
    report: tuple[SourceReport, ...]

    def report_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.report)


def _parse_document(data: bytes, format_hint: str | None) -> ResourceMap:
    if format_hint == "canonical":
        return canonical.parse(data)
    if format_hint == "rdfxml":
        return rdfxml.parse(data)
    head = data.lstrip()[:16]
    if head.startswith(b"<?xml") or head.startswith(b"<rdf"):
        return rdfxml.parse(data)
    return canonical.parse(data)


def _hint_from_name(name: str) -> str | None:
    if name.endswith(canonical.FILE_EXTENSION):
        return "canonical"
    if name.endswith(rdfxml.FILE_EXTENSION):
        return "rdfxml"
    return None


def _fetch_source(source: str, timeout: float) -> list[ResourceMap]:
    scheme = urlparse(source).scheme
    if scheme in ("http", "https"):
        req = urllib.request.Request(source, headers={"Accept": ACCEPT_HEADER})
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            data = resp.read()
            ctype = (resp.headers.get("Content-Type") or "").split(";")[0].strip()
        hint = {canonical.MEDIA_TYPE: "canonical", rdfxml.MEDIA_TYPE: "rdfxml"}.get(ctype)
        if hint is None:
            hint = _hint_from_name(urlparse(source).path)
        return [_parse_document(data, hint)]
    path = Path(url2pathname(urlparse(source).path)) if scheme == "file" else Path(source)
    if path.is_dir():
        out = []
        for child in sorted(path.iterdir()):
            if _hint_from_name(child.name):
                out.append(_parse_document(child.read_bytes(), _hint_from_name(child.name)))
        if not out:
            raise OreweaveError("directory holds no resource map documents")
        return out
    return [_parse_document(path.read_bytes(), _hint_from_name(path.name))]


def harvest(
    sources: Sequence[str],
    *,
    timeout: float = 10.0,
    max_workers: int = 8,
) -> HarvestResult:
    """Fetch every source, parse what comes back, and merge the survivors.

    Sources are fetched concurrently but merged in input order, so the
    result is deterministic. A failing source becomes a FAIL entry in the
    report instead of an exception; nothing here is fatal.
    """
    results: list[list[ResourceMap] | Exception] = [None] * len(sources)  # type: ignore[list-item]

    def work(i: int, source: str):
        try:
            results[i] = _fetch_source(source, timeout)
        except Exception as e:  # noqa: BLE001 - reported per source
            results[i] = e

    if sources:
        with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(sources)))) as pool:
            for i, source in enumerate(sources):
                pool.submit(work, i, source)

    maps: list[ResourceMap] = []
    seen: set[Uri] = set()
    report: list[SourceReport] = []
    for source, result in zip(sources, results):
        if isinstance(result, Exception):
            reason = " ".join(str(result).split()) or type(result).__name__
            report.append(SourceReport(source=source, ok=False, reason=reason))
            continue
        count = sum(len(rem.statements) for rem in result)
        report.append(SourceReport(source=source, ok=True, triples=count))
        for rem in result:
            if rem.uri not in seen:
                seen.add(rem.uri)
                maps.append(rem)
    return HarvestResult(tuple(maps), UnionGraph.from_maps(maps), tuple(report))


def co_referenced(union: UnionGraph) -> dict[Uri, frozenset[Uri]]:
    """URIs that at least two distinct maps assert relationships about.

    Structural describes/aggregates plumbing does not count as a mention;
    a URI qualifies through the relationship triples that talk about it.
    """
    mentions: dict[Uri, set[Uri]] = {}
    for t, sources in union.provenance.items():
        if t.predicate in _MENTION_EXEMPT:
            continue
        for u in (t.subject, t.obj):
            if isinstance(u, Uri):
                mentions.setdefault(u, set()).update(sources)
    return {u: frozenset(s) for u, s in mentions.items() if len(s) >= 2}


@dataclass(frozen=True)
class TraceStep:
    """One hop of a trace path; ``forward`` means subject-to-object."""

    source: Uri
    predicate: Uri
    target: Uri
    forward: bool

    def render(self) -> str:
        label = self.predicate.value
        arrow = f"-[{label}]->" if self.forward else f"<-[{label}]-"
        return f"{arrow} {self.target}"


@dataclass(frozen=True)
class TracePath:
    node: Uri
    steps: tuple[TraceStep, ...]

    @property
    def depth(self) -> int:
        return len(self.steps)

    def render(self, entry: Uri) -> str:
        return " ".join([str(entry)] + [s.render() for s in self.steps])


@dataclass(frozen=True)
class TraceResult:
    entry: Uri
    subgraph: Graph
    paths: tuple[TracePath, ...]

    @property
    def nodes(self) -> frozenset[Uri]:
        return frozenset(p.node for p in self.paths)


def trace(union: UnionGraph, entry: Uri, max_depth: int | None = None) -> TraceResult:
    """Walk outward from ``entry`` treating every triple as an undirected edge.

    Returns the reached nodes with one shortest path each (breadth-first,
    lexicographic tie-break, so output is deterministic) plus the subgraph
    induced on the reached nodes. Literal-valued triples of reached subjects
    ride along in the subgraph but literals are never traversed into.
    ``max_depth`` bounds the number of hops; deeper horizons only ever add
    nodes, never remove them.
    """
    if max_depth is not None and max_depth < 0:
        raise OreweaveError("max_depth must be non-negative")
    adjacency: dict[Uri, list[tuple[Uri, TraceStep]]] = {}
    for t in union.graph.triples():
        if not isinstance(t.obj, Uri):
            continue
        adjacency.setdefault(t.subject, []).append(
            (t.obj, TraceStep(t.subject, t.predicate, t.obj, forward=True))
        )
        adjacency.setdefault(t.obj, []).append(
            (t.subject, TraceStep(t.obj, t.predicate, t.subject, forward=False))
        )
    for neighbors in adjacency.values():
        neighbors.sort(key=lambda pair: (pair[0].value, pair[1].predicate.value, not pair[1].forward))

    paths: dict[Uri, TracePath] = {entry: TracePath(entry, ())}
    queue = deque([entry])
    while queue:
        node = queue.popleft()
        here = paths[node]
        if max_depth is not None and here.depth >= max_depth:
            continue
        for neighbor, step in adjacency.get(node, ()):
            if neighbor in paths:
                continue
            paths[neighbor] = TracePath(neighbor, here.steps + (step,))
            queue.append(neighbor)

    reached = set(paths)
    triples = [
        t
        for t in union.graph.triples()
        if t.subject in reached and (not isinstance(t.obj, Uri) or t.obj in reached)
    ]
    ordered = tuple(sorted(paths.values(), key=lambda p: (p.depth, p.node.value)))
    return TraceResult(entry=entry, subgraph=Graph(triples), paths=ordered)
