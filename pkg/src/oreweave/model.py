"""Aggregations, resource maps, and store-level validation.

An aggregation is a URI-identified set of resource URIs. A resource map is
the machine-readable description of exactly one aggregation: a statement
graph plus a creation timestamp. Both are immutable values; builders return
new instances.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Sequence

from oreweave import vocab
from oreweave.errors import ModelError
from oreweave.rdf import Graph, Literal, Triple, Uri

# A relationship assertion is structurally just a triple.
Relationship = Triple


class UnknownResourceWarning(UserWarning):
    """A relationship references a URI outside the aggregation being described."""


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def normalize_timestamp(value: datetime) -> datetime:
    """Coerce to UTC at whole-second precision; naive datetimes are taken as UTC."""
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc).replace(microsecond=0)


def parse_timestamp(text: str) -> datetime:
    """Parse an ISO-8601 timestamp, accepting a trailing Z for UTC."""
    raw = text.strip()
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    try:
        value = datetime.fromisoformat(raw)
    except ValueError as e:
        raise ModelError(f"bad timestamp {text!r}: {e}") from None
    return normalize_timestamp(value)


def format_timestamp(value: datetime) -> str:
    return normalize_timestamp(value).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class Aggregation:
    """A set of aggregated resource URIs identified by its own URI.

    ``resources`` keeps authored order; order carries no meaning (comparisons
    of derived graphs are set comparisons) but keeps builders deterministic.
    ``metadata`` holds extra triples about the aggregation itself, so every
    metadata subject must equal the aggregation URI. An empty resource list
    is allowed transiently so builders can add resources one at a time;
    validation flags empty aggregations in a finished store.
    """

    uri: Uri
    resources: tuple[Uri, ...] = ()
    metadata: tuple[Triple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "resources", tuple(self.resources))
        object.__setattr__(self, "metadata", tuple(self.metadata))
        seen: set[Uri] = set()
        for r in self.resources:
            if not isinstance(r, Uri):
                raise ModelError(f"aggregated resource must be a Uri, got {r!r}")
            if r == self.uri:
                raise ModelError(f"aggregation cannot aggregate itself: {self.uri}")
            if r in seen:
                raise ModelError(f"duplicate aggregated resource: {r}")
            seen.add(r)
        for t in self.metadata:
            if t.subject != self.uri:
                raise ModelError(
                    f"metadata subject {t.subject} does not match aggregation {self.uri}"
                )

    def __len__(self) -> int:
        return len(self.resources)

    def __contains__(self, uri: Uri) -> bool:
        return uri in self.resources


@dataclass(frozen=True)
class ResourceMap:
    """The description of one aggregation: a statement graph plus timestamp.

    Invariants enforced here: the map URI differs from the described
    aggregation URI, the statements contain the describes triple linking the
    two, and ``created`` is a UTC timestamp at whole-second precision.
    """

    uri: Uri
    describes: Uri
    statements: Graph
    created: datetime

    def __post_init__(self):
        if self.uri == self.describes:
            raise ModelError(f"resource map URI must differ from the aggregation URI: {self.uri}")
        object.__setattr__(self, "created", normalize_timestamp(self.created))
        if Triple(self.uri, vocab.DESCRIBES, self.describes) not in self.statements:
            raise ModelError(f"statements of {self.uri} lack the describes triple")

    def resources(self) -> tuple[Uri, ...]:
        """Aggregated resource URIs, sorted for determinism."""
        found = self.statements.match(subject=self.describes, predicate=vocab.AGGREGATES)
        return tuple(sorted(t.obj for t in found if isinstance(t.obj, Uri)))

    def aggregation(self) -> Aggregation:
        """Rebuild the aggregation value this map describes."""
        return Aggregation(self.describes, self.resources())

    def to_graph(self) -> Graph:
        """Statements plus the created pseudo-triple, ready for serialization."""
        stamp = Triple(self.uri, vocab.CREATED, Literal(format_timestamp(self.created)))
        for t in self.statements.match(subject=self.uri, predicate=vocab.CREATED):
            if t != stamp:
                raise ModelError(f"conflicting created assertion on {self.uri}")
        return self.statements.insert(stamp)

    @classmethod
    def from_graph(cls, graph: Graph) -> "ResourceMap":
        """Inverse of to_graph. Raises ModelError on structural defects."""
        describes = graph.match(predicate=vocab.DESCRIBES)
        if not describes:
            raise ModelError("missing describes triple")
        if len(describes) > 1:
            raise ModelError("multiple describes triples")
        (d,) = describes
        if not isinstance(d.obj, Uri):
            raise ModelError("describes object must be a URI")
        rem_uri, agg_uri = d.subject, d.obj
        stamps = graph.match(subject=rem_uri, predicate=vocab.CREATED)
        if not stamps:
            raise ModelError(f"missing created timestamp on {rem_uri}")
        if len(stamps) > 1:
            raise ModelError(f"multiple created timestamps on {rem_uri}")
        (stamp,) = stamps
        if not isinstance(stamp.obj, Literal):
            raise ModelError("created timestamp must be a literal")
        created = parse_timestamp(stamp.obj.lexical)
        statements = Graph(graph.triples() - {stamp})
        return cls(uri=rem_uri, describes=agg_uri, statements=statements, created=created)


def new_aggregation(uri: Uri, resources: Iterable[Uri] = ()) -> Aggregation:
    """Create an aggregation; duplicate or self-referential resources are errors."""
    return Aggregation(uri, tuple(resources))


def nest(parent: Aggregation, child: Aggregation) -> Aggregation:
    """Add ``child`` as an aggregated resource of ``parent``.

    The child stays an independent aggregation and still needs its own
    resource map in any store that holds the parent's.
    """
    if child.uri == parent.uri:
        raise ModelError(f"aggregation cannot nest itself: {parent.uri}")
    if child.uri in parent.resources:
        raise ModelError(f"{child.uri} is already aggregated by {parent.uri}")
    return Aggregation(parent.uri, parent.resources + (child.uri,), parent.metadata)


def assert_version_chain(versions: Sequence[Uri]) -> list[Relationship]:
    """Link consecutive versions with hasVersion triples.

    ``versions`` is oldest first; n URIs produce n-1 triples. Fewer than two
    distinct URIs is an error.
    """
    if len(versions) < 2:
        raise ModelError("a version chain needs at least two URIs")
    if len(set(versions)) != len(versions):
        raise ModelError("version chain URIs must be distinct")
    return [
        Triple(earlier, vocab.HAS_VERSION, later)
        for earlier, later in zip(versions, versions[1:])
    ]


def describe(
    aggregation: Aggregation,
    rem_uri: Uri,
    extra: Iterable[Relationship] = (),
    created: datetime | None = None,
) -> ResourceMap:
    """Build the resource map for ``aggregation``.

    The statement graph is the describes triple, one aggregates triple per
    resource, the aggregation's own metadata, and the extra relationships.
    Extras referencing URIs outside the aggregation are legal (resources
    routinely point at material hosted elsewhere) but raise an
    UnknownResourceWarning so authors notice typos.
    """
    if rem_uri == aggregation.uri:
        raise ModelError(f"resource map URI must differ from the aggregation URI: {rem_uri}")
    extra = tuple(extra)
    known = {aggregation.uri, rem_uri, *aggregation.resources}
    for t in extra + aggregation.metadata:
        if t.predicate in vocab.STRUCTURAL_PREDICATES:
            continue
        strange = [u for u in (t.subject, t.obj) if isinstance(u, Uri) and u not in known]
        for u in strange:
            warnings.warn(
                f"relationship {t.predicate} references {u}, which is not part of {aggregation.uri}",
                UnknownResourceWarning,
                stacklevel=2,
            )
    triples = [Triple(rem_uri, vocab.DESCRIBES, aggregation.uri)]
    triples.extend(Triple(aggregation.uri, vocab.AGGREGATES, r) for r in aggregation.resources)
    triples.extend(aggregation.metadata)
    triples.extend(extra)
    stamp = utc_now() if created is None else normalize_timestamp(created)
    return ResourceMap(uri=rem_uri, describes=aggregation.uri, statements=Graph(triples), created=stamp)


@dataclass(frozen=True)
class Finding:
    """One validation finding: a code, the URI it concerns, and prose."""

    code: str
    subject: Uri
    message: str

    def line(self) -> str:
        return f"{self.code}\t{self.subject}\t{self.message}"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Finding, ...] = ()
    warnings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        return f"{len(self.errors)} errors, {len(self.warnings)} warnings"

    def lines(self) -> list[str]:
        return [f.line() for f in self.errors + self.warnings] + [self.summary()]


def _nesting_edges(maps: Sequence[ResourceMap]) -> list[tuple[Uri, Uri]]:
    """Parent-to-child edges between aggregations described in the store."""
    described = {m.describes for m in maps}
    edges = []
    for m in maps:
        for r in m.resources():
            if r in described:
                edges.append((m.describes, r))
    return edges


def _cycles(edges: list[tuple[Uri, Uri]]) -> list[tuple[Uri, ...]]:
    """Strongly connected components with more than one node, plus self-loops.

    Iterative Tarjan; each returned tuple is one cycle's node set, sorted.
    """
    adj: dict[Uri, list[Uri]] = {}
    nodes: set[Uri] = set()
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        nodes.update((a, b))
    index: dict[Uri, int] = {}
    low: dict[Uri, int] = {}
    on_stack: set[Uri] = set()
    stack: list[Uri] = []
    counter = [0]
    out: list[tuple[Uri, ...]] = []

    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(adj.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(adj.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1:
                    out.append(tuple(sorted(comp)))
                elif (comp[0], comp[0]) in edges:
                    out.append((comp[0],))
    return out


def validate(maps: Iterable[ResourceMap]) -> ValidationReport:
    """Check a collection of resource maps as one store.

    Error codes:
      E1  an aggregation has no resources
      E2  two maps describe the same aggregation
      E3  the nesting relation contains a cycle
    Warning codes:
      W1  a nested aggregation lacks its own map in the store
      W2  a relationship references a URI unknown to the store

    The report is sorted, so permuting the input changes nothing.
    """
    maps = sorted(maps, key=lambda m: m.uri.value)
    errors: list[Finding] = []
    warns: list[Finding] = []

    by_agg: dict[Uri, list[ResourceMap]] = {}
    for m in maps:
        by_agg.setdefault(m.describes, []).append(m)

    for agg_uri, group in by_agg.items():
        if len(group) > 1:
            listed = ", ".join(str(m.uri) for m in group)
            errors.append(
                Finding("E2", agg_uri, f"described by {len(group)} resource maps: {listed}")
            )

    for m in maps:
        if not m.resources():
            errors.append(Finding("E1", m.describes, "aggregation has no resources"))

    for cycle in _cycles(_nesting_edges(maps)):
        listed = " -> ".join(str(u) for u in cycle)
        errors.append(Finding("E3", cycle[0], f"nesting cycle through {listed}"))

    # Every URI the store knows about: aggregations, their resources, and
    # the map URIs themselves.
    known: set[Uri] = set()
    for m in maps:
        known.add(m.uri)
        known.add(m.describes)
        known.update(m.resources())

    # W1: a resource claimed to be an aggregation (it carries an
    # isDescribedBy link) whose own map is missing from the store.
    claimed: set[Uri] = set()
    for m in maps:
        for t in m.statements.match(predicate=vocab.IS_DESCRIBED_BY):
            claimed.add(t.subject)
    for u in sorted(claimed):
        if u not in by_agg:
            warns.append(Finding("W1", u, "nested aggregation has no resource map in the store"))

    # W2: non-structural relationships whose subject or object URI the store
    # has never heard of. Literal objects are exempt.
    for m in maps:
        for t in m.statements:
            if t.predicate in vocab.STRUCTURAL_PREDICATES:
                continue
            strange = [
                u for u in (t.subject, t.obj) if isinstance(u, Uri) and u not in known
            ]
            if strange:
                listed = ", ".join(str(u) for u in strange)
                warns.append(
                    Finding("W2", t.subject, f"relationship {t.predicate} references unknown {listed}")
                )

    key = lambda f: (f.code, f.subject.value, f.message)
    return ValidationReport(
        tuple(sorted(set(errors), key=key)),
        tuple(sorted(set(warns), key=key)),
    )
