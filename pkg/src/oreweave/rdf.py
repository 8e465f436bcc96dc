"""Minimal RDF substrate: URIs, literals, triples, and immutable triple-set graphs.

The model is deliberately small. There are no blank nodes, so two graphs are
equal exactly when their triple sets are equal, and every graph operation is
a pure function returning a new value.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Iterator, Union

from oreweave.errors import InvalidTripleError, InvalidUriError

# Absolute URI: a scheme, a colon, then at least one more character.
_URI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:\S+$")

# Characters that are never legal in a URI and would break the line-oriented
# serialization if let through.
_URI_FORBIDDEN = set('<>"{}|\\^`')


class Uri:
    """An absolute URI used as a graph node or predicate.

    Equality is exact string equality; no normalization (case folding,
    trailing-slash stripping, percent-decoding) is ever applied.
    """

    __slots__ = ("value",)

    def __init__(self, value: str):
        if not isinstance(value, str) or not value:
            raise InvalidUriError("URI must be a non-empty string")
        if not _URI_RE.match(value):
            raise InvalidUriError(f"not an absolute URI: {value!r}")
        if any(c in _URI_FORBIDDEN for c in value):
            raise InvalidUriError(f"URI contains forbidden character: {value!r}")
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("Uri is immutable")

    def __eq__(self, other):
        return isinstance(other, Uri) and self.value == other.value

    def __hash__(self):
        return hash((Uri, self.value))

    def __lt__(self, other: "Uri"):
        return self.value < other.value

    def __str__(self):
        return self.value

    def __repr__(self):
        return f"Uri({self.value!r})"


class Literal:
    """A literal value with optional datatype URI and language tag.

    Literals appear only in object position; Triple enforces that.
    """

    __slots__ = ("lexical", "datatype", "language")

    def __init__(self, lexical: str, datatype: Uri | None = None, language: str | None = None):
        if not isinstance(lexical, str):
            raise InvalidTripleError("literal lexical form must be a string")
        if datatype is not None and not isinstance(datatype, Uri):
            raise InvalidTripleError("literal datatype must be a Uri")
        if language is not None:
            if not re.fullmatch(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*", language):
                raise InvalidTripleError(f"bad language tag: {language!r}")
        object.__setattr__(self, "lexical", lexical)
        object.__setattr__(self, "datatype", datatype)
        object.__setattr__(self, "language", language)

    def __setattr__(self, name, val):
        raise AttributeError("Literal is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Literal)
            and self.lexical == other.lexical
            and self.datatype == other.datatype
            and self.language == other.language
        )

    def __hash__(self):
        return hash((Literal, self.lexical, self.datatype, self.language))

    def __repr__(self):
        parts = [repr(self.lexical)]
        if self.datatype is not None:
            parts.append(f"datatype={self.datatype!r}")
        if self.language is not None:
            parts.append(f"language={self.language!r}")
        return f"Literal({', '.join(parts)})"


Term = Union[Uri, Literal]


def term_sort_key(term: Term) -> tuple:
    """Deterministic total order over terms; literals sort before URIs."""
    if isinstance(term, Uri):
        return (1, term.value, "", "")
    return (
        0,
        term.lexical,
        term.language or "",
        term.datatype.value if term.datatype else "",
    )


class Triple:
    """One RDF statement. Subject and predicate must be URIs."""

    __slots__ = ("subject", "predicate", "obj")

    def __init__(self, subject: Uri, predicate: Uri, obj: Term):
        if not isinstance(subject, Uri):
            raise InvalidTripleError(f"triple subject must be a Uri, got {subject!r}")
        if not isinstance(predicate, Uri):
            raise InvalidTripleError(f"triple predicate must be a Uri, got {predicate!r}")
        if not isinstance(obj, (Uri, Literal)):
            raise InvalidTripleError(f"triple object must be a Uri or Literal, got {obj!r}")
        object.__setattr__(self, "subject", subject)
        object.__setattr__(self, "predicate", predicate)
        object.__setattr__(self, "obj", obj)

    def __setattr__(self, name, val):
        raise AttributeError("Triple is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Triple)
            and self.subject == other.subject
            and self.predicate == other.predicate
            and self.obj == other.obj
        )

    def __hash__(self):
        return hash((Triple, self.subject, self.predicate, self.obj))

    def __iter__(self):
        return iter((self.subject, self.predicate, self.obj))

    def __repr__(self):
        return f"Triple({self.subject!r}, {self.predicate!r}, {self.obj!r})"

    def sort_key(self) -> tuple:
        return (self.subject.value, self.predicate.value) + term_sort_key(self.obj)


class Graph:
    """An immutable set of triples with index-backed pattern matching.

    Mutation-style operations (insert, merge) return new graphs. Equality is
    set equality over the triples, and iteration order is the deterministic
    triple sort order, so any two equal graphs behave identically.
    """

    __slots__ = ("_triples", "_by_subject", "_by_predicate", "_by_object")

    def __init__(self, triples: Iterable[Triple] = ()):
        ts = frozenset(triples)
        for t in ts:
            if not isinstance(t, Triple):
                raise InvalidTripleError(f"not a Triple: {t!r}")
        by_s: dict[Uri, set[Triple]] = {}
        by_p: dict[Uri, set[Triple]] = {}
        by_o: dict[Term, set[Triple]] = {}
        for t in ts:
            by_s.setdefault(t.subject, set()).add(t)
            by_p.setdefault(t.predicate, set()).add(t)
            by_o.setdefault(t.obj, set()).add(t)
        object.__setattr__(self, "_triples", ts)
        object.__setattr__(self, "_by_subject", by_s)
        object.__setattr__(self, "_by_predicate", by_p)
        object.__setattr__(self, "_by_object", by_o)

    def __setattr__(self, name, val):
        raise AttributeError("Graph is immutable")

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other):
        return isinstance(other, Graph) and self._triples == other._triples

    def __hash__(self):
        return hash(self._triples)

    def __repr__(self):
        return f"Graph(<{len(self._triples)} triples>)"

    def triples(self) -> frozenset[Triple]:
        return self._triples

    def insert(self, triple: Triple) -> "Graph":
        """Return a graph with ``triple`` added; inserting a duplicate is a no-op."""
        if not isinstance(triple, Triple):
            raise InvalidTripleError(f"not a Triple: {triple!r}")
        if triple in self._triples:
            return self
        return Graph(self._triples | {triple})

    def merge(self, other: "Graph") -> "Graph":
        """Set union of two graphs."""
        if not isinstance(other, Graph):
            raise InvalidTripleError(f"cannot merge Graph with {type(other).__name__}")
        if not other._triples:
            return self
        if not self._triples:
            return other
        return Graph(self._triples | other._triples)

    def match(
        self,
        subject: Uri | None = None,
        predicate: Uri | None = None,
        obj: Term | None = None,
    ) -> frozenset[Triple]:
        """All triples matching the pattern; None positions are wildcards."""
        candidates: set[Triple] | frozenset[Triple] | None = None
        if subject is not None:
            candidates = self._by_subject.get(subject, set())
        if predicate is not None:
            pset = self._by_predicate.get(predicate, set())
            candidates = pset if candidates is None else (candidates & pset)
        if obj is not None:
            oset = self._by_object.get(obj, set())
            candidates = oset if candidates is None else (candidates & oset)
        if candidates is None:
            candidates = self._triples
        return frozenset(candidates)

    def reachable(self, start: Uri, predicates: Iterable[Uri] | None = None) -> frozenset[Uri]:
        """URIs reachable from ``start`` following subject-to-object edges.

        ``predicates`` restricts which triples count as edges; None means all.
        The start node is always included. Cycles terminate because visited
        nodes are never re-expanded.
        """
        if not isinstance(start, Uri):
            raise InvalidTripleError(f"reachable start must be a Uri, got {start!r}")
        allowed = None if predicates is None else frozenset(predicates)
        seen = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for t in self._by_subject.get(node, ()):
                if allowed is not None and t.predicate not in allowed:
                    continue
                if isinstance(t.obj, Uri) and t.obj not in seen:
                    seen.add(t.obj)
                    queue.append(t.obj)
        return frozenset(seen)

    def uris(self) -> frozenset[Uri]:
        """All URIs appearing in subject or object position."""
        out: set[Uri] = set()
        for t in self._triples:
            out.add(t.subject)
            if isinstance(t.obj, Uri):
                out.add(t.obj)
        return frozenset(out)


EMPTY_GRAPH = Graph()
