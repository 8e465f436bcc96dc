"""Canonical line-oriented serialization of resource maps (.remc).

One triple per line:

    <subject-uri> <predicate-uri> <object-uri> .
    <subject-uri> <predicate-uri> "literal"@lang^^<datatype-uri> .

The language tag and datatype are each optional, in that order. Literals are
double-quoted with backslash escapes for quote, backslash, and newline; all
other characters pass through untouched. Every line ends with " .\n" and the
document is UTF-8.

Lines are sorted by (subject, predicate, serialized object) and never
duplicated, and the map's creation timestamp rides along as one pseudo-triple
on the map URI, so serialization is a bijection: two maps produce the same
bytes exactly when they are equal.
"""

from __future__ import annotations

from oreweave.errors import ModelError, ParseError
from oreweave.model import ResourceMap
from oreweave.rdf import Graph, Literal, Term, Triple, Uri

MEDIA_TYPE = "application/x-ore-canonical"
FILE_EXTENSION = ".remc"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _serialize_term(term: Term) -> str:
    if isinstance(term, Uri):
        return f"<{term.value}>"
    out = f'"{_escape(term.lexical)}"'
    if term.language is not None:
        out += f"@{term.language}"
    if term.datatype is not None:
        out += f"^^<{term.datatype.value}>"
    return out


def serialize(rem: ResourceMap) -> bytes:
    """Serialize a resource map to canonical bytes."""
    graph = rem.to_graph()
    keyed = sorted(
        (t.subject.value, t.predicate.value, _serialize_term(t.obj)) for t in graph.triples()
    )
    return "".join(f"<{s}> <{p}> {o} .\n" for s, p, o in keyed).encode("utf-8")


class _LineParser:
    """Single-line recursive-descent parser kept tiny on purpose."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def fail(self, message: str) -> ParseError:
        return ParseError(f"line {self.lineno}: {message}", line=self.lineno)

    def expect(self, ch: str):
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of line"
            raise self.fail(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def uri(self) -> Uri:
        self.expect("<")
        end = self.text.find(">", self.pos)
        if end < 0:
            raise self.fail("unterminated URI")
        raw = self.text[self.pos : end]
        self.pos = end + 1
        try:
            return Uri(raw)
        except Exception as e:
            raise self.fail(str(e)) from None

    def quoted(self) -> str:
        self.expect('"')
        out: list[str] = []
        while True:
            if self.pos >= len(self.text):
                raise self.fail("unterminated literal")
            ch = self.text[self.pos]
            self.pos += 1
            if ch == '"':
                return "".join(out)
            if ch == "\\":
                if self.pos >= len(self.text):
                    raise self.fail("dangling escape")
                esc = self.text[self.pos]
                self.pos += 1
                if esc == "n":
                    out.append("\n")
                elif esc in ('"', "\\"):
                    out.append(esc)
                else:
                    raise self.fail(f"unknown escape \\{esc}")
            else:
                out.append(ch)

    def term(self) -> Term:
        if self.pos >= len(self.text):
            raise self.fail("missing object")
        if self.text[self.pos] == "<":
            return self.uri()
        lexical = self.quoted()
        language = None
        datatype = None
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            self.pos += 1
            end = self.pos
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "-"):
                end += 1
            language = self.text[self.pos : end]
            self.pos = end
            if not language:
                raise self.fail("empty language tag")
        if self.text[self.pos : self.pos + 2] == "^^":
            self.pos += 2
            datatype = self.uri()
        try:
            return Literal(lexical, datatype=datatype, language=language)
        except Exception as e:
            raise self.fail(str(e)) from None

    def triple(self) -> Triple:
        subject = self.uri()
        self.expect(" ")
        predicate = self.uri()
        self.expect(" ")
        obj = self.term()
        if self.text[self.pos :] != " .":
            raise self.fail("line must end with ' .'")
        return Triple(subject, predicate, obj)


def parse_graph(data: bytes) -> Graph:
    """Parse canonical bytes into a bare graph (timestamp line included)."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not valid UTF-8 at byte {e.start}: {e.reason}", offset=e.start) from None
    if text and not text.endswith("\n"):
        raise ParseError("final line lacks its trailing newline")
    triples: list[Triple] = []
    seen: set[Triple] = set()
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        t = _LineParser(line, lineno).triple()
        if t in seen:
            raise ParseError(f"line {lineno}: duplicate triple", line=lineno)
        seen.add(t)
        triples.append(t)
    return Graph(triples)


def parse(data: bytes) -> ResourceMap:
    """Parse canonical bytes back into a resource map."""
    graph = parse_graph(data)
    try:
        return ResourceMap.from_graph(graph)
    except ModelError as e:
        raise ParseError(str(e)) from None
