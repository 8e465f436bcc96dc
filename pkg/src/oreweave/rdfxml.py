"""A strict RDF/XML subset for resource maps (.rdf).

Exactly one rdf:Description element per subject, properties as child
elements, URI objects via rdf:resource, literals as element text with
optional xml:lang / rdf:datatype. Nothing else is accepted on input, which
keeps the parser honest and round trips exact.

Output is hand-emitted so the byte stream is deterministic: subjects and
properties are sorted the same way as the canonical line format.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from oreweave.errors import ModelError, ParseError, SerializeError
from oreweave.model import ResourceMap
from oreweave.rdf import Graph, Literal, Triple, Uri

MEDIA_TYPE = "application/rdf+xml"
FILE_EXTENSION = ".rdf"

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XML_NS = "http://www.w3.org/XML/1998/namespace"

_RDF_RDF = f"{{{RDF_NS}}}RDF"
_RDF_DESCRIPTION = f"{{{RDF_NS}}}Description"
_RDF_ABOUT = f"{{{RDF_NS}}}about"
_RDF_RESOURCE = f"{{{RDF_NS}}}resource"
_RDF_DATATYPE = f"{{{RDF_NS}}}datatype"
_XML_LANG = f"{{{XML_NS}}}lang"

_NCNAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*$")


def split_predicate(uri: Uri) -> tuple[str, str]:
    """Split a predicate URI into (namespace, local name) at the last # or /."""
    value = uri.value
    cut = max(value.rfind("#"), value.rfind("/"))
    if cut < 0 or cut + 1 >= len(value):
        raise SerializeError(f"predicate has no local name: {value}")
    ns, local = value[: cut + 1], value[cut + 1 :]
    if not _NCNAME_RE.match(local):
        raise SerializeError(f"predicate local name is not an XML name: {value}")
    return ns, local


def _escape_text(text: str) -> str:
    out = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    # Raw carriage returns would be folded into newlines by any XML parser.
    return out.replace("\r", "&#13;")


def _escape_attr(text: str) -> str:
    out = text.replace("&", "&amp;").replace("<", "&lt;").replace('"', "&quot;")
    return out.replace("\r", "&#13;").replace("\n", "&#10;").replace("\t", "&#9;")


def _property_element(t: Triple) -> str:
    ns, local = split_predicate(t.predicate)
    attrs = [f'xmlns:p="{_escape_attr(ns)}"']
    if isinstance(t.obj, Uri):
        attrs.append(f'rdf:resource="{_escape_attr(t.obj.value)}"')
        return f"    <p:{local} {' '.join(attrs)}/>\n"
    if t.obj.language is not None:
        attrs.append(f'xml:lang="{t.obj.language}"')
    if t.obj.datatype is not None:
        attrs.append(f'rdf:datatype="{_escape_attr(t.obj.datatype.value)}"')
    body = _escape_text(t.obj.lexical)
    return f"    <p:{local} {' '.join(attrs)}>{body}</p:{local}>\n"


def serialize_graph(graph: Graph) -> bytes:
    by_subject: dict[str, list[Triple]] = {}
    for t in graph.triples():
        by_subject.setdefault(t.subject.value, []).append(t)
    out = ['<?xml version="1.0" encoding="UTF-8"?>\n', f'<rdf:RDF xmlns:rdf="{RDF_NS}">\n']
    for subject in sorted(by_subject):
        out.append(f'  <rdf:Description rdf:about="{_escape_attr(subject)}">\n')
        out.extend(_property_element(t) for t in sorted(by_subject[subject], key=Triple.sort_key))
        out.append("  </rdf:Description>\n")
    out.append("</rdf:RDF>\n")
    return "".join(out).encode("utf-8")


def serialize(rem: ResourceMap) -> bytes:
    """Serialize a resource map, timestamp included, to RDF/XML bytes."""
    return serialize_graph(rem.to_graph())


def _parse_property(subject: Uri, elem: ET.Element) -> Triple:
    tag = elem.tag
    if not tag.startswith("{"):
        raise ParseError(f"property element {tag!r} has no namespace")
    ns, local = tag[1:].split("}", 1)
    try:
        predicate = Uri(ns + local)
    except Exception as e:
        raise ParseError(f"bad predicate URI: {e}") from None

    allowed = {_RDF_RESOURCE, _RDF_DATATYPE, _XML_LANG}
    unknown = set(elem.attrib) - allowed
    if unknown:
        raise ParseError(f"unknown attribute {sorted(unknown)[0]!r} on {local}")
    if len(elem):
        raise ParseError(f"unexpected child element inside {local}")

    resource = elem.attrib.get(_RDF_RESOURCE)
    if resource is not None:
        if _RDF_DATATYPE in elem.attrib or _XML_LANG in elem.attrib:
            raise ParseError(f"rdf:resource on {local} cannot carry literal attributes")
        if elem.text and elem.text.strip():
            raise ParseError(f"unexpected text inside resource-valued {local}")
        try:
            return Triple(subject, predicate, Uri(resource))
        except Exception as e:
            raise ParseError(f"bad object URI: {e}") from None

    datatype = elem.attrib.get(_RDF_DATATYPE)
    language = elem.attrib.get(_XML_LANG)
    if datatype is not None and language is not None:
        raise ParseError(f"{local} carries both a datatype and a language tag")
    try:
        obj = Literal(
            elem.text or "",
            datatype=Uri(datatype) if datatype is not None else None,
            language=language,
        )
        return Triple(subject, predicate, obj)
    except ParseError:
        raise
    except Exception as e:
        raise ParseError(f"bad literal: {e}") from None


def parse_graph(data: bytes) -> Graph:
    """Parse the RDF/XML subset into a bare graph (timestamp triple included)."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        raise ParseError(f"XML not well-formed: {e}", position=e.position) from None
    if root.tag != _RDF_RDF:
        raise ParseError(f"root element must be rdf:RDF, found {root.tag!r}")
    if root.attrib:
        raise ParseError("unexpected attributes on rdf:RDF")
    triples: list[Triple] = []
    seen_subjects: set[str] = set()
    for child in root:
        if child.tag != _RDF_DESCRIPTION:
            raise ParseError(f"unknown element {child.tag!r} inside rdf:RDF")
        about = child.attrib.get(_RDF_ABOUT)
        if about is None:
            raise ParseError("rdf:Description lacks rdf:about")
        if set(child.attrib) != {_RDF_ABOUT}:
            extra = sorted(set(child.attrib) - {_RDF_ABOUT})
            raise ParseError(f"unknown attribute {extra[0]!r} on rdf:Description")
        if child.text and child.text.strip():
            raise ParseError("unexpected text inside rdf:Description")
        if about in seen_subjects:
            raise ParseError(f"subject described twice: {about}")
        seen_subjects.add(about)
        try:
            subject = Uri(about)
        except Exception as e:
            raise ParseError(f"bad subject URI: {e}") from None
        triples.extend(_parse_property(subject, prop) for prop in child)
    return Graph(triples)


def parse(data: bytes) -> ResourceMap:
    """Parse RDF/XML bytes back into a resource map."""
    graph = parse_graph(data)
    try:
        return ResourceMap.from_graph(graph)
    except ModelError as e:
        raise ParseError(str(e)) from None
