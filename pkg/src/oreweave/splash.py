"""Human-facing HTML splash pages for aggregations.

A splash page lists the aggregated resources as hyperlinks, expands nested
aggregations whose maps are available in the store into sub-lists, and
renders the map's relationship triples verbatim. Output depends only on the
aggregation and the store contents, so repeated rendering is byte-identical.
"""

from __future__ import annotations

import html

from oreweave import vocab
from oreweave.model import Aggregation, ResourceMap
from oreweave.rdf import Literal, Uri

MEDIA_TYPE = "text/html"

_STYLE = (
    "body{font-family:sans-serif;margin:2rem;max-width:60rem}"
    "code{background:#f4f4f4;padding:0 .2rem}"
    "ul{line-height:1.5}"
    ".rel{color:#555}"
)


def _label(uri: Uri) -> str:
    value = uri.value.rstrip("/#")
    cut = max(value.rfind("/"), value.rfind("#"))
    return value[cut + 1 :] if cut >= 0 else value


def _link(uri: Uri) -> str:
    quoted = html.escape(uri.value, quote=True)
    return f'<a href="{quoted}">{html.escape(uri.value)}</a>'


def _relationship_entries(rem: ResourceMap) -> list[str]:
    entries = []
    for t in rem.statements:
        if t.predicate in (vocab.DESCRIBES, vocab.AGGREGATES):
            continue
        if isinstance(t.obj, Literal):
            rendered = f"&quot;{html.escape(t.obj.lexical)}&quot;"
        else:
            rendered = _link(t.obj)
        pred = html.escape(t.predicate.value, quote=True)
        entries.append(
            f'<li class="rel">{_link(t.subject)} '
            f'<code title="{pred}">{html.escape(_label(t.predicate))}</code> '
            f"{rendered}</li>"
        )
    return entries


def _resource_list(agg: Aggregation, store, visited: set[Uri]) -> list[str]:
    out = ["<ul>"]
    for r in agg.resources:
        nested = store.get_by_aggregation(r) if store is not None else None
        if nested is not None and r not in visited:
            visited.add(r)
            inner = nested.aggregation()
            out.append(
                f"<li><details open><summary>{_link(r)} "
                f"(aggregation of {len(inner.resources)} resources)</summary>"
            )
            out.extend(_resource_list(inner, store, visited))
            out.append("</details></li>")
        else:
            out.append(f"<li>{_link(r)}</li>")
    out.append("</ul>")
    return out


def render(agg: Aggregation, store=None) -> str:
    """Render the splash page for ``agg``, consulting ``store`` for nesting.

    ``store`` needs only a ``get_by_aggregation(uri)`` method; None renders
    the flat resource list without expansion or relationships.
    """
    rem = store.get_by_aggregation(agg.uri) if store is not None else None
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>Aggregation {html.escape(_label(agg.uri))}</title>",
        f"<style>{_STYLE}</style>",
        "</head>",
        "<body>",
        "<h1>Aggregation</h1>",
        f"<p><code>{html.escape(agg.uri.value)}</code></p>",
        f"<h2>Aggregated resources ({len(agg.resources)})</h2>",
    ]
    parts.extend(_resource_list(agg, store, {agg.uri}))
    if rem is not None:
        entries = _relationship_entries(rem)
        if entries:
            parts.append(f"<h2>Relationships ({len(entries)})</h2>")
            parts.append("<ul>")
            parts.extend(entries)
            parts.append("</ul>")
        parts.append(
            f"<p>Described by <code>{html.escape(rem.uri.value)}</code>, "
            f"created {rem.created.strftime('%Y-%m-%dT%H:%M:%SZ')}.</p>"
        )
    parts.extend(["</body>", "</html>"])
    return "\n".join(parts) + "\n"
