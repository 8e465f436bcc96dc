"""Command-line interface.

Machine-readable results go to stdout, diagnostics to stderr. Exit codes:
0 success, 1 validation or domain errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from oreweave import canonical, rdfxml
from oreweave.errors import OreweaveError, StoreConflictError
from oreweave.fixtures import FIXTURE_NAMES, load_fixture
from oreweave.harvest import UnionGraph, co_referenced, harvest, trace
from oreweave.lifecycle import load_stage_table
from oreweave.model import (
    Aggregation,
    ResourceMap,
    describe,
    new_aggregation,
    nest,
    parse_timestamp,
    validate,
)
from oreweave.rdf import Literal, Triple, Uri
from oreweave.server import StoreInvalidError, serve
from oreweave.store import MapStore
from oreweave.vocab import AGGREGATES, IS_DESCRIBED_BY, Vocabulary


def _fail(message: str, code: int = 1) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _term_from_arg(text: str, lang: str | None, datatype: str | None, force_literal: bool):
    if not force_literal and lang is None and datatype is None:
        try:
            return Uri(text)
        except OreweaveError:
            pass
    return Literal(text, datatype=Uri(datatype) if datatype else None, language=lang)


def _target_map(store: MapStore, subject: Uri) -> ResourceMap:
    """The map a new relationship about ``subject`` belongs in."""
    rem = store.get_by_aggregation(subject)
    if rem is not None:
        return rem
    holders = [m for m in store.maps() if subject in m.resources()]
    if len(holders) == 1:
        return holders[0]
    if not holders:
        raise OreweaveError(f"{subject} is not an aggregation or resource in the store")
    listed = ", ".join(str(m.uri) for m in holders)
    raise OreweaveError(f"{subject} is aggregated by several maps ({listed}); relate it via its aggregation")


def _cmd_new(args) -> int:
    store = MapStore(args.out)
    agg = new_aggregation(Uri(args.aggregation), [Uri(r) for r in args.resources])
    created = parse_timestamp(args.created) if args.created else None
    rem = describe(agg, Uri(args.rem), created=created)
    store.put(rem)
    print(rem.uri)
    return 0


def _cmd_add(args) -> int:
    store = MapStore(args.store)
    rem = store.get_by_aggregation(Uri(args.aggregation))
    if rem is None:
        return _fail(f"no resource map describes {args.aggregation}")
    agg = rem.aggregation()
    statements = rem.statements
    for r in args.resources:
        resource = Uri(r)
        agg = Aggregation(agg.uri, agg.resources + (resource,))
        statements = statements.insert(Triple(agg.uri, AGGREGATES, resource))
    store.put(ResourceMap(rem.uri, rem.describes, statements, rem.created))
    print(rem.uri)
    return 0


def _cmd_relate(args) -> int:
    store = MapStore(args.store)
    subject = Uri(args.subject)
    predicate = Uri(args.predicate)
    obj = _term_from_arg(args.object, args.lang, args.datatype, args.literal)
    rem = _target_map(store, subject)
    known = {rem.uri, rem.describes, *rem.resources()}
    for u in (subject, obj):
        if isinstance(u, Uri) and u not in known:
            print(f"note: {u} is not part of {rem.describes}", file=sys.stderr)
    statements = rem.statements.insert(Triple(subject, predicate, obj))
    store.put(ResourceMap(rem.uri, rem.describes, statements, rem.created))
    print(rem.uri)
    return 0


def _cmd_nest(args) -> int:
    store = MapStore(args.store)
    parent_rem = store.get_by_aggregation(Uri(args.parent))
    if parent_rem is None:
        return _fail(f"no resource map describes {args.parent}")
    child_uri = Uri(args.child)
    child_rem = store.get_by_aggregation(child_uri)
    child = child_rem.aggregation() if child_rem is not None else Aggregation(child_uri)
    parent = nest(parent_rem.aggregation(), child)
    statements = parent_rem.statements.insert(Triple(parent.uri, AGGREGATES, child_uri))
    if child_rem is not None:
        statements = statements.insert(Triple(child_uri, IS_DESCRIBED_BY, child_rem.uri))
    else:
        print(f"note: {child_uri} has no resource map in the store yet", file=sys.stderr)
    store.put(ResourceMap(parent_rem.uri, parent_rem.describes, statements, parent_rem.created))
    print(parent_rem.uri)
    return 0


def _cmd_validate(args) -> int:
    store = MapStore(args.store)
    report = validate(store.maps())
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def _cmd_export(args) -> int:
    store = MapStore(args.store)
    rem = store.get(Uri(args.rem))
    out = Path(args.file)
    if out.suffix == canonical.FILE_EXTENSION:
        out.write_bytes(canonical.serialize(rem))
    elif out.suffix == rdfxml.FILE_EXTENSION:
        out.write_bytes(rdfxml.serialize(rem))
    else:
        return _fail(f"cannot infer format from {out.name!r} (use .remc or .rdf)", 2)
    print(out)
    return 0


def _cmd_import(args) -> int:
    store = MapStore(args.store)
    src = Path(args.file)
    data = src.read_bytes()
    if src.suffix == canonical.FILE_EXTENSION:
        rem = canonical.parse(data)
    elif src.suffix == rdfxml.FILE_EXTENSION:
        rem = rdfxml.parse(data)
    else:
        return _fail(f"cannot infer format from {src.name!r} (use .remc or .rdf)", 2)
    store.put(rem)
    print(rem.uri)
    return 0


def _cmd_fixture(args) -> int:
    table = load_stage_table(args.stages) if args.stages else None
    store = load_fixture(args.name, args.out, Vocabulary.from_env(), table)
    for rem in store.maps():
        print(rem.uri)
    return 0


def _cmd_harvest(args) -> int:
    result = harvest(args.sources)
    store = MapStore(args.out)
    for rem in result.maps:
        try:
            store.put(rem)
        except StoreConflictError as e:
            print(f"note: skipped {rem.uri}: {e}", file=sys.stderr)
    sys.stdout.write(result.report_text())
    return 0


def _union_from_store(path: str) -> UnionGraph:
    return UnionGraph.from_maps(MapStore(path).maps())


def _cmd_trace(args) -> int:
    union = _union_from_store(args.store)
    result = trace(union, Uri(args.uri), args.max_depth)
    for p in result.paths:
        print(f"{p.depth}\t{p.node}\t{p.render(result.entry)}")
    if args.figure:
        from oreweave import figures

        figures.save_trace_figure(result, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def _cmd_coref(args) -> int:
    union = _union_from_store(args.store)
    coref = co_referenced(union)
    for uri in sorted(coref):
        rems = ",".join(str(u) for u in sorted(coref[uri]))
        print(f"{uri}\t{len(coref[uri])}\t{rems}")
    if args.figure:
        from oreweave import figures

        figures.save_coref_figure(coref, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)
    return 0


def _cmd_serve(args) -> int:
    try:
        serve(args.store, args.host, args.port)
    except StoreInvalidError as e:
        for line in e.report.lines():
            print(line, file=sys.stderr)
        return _fail(str(e))
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oreweave",
        description="Build, validate, publish, harvest, and query aggregations of research artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("new", help="create an aggregation and its resource map")
    p.add_argument("aggregation", help="aggregation URI")
    p.add_argument("resources", nargs="+", metavar="resource", help="aggregated resource URIs")
    p.add_argument("--rem", required=True, help="resource map URI")
    p.add_argument("--out", required=True, help="store directory")
    p.add_argument("--created", help="ISO-8601 creation timestamp (defaults to now)")
    p.set_defaults(func=_cmd_new)

    p = sub.add_parser("add", help="add resources to an existing aggregation")
    p.add_argument("store", help="store directory")
    p.add_argument("aggregation", help="aggregation URI")
    p.add_argument("resources", nargs="+", metavar="resource")
    p.set_defaults(func=_cmd_add)

    p = sub.add_parser("relate", help="assert a relationship triple in the owning map")
    p.add_argument("store", help="store directory")
    p.add_argument("subject")
    p.add_argument("predicate")
    p.add_argument("object")
    p.add_argument("--lang", help="language tag (object becomes a literal)")
    p.add_argument("--datatype", help="datatype URI (object becomes a literal)")
    p.add_argument("--literal", action="store_true", help="treat the object as a literal")
    p.set_defaults(func=_cmd_relate)

    p = sub.add_parser("nest", help="aggregate one aggregation inside another")
    p.add_argument("store", help="store directory")
    p.add_argument("parent", help="parent aggregation URI")
    p.add_argument("child", help="child aggregation URI")
    p.set_defaults(func=_cmd_nest)

    p = sub.add_parser("validate", help="check a store and print the findings")
    p.add_argument("store", help="store directory")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("export", help="write one map to a file (.remc or .rdf)")
    p.add_argument("store", help="store directory")
    p.add_argument("rem", help="resource map URI")
    p.add_argument("file", help="output file; extension picks the format")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("import", help="read a map document into the store")
    p.add_argument("store", help="store directory")
    p.add_argument("file", help="input file; extension picks the format")
    p.set_defaults(func=_cmd_import)

    p = sub.add_parser("fixture", help="materialize a built-in example store")
    p.add_argument("name", choices=FIXTURE_NAMES)
    p.add_argument("--out", required=True, help="store directory")
    p.add_argument("--stages", help="alternate kind-to-stage table (TSV)")
    p.set_defaults(func=_cmd_fixture)

    p = sub.add_parser("harvest", help="fetch maps from endpoints into a store")
    p.add_argument("sources", nargs="+", metavar="endpoint", help="HTTP URL, file, or store directory")
    p.add_argument("--out", required=True, help="destination store directory")
    p.set_defaults(func=_cmd_harvest)

    p = sub.add_parser("trace", help="walk relationships outward from a URI")
    p.add_argument("store", help="store directory")
    p.add_argument("uri", help="entry URI")
    p.add_argument("--max-depth", type=int, default=None, help="bound the walk, in hops")
    p.add_argument("--figure", help="also render the traced neighborhood to this image file")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("coref", help="list URIs referenced by two or more maps")
    p.add_argument("store", help="store directory")
    p.add_argument("--figure", help="also render a reference-count chart to this image file")
    p.set_defaults(func=_cmd_coref)

    p = sub.add_parser("serve", help="serve a store over HTTP")
    p.add_argument("--store", required=True, help="store directory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except OreweaveError as e:
        return _fail(str(e))
    except ValueError as e:
        return _fail(str(e))
    except OSError as e:
        return _fail(str(e))


def main() -> None:
    sys.exit(run())
