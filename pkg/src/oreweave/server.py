"""Read-only dereference service over a map store.

URL scheme (ids are the percent-encoded full URIs):

    /agg/<id>           aggregation URI: 303 redirect per content negotiation
    /rem/<id>.remc      the map document, canonical line format
    /rem/<id>.rdf       the map document, RDF/XML
    /splash/<id>.html   the human-readable splash page

Dereferencing an aggregation never serves bytes directly: humans are sent to
the splash page, machines to the map document (canonical when the client
does not care). The map bytes served are exactly the store's bytes, so what
a harvester fetches is what the store holds.
"""

from __future__ import annotations

import signal
import sys
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import quote, unquote

from oreweave import canonical, rdfxml, splash
from oreweave.errors import InvalidUriError, OreweaveError, StoreError
from oreweave.model import validate
from oreweave.rdf import Uri
from oreweave.store import MapStore

SUPPORTED_TYPES = (canonical.MEDIA_TYPE, rdfxml.MEDIA_TYPE, splash.MEDIA_TYPE)


@dataclass(frozen=True)
class DerefRequest:
    path: str
    accept: str | None = None


@dataclass(frozen=True)
class DerefResponse:
    status: int
    content_type: str | None = None
    body: bytes = b""
    location: str | None = None


class StoreInvalidError(OreweaveError):
    """The store fails validation, so the service refuses to start."""

    def __init__(self, report):
        super().__init__("store fails validation: " + report.summary())
        self.report = report


def _parse_accept(header: str) -> list[tuple[str, float, int]]:
    """(media-type, q, position) entries; unparseable pieces are dropped."""
    out = []
    for pos, piece in enumerate(header.split(",")):
        parts = [p.strip() for p in piece.split(";")]
        mtype = parts[0]
        if not mtype or "/" not in mtype:
            continue
        q = 1.0
        for param in parts[1:]:
            if param.startswith("q="):
                try:
                    q = float(param[2:])
                except ValueError:
                    q = 0.0
        out.append((mtype.lower(), q, pos))
    return out


def _type_matches(pattern: str, mtype: str) -> int:
    """Specificity of a match: 2 exact, 1 type wildcard, 0 full wildcard, -1 none."""
    if pattern == mtype:
        return 2
    major = mtype.split("/", 1)[0]
    if pattern == f"{major}/*":
        return 1
    if pattern == "*/*":
        return 0
    return -1


def negotiate(accept: str | None, supported: tuple[str, ...]) -> str | None:
    """Pick the best supported media type for an Accept header.

    A missing or blank header yields the first supported type. None means
    nothing acceptable (the 406 case). Ties break on header order, then on
    the server's preference order in ``supported``.
    """
    if accept is None or not accept.strip():
        return supported[0]
    entries = _parse_accept(accept)
    if not entries:
        return supported[0]
    best: tuple[float, int, int, int] | None = None
    chosen: str | None = None
    for rank, mtype in enumerate(supported):
        score: tuple[float, int, int] | None = None
        for pattern, q, pos in entries:
            spec = _type_matches(pattern, mtype)
            if spec < 0 or q <= 0:
                continue
            candidate = (q, spec, -pos)
            if score is None or candidate > score:
                score = candidate
        if score is None:
            continue
        # Maximize (q, specificity, header position, server preference).
        key = (*score, -rank)
        if best is None or key > best:
            best, chosen = key, mtype
    return chosen


def _encode(uri: Uri) -> str:
    return quote(uri.value, safe="")


def agg_url(agg_uri: Uri) -> str:
    return f"/agg/{_encode(agg_uri)}"


def _not_found(path: str) -> DerefResponse:
    return DerefResponse(404, "text/plain; charset=utf-8", f"not found: {path}\n".encode())


def _not_acceptable(supported: tuple[str, ...]) -> DerefResponse:
    body = "not acceptable; supported types: " + ", ".join(supported) + "\n"
    return DerefResponse(406, "text/plain; charset=utf-8", body.encode())


def _decode_id(raw: str) -> Uri | None:
    try:
        return Uri(unquote(raw))
    except InvalidUriError:
        return None


def resolve(store: MapStore, request: DerefRequest) -> DerefResponse:
    """Pure mapping from request to response; never touches the network."""
    path = request.path.split("?", 1)[0]

    if path.startswith("/agg/"):
        agg_uri = _decode_id(path[len("/agg/") :])
        rem = store.get_by_aggregation(agg_uri) if agg_uri is not None else None
        if rem is None:
            return _not_found(path)
        chosen = negotiate(request.accept, SUPPORTED_TYPES)
        if chosen is None:
            return _not_acceptable(SUPPORTED_TYPES)
        if chosen == splash.MEDIA_TYPE:
            return DerefResponse(303, location=f"/splash/{_encode(agg_uri)}.html")
        ext = ".remc" if chosen == canonical.MEDIA_TYPE else ".rdf"
        return DerefResponse(303, location=f"/rem/{_encode(rem.uri)}{ext}")

    if path.startswith("/rem/") and path.endswith(canonical.FILE_EXTENSION):
        rem_uri = _decode_id(path[len("/rem/") : -len(canonical.FILE_EXTENSION)])
        if rem_uri is None or rem_uri not in store:
            return _not_found(path)
        if negotiate(request.accept, (canonical.MEDIA_TYPE,)) is None:
            return _not_acceptable((canonical.MEDIA_TYPE,))
        return DerefResponse(200, canonical.MEDIA_TYPE, store.document(rem_uri))

    if path.startswith("/rem/") and path.endswith(rdfxml.FILE_EXTENSION):
        rem_uri = _decode_id(path[len("/rem/") : -len(rdfxml.FILE_EXTENSION)])
        if rem_uri is None or rem_uri not in store:
            return _not_found(path)
        if negotiate(request.accept, (rdfxml.MEDIA_TYPE,)) is None:
            return _not_acceptable((rdfxml.MEDIA_TYPE,))
        return DerefResponse(200, rdfxml.MEDIA_TYPE, rdfxml.serialize(store.get(rem_uri)))

    if path.startswith("/splash/") and path.endswith(".html"):
        agg_uri = _decode_id(path[len("/splash/") : -len(".html")])
        rem = store.get_by_aggregation(agg_uri) if agg_uri is not None else None
        if rem is None:
            return _not_found(path)
        if negotiate(request.accept, (splash.MEDIA_TYPE,)) is None:
            return _not_acceptable((splash.MEDIA_TYPE,))
        page = splash.render(rem.aggregation(), store)
        return DerefResponse(200, "text/html; charset=utf-8", page.encode("utf-8"))

    return _not_found(path)


class _Handler(BaseHTTPRequestHandler):
    server_version = "oreweave"
    protocol_version = "HTTP/1.1"

    def do_GET(self):  # noqa: N802 - http.server API
        response = resolve(self.server.snapshot, DerefRequest(self.path, self.headers.get("Accept")))
        self.send_response(response.status)
        if response.location is not None:
            self.send_header("Location", response.location)
        if response.content_type is not None:
            self.send_header("Content-Type", response.content_type)
        self.send_header("Content-Length", str(len(response.body)))
        self.end_headers()
        self.wfile.write(response.body)

    def log_message(self, fmt, *args):
        print(f"{self.address_string()} {fmt % args}", file=sys.stderr)


class DerefServer(ThreadingHTTPServer):
    """ThreadingHTTPServer carrying an immutable store snapshot.

    Requests read ``snapshot`` once, so many readers can run concurrently;
    ``reload`` swaps in a freshly loaded store atomically and never disturbs
    requests already in flight.
    """

    daemon_threads = True

    def __init__(self, store: MapStore, host: str = "127.0.0.1", port: int = 0):
        self.snapshot = store
        self._lock = threading.Lock()
        super().__init__((host, port), _Handler)

    def reload(self) -> None:
        if self.snapshot.root is None:
            return
        with self._lock:
            self.snapshot = MapStore(self.snapshot.root)


def check_store(store: MapStore) -> None:
    """Refuse stores with validation errors; warnings go to stderr."""
    report = validate(store.maps())
    for finding in report.warnings:
        print(f"warning: {finding.line()}", file=sys.stderr)
    if not report.ok:
        raise StoreInvalidError(report)


def make_server(store_root: str | Path, host: str = "127.0.0.1", port: int = 0) -> DerefServer:
    store = MapStore(store_root)
    if len(store) == 0:
        raise StoreError(f"store at {store_root} holds no resource maps")
    check_store(store)
    return DerefServer(store, host, port)


def serve(store_root: str | Path, host: str = "127.0.0.1", port: int = 8080) -> None:
    """Run the service until interrupted; SIGHUP reloads the store."""
    httpd = make_server(store_root, host, port)
    if hasattr(signal, "SIGHUP") and threading.current_thread() is threading.main_thread():
        signal.signal(signal.SIGHUP, lambda *_: httpd.reload())
    bound_host, bound_port = httpd.server_address[:2]
    print(f"serving {store_root} on http://{bound_host}:{bound_port}", file=sys.stderr)
    try:
        httpd.serve_forever()
    finally:
        httpd.server_close()
