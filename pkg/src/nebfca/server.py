"""JSON-over-HTTP service for the workspace, plus static UI assets.

The workspace lives behind an atomic reference: GETs read the current
snapshot without locking, mutations (views, links) build a new snapshot
under a single writer lock and persist it. Browse sessions are held in
memory per service instance.

Every response envelope carries {"version": "v0"}; errors are
{"code", "message", "detail"} with a 4xx status.
"""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from . import __version__
from .cks import View, extend_context, validate
from .errors import NebfcaError
from .lattice import enumerate_concepts, serialize_lattice
from .navigation import (
    BrowseSession,
    NeighborhoodFilters,
    Seed,
    serialize_neighborhood,
)
from .query import parse
from .scaling import ScalePlan, SortScale
from .sharing import SharingLink, block_matrix, compose
from .workspace import WorkspaceDocument, _decode_plan, save

API_VERSION = "v0"
DEFAULT_ADDR = "127.0.0.1:7878"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


class WorkspaceService:
    """Holds the document snapshot, the persistence path, and live sessions."""

    def __init__(self, doc: WorkspaceDocument, path=None, ui_dir=None):
        self._doc = doc
        self._path = path
        self._write_lock = threading.Lock()
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self._sessions: dict = {}
        self._session_seq = 0

    @property
    def document(self) -> WorkspaceDocument:
        return self._doc

    def mutate(self, fn) -> WorkspaceDocument:
        with self._write_lock:
            new_doc = fn(self._doc)
            new_doc.check_references()
            self._doc = new_doc
            if self._path is not None:
                save(new_doc, self._path)
        return new_doc

    def create_session(self, context_name: str, facets) -> str:
        doc = self._doc
        mv = doc.context(context_name)
        if facets is None:
            facet_plans = [("base", doc.plan_for(context_name))]
        else:
            facet_plans = [(label, _decode_plan(spec)) for label, spec in facets]
        session = BrowseSession(mv, facet_plans)
        with self._write_lock:
            self._session_seq += 1
            sid = f"s{self._session_seq}"
            self._sessions[sid] = session
        return sid

    def session(self, sid: str) -> BrowseSession:
        session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, "unknown-session", f"no session {sid!r}")
        return session


def _json_body(handler: BaseHTTPRequestHandler) -> dict:
    length = int(handler.headers.get("Content-Length") or 0)
    raw = handler.rfile.read(length) if length else b""
    if not raw:
        return {}
    try:
        body = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ApiError(400, "bad-json", "request body is not valid JSON", str(exc))
    if not isinstance(body, dict):
        raise ApiError(400, "bad-json", "request body must be a JSON object")
    return body


def _parse_seed(body: dict) -> Seed:
    seed = body.get("seed")
    if not isinstance(seed, dict) or len(seed) != 1:
        raise ApiError(400, "bad-seed", 'seed must be {"object": id} or {"attribute": name}')
    (kind, name), = seed.items()
    if kind not in ("object", "attribute"):
        raise ApiError(400, "bad-seed", f"unknown seed kind {kind!r}")
    return Seed(kind, name)


def _parse_filters(body: dict) -> NeighborhoodFilters:
    spec = body.get("filters") or {}
    ball = spec.get("ball")
    return NeighborhoodFilters(
        threshold=spec.get("threshold", 1),
        top_k=spec.get("top_k"),
        ball=tuple(ball) if ball else None,
    )


class _Handler(BaseHTTPRequestHandler):
    service: WorkspaceService  # set by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    # -- plumbing ---------------------------------------------------------------

    def _send_json(self, payload: dict, status: int = 200):
        payload = {"version": API_VERSION, **payload}
        data = json.dumps(payload, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _send_error_json(self, exc: ApiError):
        self._send_json(
            {"code": exc.code, "message": exc.message, "detail": exc.detail},
            status=exc.status,
        )

    def _dispatch(self, method: str):
        try:
            handled = self._route(method)
            if not handled:
                raise ApiError(404, "not-found", f"no route for {self.path}")
        except ApiError as exc:
            self._send_error_json(exc)
        except NebfcaError as exc:
            self._send_error_json(ApiError(400, type(exc).__name__, str(exc)))
        except Exception as exc:  # pragma: no cover - defensive
            self._send_error_json(ApiError(500, "internal", str(exc)))

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    # -- routing -------------------------------------------------------------------

    def _route(self, method: str) -> bool:
        path, _, query = self.path.partition("?")
        doc = self.service.document

        if method == "GET" and path == "/api/contexts":
            self._send_json({"contexts": sorted(doc.contexts)})
            return True

        m = re.fullmatch(r"/api/contexts/([^/]+)", path)
        if m and method == "GET":
            name = self._context_name(doc, m.group(1))
            mv = doc.context(name)
            self._send_json(
                {
                    "name": name,
                    "objects": list(mv.objects),
                    "sorts": list(mv.sorts),
                    "views": [v.name for v in doc.views.get(name, ())],
                }
            )
            return True

        m = re.fullmatch(r"/api/contexts/([^/]+)/lattice", path)
        if m and method == "GET":
            name = self._context_name(doc, m.group(1))
            if "extended=1" in query or "extended=true" in query:
                ctx = extend_context(doc.knowledge_system(name))
            else:
                ctx = doc.scaled(name)
            self._send_json(serialize_lattice(enumerate_concepts(ctx)))
            return True

        m = re.fullmatch(r"/api/contexts/([^/]+)/query", path)
        if m and method == "POST":
            name = self._context_name(doc, m.group(1))
            body = _json_body(self)
            if "q" not in body:
                raise ApiError(400, "missing-field", 'body needs {"q": "<query>"}')
            from .query import evaluate

            mv = doc.context(name)
            result = evaluate(parse(body["q"]), mv)
            self._send_json({"objects": sorted(result, key=mv.objects.index)})
            return True

        m = re.fullmatch(r"/api/contexts/([^/]+)/views", path)
        if m and method == "GET":
            name = self._context_name(doc, m.group(1))
            self._send_json({"views": self._view_records(doc, name)})
            return True
        if m and method == "POST":
            name = self._context_name(doc, m.group(1))
            body = _json_body(self)
            if "name" not in body:
                raise ApiError(400, "missing-field", "view needs a name")
            view = View(
                body["name"],
                tuple(body.get("scope", ())),
                body.get("constructor", "*"),
                body.get("note", ""),
            )
            candidate = doc.views.get(name, ()) + (view,)
            report = validate(candidate)
            if not report.ok:
                raise ApiError(
                    400,
                    "invalid-views",
                    "view set fails validation",
                    "; ".join(str(v) for v in report.violations),
                )
            new_doc = self.service.mutate(lambda d: d.with_view(name, view))
            self._send_json({"views": self._view_records(new_doc, name)}, status=201)
            return True

        if method == "POST" and path == "/api/sessions":
            body = _json_body(self)
            name = self._context_name(doc, body.get("context", ""))
            sid = self.service.create_session(name, body.get("facets"))
            session = self.service.session(sid)
            self._send_json(
                {
                    "session": sid,
                    "context": name,
                    "objects": list(session.context.objects),
                    "attributes": list(session.context.attributes),
                    "object_summary": session.object_summary,
                    "attribute_summary": session.attribute_summary,
                },
                status=201,
            )
            return True

        m = re.fullmatch(r"/api/sessions/([^/]+)/neighborhood", path)
        if m and method == "POST":
            session = self.service.session(m.group(1))
            body = _json_body(self)
            hood = session.neighborhood(_parse_seed(body), _parse_filters(body))
            payload = serialize_neighborhood(hood)
            payload["step"] = len(session.history) - 1
            self._send_json(payload)
            return True

        m = re.fullmatch(r"/api/sessions/([^/]+)/union", path)
        if m and method == "POST":
            session = self.service.session(m.group(1))
            body = _json_body(self)
            steps = []
            for key in ("a", "b"):
                idx = body.get(key)
                if not isinstance(idx, int) or not (0 <= idx < len(session.history)):
                    raise ApiError(
                        400, "bad-step", f"{key!r} must index a history step", str(idx)
                    )
                steps.append(session.history[idx][1])
            union = session.union(steps[0], steps[1])
            self._send_json(serialize_neighborhood(union))
            return True

        if method == "POST" and path == "/api/shared":
            body = _json_body(self)
            names = body.get("spaces")
            if not isinstance(names, list):
                raise ApiError(400, "missing-field", 'body needs {"spaces": [...]}')
            spaces = [
                (self._context_name(doc, n), doc.knowledge_system(n)) for n in names
            ]
            links = [
                SharingLink.of(l["from"], l["to"]) for l in body.get("links", ())
            ]
            bm = block_matrix(compose(spaces, links))
            self._send_json(
                {
                    "rows": [list(r) for r in bm.rows],
                    "row_labels": list(bm.row_labels),
                    "col_labels": list(bm.col_labels),
                    "class_counts": list(bm.class_counts),
                    "object_counts": list(bm.object_counts),
                    "attribute_count": bm.attribute_count,
                }
            )
            return True

        if method == "GET":
            return self._static(path)
        return False

    def _context_name(self, doc: WorkspaceDocument, raw: str) -> str:
        from urllib.parse import unquote

        name = unquote(raw)
        if name not in doc.contexts:
            raise ApiError(404, "unknown-context", f"no context named {name!r}")
        return name

    def _view_records(self, doc: WorkspaceDocument, name: str):
        cks = doc.knowledge_system(name)
        return [
            {
                "name": v.name,
                "scope": list(v.scope),
                "constructor": v.constructor,
                "note": v.note,
                "containment": sorted(cks.containment(v.name)),
            }
            for v in cks.views
        ]

    # -- static assets ----------------------------------------------------------------

    def _static(self, path: str) -> bool:
        ui = self.service.ui_dir
        if ui is None:
            if path == "/":
                body = (
                    "<!doctype html><title>nebfca</title>"
                    "<p>API is up; no UI assets configured.</p>"
                ).encode()
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return True
            return False
        rel = "index.html" if path == "/" else path.lstrip("/")
        target = (ui / rel).resolve()
        if not str(target).startswith(str(ui.resolve())) or not target.is_file():
            return False
        data = target.read_bytes()
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)
        return True


def make_server(
    doc: WorkspaceDocument,
    addr: str = DEFAULT_ADDR,
    path=None,
    ui_dir=None,
) -> ThreadingHTTPServer:
    """Bind a threading HTTP server; port 0 picks an ephemeral port."""
    host, _, port = addr.partition(":")
    service = WorkspaceService(doc, path=path, ui_dir=ui_dir)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    server = ThreadingHTTPServer((host, int(port or 0)), handler)
    server.service = service  # type: ignore[attr-defined]
    return server


def serve(doc, addr=DEFAULT_ADDR, path=None, ui_dir=None):  # pragma: no cover
    server = make_server(doc, addr, path=path, ui_dir=ui_dir)
    host, port = server.server_address[:2]
    print(f"nebfca {__version__} serving on http://{host}:{port}/")
    try:
        server.serve_forever()
    finally:
        server.server_close()
