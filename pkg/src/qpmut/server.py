"""HTTP/JSON session server for interactive mutation exploration.

Sessions live in memory.  Each session is a tree of QP states rooted at the
initial QP; every edge is labeled by the mutated vertex, and a movable
``current`` pointer selects the node the next mutation extends.  Mutating
from a non-leaf node branches the tree.  All math calls are pure, so the
only lock is around each session's tree.

Routes:
    POST /sessions              {"qp": {...}}          -> session state
    GET  /sessions/{id}                                -> session state
    POST /sessions/{id}/mutate  {"vertex": "2"}        -> session state, or 409
    POST /sessions/{id}/checkout {"node": 3}           -> session state
"""

from __future__ import annotations

import json
import re
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path as FilePath

from .errors import QPMutError
from .jacobian import QP, jacobian_dims
from .mutation import degree_profile, mutate_qp
from .quiver import has_two_cycle_through, quivers_equal
from .serialize import dumps, qp_from_json, qp_to_json, quotient_to_json


class SessionNode:
    def __init__(self, node_id: int, parent: int | None, vertex: str | None, qp: QP):
        self.id = node_id
        self.parent = parent
        self.vertex = vertex
        self.qp = qp
        self.dims = jacobian_dims(qp)
        self.involution_match: bool | None = None

    def to_json(self) -> dict:
        blocked = [v for v in self.qp.quiver.vertices
                   if has_two_cycle_through(self.qp.quiver, v)]
        return {
            "id": self.id,
            "parent": self.parent,
            "vertex": self.vertex,
            "qp": qp_to_json(self.qp),
            "jacobian_dims": quotient_to_json(self.dims),
            "two_cycle_vertices": blocked,
            "mutable_vertices": [v for v in self.qp.quiver.vertices if v not in blocked],
            "involution_match": self.involution_match,
        }


class Session:
    def __init__(self, qp: QP, session_id: str | None = None):
        self.id = session_id or uuid.uuid4().hex[:12]
        self.created_at = time.time()
        self.lock = threading.Lock()
        self.nodes: list[SessionNode] = [SessionNode(0, None, None, qp)]
        self.current = 0

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "created_at": self.created_at,
            "current": self.current,
            "nodes": [n.to_json() for n in self.nodes],
        }

    def mutate(self, vertex: str) -> None:
        with self.lock:
            parent = self.nodes[self.current]
            new_qp = mutate_qp(parent.qp, vertex)
            node = SessionNode(len(self.nodes), parent.id, vertex, new_qp)
            if parent.vertex == vertex and parent.parent is not None:
                grand = self.nodes[parent.parent]
                node.involution_match = (
                    quivers_equal(grand.qp.quiver, new_qp.quiver)
                    and grand.dims.dims == node.dims.dims
                    and degree_profile(grand.qp) == degree_profile(new_qp)
                )
            self.nodes.append(node)
            self.current = node.id

    def checkout(self, node_id: int) -> None:
        with self.lock:
            if not (0 <= node_id < len(self.nodes)):
                raise KeyError(node_id)
            self.current = node_id


class SessionStore:
    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()

    def create(self, qp: QP) -> Session:
        session = Session(qp)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self.lock:
            return self.sessions.get(session_id)

    def snapshot(self, path) -> None:
        with self.lock:
            data = {"sessions": [s.to_json() for s in self.sessions.values()]}
        FilePath(path).write_text(dumps(data), encoding="utf-8")


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}


def make_handler(store: SessionStore, static_dir: str | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):
            pass

        # -- plumbing -----------------------------------------------------

        def _send(self, status: int, payload: dict):
            body = dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, status: int, code: str, detail: str):
            self._send(status, {"error": code, "detail": detail})

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                return json.loads(raw or b"{}")
            except json.JSONDecodeError:
                raise ValueError("request body is not valid JSON")

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        # -- routes ---------------------------------------------------------

        def do_GET(self):
            m = re.fullmatch(r"/sessions/([0-9a-f]+)", self.path)
            if m:
                session = store.get(m.group(1))
                if session is None:
                    return self._error(404, "unknown_session", m.group(1))
                return self._send(200, session.to_json())
            if self.path == "/health":
                return self._send(200, {"status": "ok"})
            if static_dir is not None:
                return self._static(self.path)
            return self._error(404, "not_found", self.path)

        def do_POST(self):
            try:
                body = self._body()
            except ValueError as exc:
                return self._error(400, "input_error", str(exc))
            if self.path == "/sessions":
                return self._create(body)
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/mutate", self.path)
            if m:
                return self._mutate(m.group(1), body)
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/checkout", self.path)
            if m:
                return self._checkout(m.group(1), body)
            return self._error(404, "not_found", self.path)

        def _create(self, body: dict):
            try:
                qp = qp_from_json(body.get("qp", body))
            except QPMutError as exc:
                return self._error(400, exc.code, str(exc))
            session = store.create(qp)
            self._send(201, session.to_json())

        def _mutate(self, session_id: str, body: dict):
            session = store.get(session_id)
            if session is None:
                return self._error(404, "unknown_session", session_id)
            vertex = body.get("vertex")
            if vertex is None:
                return self._error(400, "input_error", "missing vertex")
            try:
                session.mutate(str(vertex))
            except QPMutError as exc:
                return self._error(409, exc.code, str(exc))
            self._send(200, session.to_json())

        def _checkout(self, session_id: str, body: dict):
            session = store.get(session_id)
            if session is None:
                return self._error(404, "unknown_session", session_id)
            try:
                session.checkout(int(body.get("node")))
            except (KeyError, TypeError, ValueError):
                return self._error(400, "input_error", f"bad node {body.get('node')!r}")
            self._send(200, session.to_json())

        # -- static frontend ------------------------------------------------

        def _static(self, path: str):
            name = path.split("?", 1)[0]
            if name in ("", "/"):
                name = "/index.html"
            file_path = (FilePath(static_dir) / name.lstrip("/")).resolve()
            root = FilePath(static_dir).resolve()
            if root not in file_path.parents and file_path != root:
                return self._error(404, "not_found", path)
            if not file_path.is_file():
                return self._error(404, "not_found", path)
            body = file_path.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type",
                             _CONTENT_TYPES.get(file_path.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

    return Handler


def build_server(port: int, initial_qp: QP | None = None,
                 static_dir: str | None = None,
                 host: str = "127.0.0.1") -> tuple[ThreadingHTTPServer, SessionStore]:
    """Bind the session server without starting it; port 0 picks a free port."""
    store = SessionStore()
    if initial_qp is not None:
        store.create(initial_qp)
    httpd = ThreadingHTTPServer((host, port), make_handler(store, static_dir))
    return httpd, store


def serve(port: int, initial_qp: QP | None = None, snapshot_path=None,
          static_dir: str | None = None, host: str = "127.0.0.1") -> SessionStore:
    """Run the session server until interrupted; snapshot on shutdown."""
    httpd, store = build_server(port, initial_qp, static_dir, host)
    print(f"qpmut session server on http://{host}:{httpd.server_address[1]}", flush=True)
    try:
        httpd.serve_forever(poll_interval=0.1)
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
        if snapshot_path is not None:
            store.snapshot(snapshot_path)
    return store
