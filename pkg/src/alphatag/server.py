"""Local JSON service backing the play UI.

Single-user tool: sessions live in memory and evaporate after an idle
timeout. The handlers only ever call the pure library functions, so
identical request sequences produce identical responses. Each session
serializes its own moves behind a lock; distinct sessions are fully
independent.

Routes:
    GET  /api/sequence?alpha=p/q&count=N
    POST /api/game/new    {"alpha": "...", "pile": "..."}
    POST /api/game/move   {"session_id": "...", "take": "..."}
    GET  /api/game/hint?session_id=...

Anything outside /api/ is served from the optional static directory.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .game import DEFAULT_PILE_LIMIT, GameState, MoveAdvice, Solver, initial_state
from .numerics import parse_rational
from .output import document, sequence_payload
from .sequence import generate

__all__ = ["ApiServer", "run"]

DEFAULT_SESSION_TIMEOUT = 30 * 60  # seconds
MAX_SEQUENCE_COUNT = 100_000

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, **extra):
        super().__init__(message)
        self.status = status
        self.body = {"error": {"code": code, "message": message, **extra}}


@dataclass
class GameSession:
    session_id: str
    alpha: Fraction
    solver: Solver
    state: GameState
    history: list[dict] = field(default_factory=list)
    finished: bool = False
    winner: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)

    def outcome_class(self) -> str:
        """Class of the position facing whoever is to move now."""
        if self.state.pile <= self.solver.pile_limit:
            return self.solver.classify_state(self.state)
        advice = self.solver.best_move(self.state)
        return "N" if advice.winning else "P"

    def state_payload(self) -> dict:
        s = self.state
        return {
            "pile": str(s.pile),
            "cap": str(s.cap),
            "legal_min": "1" if s.legal_max >= 1 else "0",
            "legal_max": str(s.legal_max),
            "to_move": "human" if not self.finished else None,
            "finished": self.finished,
            "winner": self.winner,
            "history": list(self.history),
        }

    def record(self, actor: str, take: int) -> None:
        self.state = self.state.successor(take)
        self.history.append(
            {
                "actor": actor,
                "take": str(take),
                "pile_after": str(self.state.pile),
                "cap_after": str(self.state.cap),
            }
        )


def _hint_text(advice: MoveAdvice) -> str:
    if advice.winning:
        text = f"Take {advice.take} to leave your opponent a losing pile."
    elif advice.take is None:
        text = "No legal move remains."
    else:
        text = (
            "Losing position against perfect play; stalling with 1 "
            "keeps the reply cap as small as possible."
        )
    if advice.theory_derived:
        text += " (theory-derived: beyond the exhaustively validated range)"
    return text


class ApiServer:
    """Threaded HTTP server owning the session table."""

    def __init__(
        self,
        host: str = "127.0.0.1",
        port: int = 0,
        static_dir: str | None = None,
        session_timeout: float = DEFAULT_SESSION_TIMEOUT,
        pile_limit: int = DEFAULT_PILE_LIMIT,
    ):
        self.sessions: dict[str, GameSession] = {}
        self._sessions_lock = threading.Lock()
        self.static_dir = Path(static_dir).resolve() if static_dir else None
        self.session_timeout = session_timeout
        self.pile_limit = pile_limit
        self._httpd = ThreadingHTTPServer((host, port), _Handler)
        self._httpd.daemon_threads = True
        self._httpd.api = self  # type: ignore[attr-defined]

    @property
    def address(self) -> tuple[str, int]:
        return self._httpd.server_address[:2]

    def url(self) -> str:
        host, port = self.address
        return f"http://{host}:{port}"

    def serve_forever(self) -> None:
        self._httpd.serve_forever()

    def shutdown(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()

    # -- session bookkeeping -------------------------------------------------

    def _evict_idle(self) -> None:
        now = time.monotonic()
        with self._sessions_lock:
            dead = [
                sid
                for sid, s in self.sessions.items()
                if now - s.last_access > self.session_timeout
            ]
            for sid in dead:
                del self.sessions[sid]

    def new_session(self, alpha: Fraction, pile: int) -> GameSession:
        solver = Solver(alpha, pile_limit=self.pile_limit)
        session = GameSession(
            session_id=uuid.uuid4().hex,
            alpha=alpha,
            solver=solver,
            state=initial_state(alpha, pile),
        )
        if session.state.legal_max == 0:
            session.finished = True
            session.winner = "engine"  # mover cannot take a stone
        with self._sessions_lock:
            self.sessions[session.session_id] = session
        return session

    def get_session(self, session_id: str) -> GameSession:
        with self._sessions_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        session.last_access = time.monotonic()
        return session

    # -- endpoint logic ------------------------------------------------------

    def handle_sequence(self, params: dict) -> dict:
        alpha = _param_alpha(params)
        try:
            count = int(params.get("count", ["16"])[0])
        except ValueError:
            raise ApiError(400, "bad_request", "count must be an integer")
        if not 2 <= count <= MAX_SEQUENCE_COUNT:
            raise ApiError(400, "bad_request", f"count must be in 2..{MAX_SEQUENCE_COUNT}")
        seq = generate(alpha, count=count)
        return document("sequence", sequence_payload(seq), alpha=alpha, horizon=count)

    def handle_new(self, body: dict) -> dict:
        alpha = _body_alpha(body)
        pile = _body_nat(body, "pile")
        self._evict_idle()
        session = self.new_session(alpha, pile)
        return {
            "session_id": session.session_id,
            "state": session.state_payload(),
            "outcome_class": session.outcome_class(),
        }

    def handle_move(self, body: dict) -> dict:
        session = self.get_session(str(body.get("session_id", "")))
        take = _body_nat(body, "take")
        with session.lock:
            if session.finished:
                raise ApiError(409, "game_over", "the game has already ended")
            state = session.state
            if not state.is_legal(take):
                raise ApiError(
                    400,
                    "illegal_move",
                    f"take {take} is outside the legal range",
                    legal_min="1" if state.legal_max >= 1 else "0",
                    legal_max=str(state.legal_max),
                )
            session.record("human", take)
            engine_take: int | None = None
            if session.state.pile == 0:
                session.finished = True
                session.winner = "human"  # engine cannot move
            else:
                advice = session.solver.best_move(session.state)
                engine_take = advice.take
                session.record("engine", engine_take)
                if session.state.pile == 0:
                    session.finished = True
                    session.winner = "engine"
            return {
                "state": session.state_payload(),
                "engine_reply_move": str(engine_take) if engine_take is not None else None,
                "outcome_class": session.outcome_class(),
                "finished": session.finished,
                "winner": session.winner,
            }

    def handle_hint(self, params: dict) -> dict:
        sid = params.get("session_id", [""])[0]
        session = self.get_session(sid)
        with session.lock:
            if session.finished:
                raise ApiError(409, "game_over", "the game has already ended")
            advice = session.solver.best_move(session.state)
            return {
                "move": str(advice.take) if advice.take is not None else None,
                "zeckendorf_parts": [str(p) for p in advice.parts],
                "explanation": _hint_text(advice),
            }


def _param_alpha(params: dict) -> Fraction:
    raw = params.get("alpha", [None])[0]
    if raw is None:
        raise ApiError(400, "bad_request", "alpha is required")
    return _parse_alpha(raw)


def _body_alpha(body: dict) -> Fraction:
    raw = body.get("alpha")
    if raw is None:
        raise ApiError(400, "bad_request", "alpha is required")
    return _parse_alpha(str(raw))


def _parse_alpha(raw: str) -> Fraction:
    try:
        alpha = parse_rational(raw)
    except ValueError as exc:
        raise ApiError(400, "bad_request", str(exc))
    if alpha < 1:
        raise ApiError(400, "bad_request", "alpha must be >= 1")
    return alpha


def _body_nat(body: dict, key: str) -> int:
    raw = body.get(key)
    try:
        value = int(str(raw))
    except (TypeError, ValueError):
        raise ApiError(400, "bad_request", f"{key} must be a nonnegative integer")
    if value < 0:
        raise ApiError(400, "bad_request", f"{key} must be a nonnegative integer")
    return value


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    @property
    def api(self) -> ApiServer:
        return self.server.api  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, body: dict) -> None:
        raw = (json.dumps(body, indent=2, sort_keys=False) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(raw)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(raw)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise ApiError(400, "bad_request", "request body required")
        try:
            body = json.loads(raw)
        except json.JSONDecodeError:
            raise ApiError(400, "bad_request", "request body is not valid JSON")
        if not isinstance(body, dict):
            raise ApiError(400, "bad_request", "request body must be a JSON object")
        return body

    def _dispatch(self, fn) -> None:
        try:
            self._send_json(200, fn())
        except ApiError as exc:
            self._send_json(exc.status, exc.body)
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": {"code": "internal", "message": str(exc)}})

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        url = urlparse(self.path)
        params = parse_qs(url.query)
        if url.path == "/api/sequence":
            self._dispatch(lambda: self.api.handle_sequence(params))
        elif url.path == "/api/game/hint":
            self._dispatch(lambda: self.api.handle_hint(params))
        elif url.path.startswith("/api/"):
            self._send_json(404, {"error": {"code": "not_found", "message": url.path}})
        else:
            self._serve_static(url.path)

    def do_POST(self):
        url = urlparse(self.path)
        if url.path == "/api/game/new":
            self._dispatch(lambda: self.api.handle_new(self._read_body()))
        elif url.path == "/api/game/move":
            self._dispatch(lambda: self.api.handle_move(self._read_body()))
        else:
            self._send_json(404, {"error": {"code": "not_found", "message": url.path}})

    def _serve_static(self, path: str) -> None:
        root = self.api.static_dir
        if root is None:
            self._send_json(404, {"error": {"code": "not_found", "message": path}})
            return
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._send_json(404, {"error": {"code": "not_found", "message": path}})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": {"code": "not_found", "message": path}})
            return
        raw = target.read_bytes()
        self.send_response(200)
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(raw)))
        self.end_headers()
        self.wfile.write(raw)


def run(
    host: str = "127.0.0.1",
    port: int = 8642,
    static_dir: str | None = None,
    session_timeout: float = DEFAULT_SESSION_TIMEOUT,
) -> None:
    server = ApiServer(host, port, static_dir, session_timeout)
    print(f"serving on {server.url()}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
