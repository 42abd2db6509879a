"""Local HTTP session service driving the designer review loop.

A session wraps one workspace (components + resources + detected conflicts).
Designers decide conflicts one by one; every decision is appended to the
action history, so later sessions see history-driven recommendations. The
preview endpoint re-merges the decided subset on every call; finalize runs
the full integration once and then keeps returning the same artifact.

Sessions live in memory. The durable state is the history file: decisions
survive process restarts only there.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import kernels
from .align import AlignmentParams
from .errors import (
    IntegrationError,
    ModelInvalid,
    OntologyInvalid,
    ParseError,
    StateError,
)
from .ingest import serialize_bcm
from .merge import integrate
from .pipeline import (
    Workspace,
    action_from_json,
    build_workspace,
    conflict_to_json,
    model_to_json,
)
from .resolve import (
    ActionHistory,
    HistoryRecord,
    append_history_line,
    load_history,
    record_decision,
)

DEFAULT_PORT = 7341


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


class HistoryStore:
    """Append-only decision history, file-backed when a path is configured."""

    def __init__(self, path: str | Path | None, threshold: int):
        self.path = Path(path) if path else None
        self.threshold = threshold
        self._lock = threading.Lock()
        self._memory: list[HistoryRecord] = []

    def snapshot(self) -> ActionHistory:
        with self._lock:
            if self.path is not None:
                return load_history(self.path, threshold=self.threshold)
            return ActionHistory(tuple(self._memory), threshold=self.threshold)

    def append(self, record: HistoryRecord) -> None:
        with self._lock:
            if self.path is not None:
                append_history_line(self.path, record)
            else:
                self._memory.append(record)


@dataclass
class Session:
    id: str
    ws: Workspace
    phase: str = "reviewing"
    artifact: dict[str, str] | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def add(self, ws: Workspace) -> Session:
        with self._lock:
            sid = secrets.token_hex(8)
            while sid in self._sessions:
                sid = secrets.token_hex(8)
            session = Session(id=sid, ws=ws)
            self._sessions[sid] = session
            return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, "SESSION_NOT_FOUND", f"no session {sid!r}")
        return session


def _require(payload: Any, key: str, kind: type) -> Any:
    if not isinstance(payload, dict) or key not in payload:
        raise ApiError(400, "BAD_REQUEST", f"request body needs {key!r}")
    value = payload[key]
    if not isinstance(value, kind):
        raise ApiError(400, "BAD_REQUEST", f"{key!r} must be a {kind.__name__}")
    return value


def _named_text(doc: Any, fallback: str) -> tuple[str, str]:
    if isinstance(doc, str):
        return (fallback, doc)
    if isinstance(doc, dict) and isinstance(doc.get("text"), str):
        return (str(doc.get("filename", fallback)), doc["text"])
    raise ApiError(400, "BAD_REQUEST", f"{fallback}: expected text or {{filename, text}}")


def create_app(
    history_path: str | Path | None = None,
    threshold: int = 3,
    params: AlignmentParams | None = None,
    static_dir: str | Path | None = None,
    default_domain: tuple[str, str] | None = None,
    default_lexicon: tuple[str, str] | None = None,
) -> FastAPI:
    app = FastAPI(title="bcfuse", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    history = HistoryStore(history_path, threshold)
    sessions = SessionStore()
    params = params or AlignmentParams()

    @app.exception_handler(ApiError)
    async def on_api_error(_, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "detail": exc.detail},
        )

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "kernelBackend": kernels.BACKEND}

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)) -> dict[str, Any]:
        raw_components = _require(payload, "components", list)
        if not raw_components:
            raise ApiError(400, "BAD_REQUEST", "components must not be empty")
        components = [
            _named_text(doc, f"component{i + 1}.bcm") for i, doc in enumerate(raw_components)
        ]
        # Server-side resources stand in when the session does not bring its own.
        domain = (
            _named_text(payload["domain"], "domain.onto")
            if payload.get("domain")
            else default_domain
        )
        lexicon = (
            _named_text(payload["lexicon"], "lexicon.syn")
            if payload.get("lexicon")
            else default_lexicon
        )
        try:
            ws = build_workspace(
                components, domain, lexicon, history=history.snapshot(), params=params
            )
        except ParseError as exc:
            raise ApiError(
                400, "PARSE_ERROR", str(exc), {"line": exc.line, "column": exc.column}
            ) from None
        except ModelInvalid as exc:
            raise ApiError(
                400,
                "MODEL_INVALID",
                str(exc),
                [{"code": f.code, "path": f.path, "message": f.message} for f in exc.findings],
            ) from None
        except OntologyInvalid as exc:
            raise ApiError(400, "ONTOLOGY_INVALID", str(exc)) from None
        except ValueError as exc:
            raise ApiError(400, "BAD_REQUEST", str(exc)) from None
        session = sessions.add(ws)
        return {
            "session": session.id,
            "phase": session.phase,
            "conflicts": [conflict_to_json(cf) for cf in ws.conflicts],
        }

    @app.get("/sessions/{sid}/conflicts")
    def list_conflicts(sid: str) -> dict[str, Any]:
        session = sessions.get(sid)
        with session.lock:
            return {
                "session": session.id,
                "phase": session.phase,
                "conflicts": [conflict_to_json(cf) for cf in session.ws.conflicts],
            }

    @app.post("/sessions/{sid}/conflicts/{index}/decision")
    def decide(sid: str, index: int, payload: dict = Body(...)) -> dict[str, Any]:
        session = sessions.get(sid)
        action_doc = payload.get("action", payload)
        try:
            action = action_from_json(action_doc)
        except ValueError as exc:
            raise ApiError(422, "ILLEGAL_ACTION", str(exc)) from None
        with session.lock:
            if session.phase != "reviewing":
                raise ApiError(409, "ALREADY_FINALIZED", "session is finalized")
            conflicts = session.ws.conflicts
            if index < 0 or index >= len(conflicts):
                raise ApiError(
                    404, "CONFLICT_NOT_FOUND", f"no conflict {index} (have {len(conflicts)})"
                )
            conflict = conflicts[index]
            if not conflict.pending:
                raise ApiError(409, "ALREADY_DECIDED", f"conflict {index} is already decided")
            if action.kind not in conflict.legal_kinds():
                raise ApiError(
                    422,
                    "ILLEGAL_ACTION",
                    f"{action.kind.value} is not in the rule catalog for "
                    f"{conflict.relation.value} conflicts",
                    {"legal": [k.value for k in conflict.legal_kinds()]},
                )
            try:
                updated = record_decision(session.ws.history, conflict, action)
            except StateError as exc:
                raise ApiError(409, "ALREADY_DECIDED", str(exc)) from None
            session.ws.history = updated
            history.append(updated.records[-1])
            return conflict_to_json(conflict)

    @app.get("/sessions/{sid}/preview")
    def preview(sid: str) -> dict[str, Any]:
        session = sessions.get(sid)
        with session.lock:
            result = integrate(
                session.ws.models,
                session.ws.co,
                session.ws.conflicts,
                domain=session.ws.domain,
                partial=True,
            )
            unresolved = [
                {
                    "index": cf.index,
                    "relation": cf.relation.value,
                    "source": conflict_to_json(cf)["source"],
                    "target": conflict_to_json(cf)["target"],
                }
                for cf in session.ws.conflicts
                if cf.pending
            ]
        return {"model": model_to_json(result.model), "unresolved": unresolved}

    @app.post("/sessions/{sid}/finalize")
    def finalize(sid: str) -> dict[str, str]:
        session = sessions.get(sid)
        with session.lock:
            if session.artifact is not None:
                return session.artifact
            pending = [cf.index for cf in session.ws.conflicts if cf.pending]
            if pending:
                raise ApiError(
                    409,
                    "PENDING_CONFLICTS",
                    "all conflicts must be decided before finalize",
                    {"pending": pending},
                )
            try:
                result = integrate(
                    session.ws.models,
                    session.ws.co,
                    session.ws.conflicts,
                    domain=session.ws.domain,
                )
            except IntegrationError as exc:
                raise ApiError(
                    409,
                    "INTEGRATION_FAILED",
                    str(exc),
                    {
                        "findings": [
                            {"code": f.code, "path": f.path, "message": f.message}
                            for f in (exc.findings or [])
                        ],
                        "pending": exc.pending,
                    },
                ) from None
            session.artifact = {
                "bcm": serialize_bcm(result.model),
                "report": result.report.to_tsv(),
            }
            session.phase = "finalized"
            return session.artifact

    @app.get("/sessions/{sid}/alignment")
    def alignment(sid: str) -> Response:
        session = sessions.get(sid)
        return Response(content=session.ws.alignment_export(), media_type="application/json")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
