"""HTTP adapter for live facilitation: sessions, event append, analysis,
layout, and a resumable server-sent event stream.

The server owns seq/timestamp/hash assignment; clients send only
kind/actor/payload. One asyncio task applies events per session (writes
take the session lock), readers see immutable snapshots.
"""
from __future__ import annotations

import asyncio
import os
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse

from .applicability import ComplexityMeasure, build_dependency_network, complexity_gate
from .canonical import canonical_dumps, canonical_loads, canonicalize
from .errors import (
    DuplicateId,
    ParseError,
    PhaseCoherenceError,
    PsmError,
    SchemaError,
)
from .impact import progress_rollup, sroi
from .layout import LayoutConfig, compute_layout, to_svg
from .persistence import (
    append_event,
    complexity_report_to_doc,
    congruence_analysis_doc,
    event_line,
    event_to_doc,
    impact_report_to_doc,
    policy_from_doc,
    replay,
    sector_to_doc,
    serialize_session,
    session_to_doc,
    sroi_report_to_doc,
)
from .session import (
    Event,
    EventKind,
    RevisionPolicy,
    RevisionScope,
    Session,
    apply_event,
    empty_session,
    make_event,
    next_phase,
    revision_warnings,
)

_ID_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_-]{0,63}")

# Engine error code -> HTTP status. Phase gating and ordering conflicts are
# 409s; reference/value problems are 422s; malformed documents are 400s.
_STATUS = {
    "PHASE_COHERENCE": 409,
    "CHAIN_ERROR": 409,
    "INCOMPLETE_PHASE": 409,
    "AGREEMENT": 409,
    "NOT_IN_IMPLEMENTATION": 409,
    "DUPLICATE_ID": 409,
    "PARSE": 400,
    "SCHEMA": 400,
    "IO": 500,
}
_DEFAULT_STATUS = 422


class CanonicalResponse(Response):
    media_type = "application/json"

    def render(self, content: Any) -> bytes:
        return (canonical_dumps(content) + "\n").encode("utf-8")


def _error_doc(exc: PsmError) -> dict:
    try:
        details = canonicalize(exc.details)
    except ValueError:
        details = {k: str(v) for k, v in exc.details.items()}
    return {"code": exc.code, "message": exc.message, "details": details}


def _status_for(exc: PsmError) -> int:
    return _STATUS.get(exc.code, _DEFAULT_STATUS)


class SessionNotFound(PsmError):
    code = "SESSION_NOT_FOUND"


_STATUS["SESSION_NOT_FOUND"] = 404


@dataclass
class _Handle:
    session: Session
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)


class SessionStore:
    """In-memory handles over the data directory; logs are authoritative."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.handles: dict[str, _Handle] = {}

    def log_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.psm.log"

    def snapshot_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.psm.json"

    def create(self, session_id: str, policy: RevisionPolicy) -> _Handle:
        if session_id in self.handles or self.log_path(session_id).exists():
            raise DuplicateId(f"session {session_id!r} already exists",
                              id=session_id)
        session = empty_session(session_id, policy)
        self.log_path(session_id).touch()
        self._write_snapshot(session)
        handle = _Handle(session=session)
        self.handles[session_id] = handle
        return handle

    def get(self, session_id: str) -> _Handle:
        handle = self.handles.get(session_id)
        if handle is not None:
            return handle
        log_path = self.log_path(session_id)
        if not log_path.exists():
            raise SessionNotFound(f"no session {session_id!r}", id=session_id)
        policy = self._load_policy(session_id)
        session = replay(log_path, session_id=session_id, policy=policy)
        handle = _Handle(session=session)
        self.handles[session_id] = handle
        return handle

    def _load_policy(self, session_id: str) -> RevisionPolicy | None:
        path = self.snapshot_path(session_id)
        if not path.exists():
            return None
        try:
            doc = canonical_loads(path.read_text(encoding="utf-8"))
            return policy_from_doc(doc["policy"])
        except (PsmError, OSError, KeyError, TypeError):
            return None

    def persist(self, handle: _Handle, event: Event) -> None:
        append_event(self.log_path(handle.session.id), event)
        self._write_snapshot(handle.session)

    def _write_snapshot(self, session: Session) -> None:
        path = self.snapshot_path(session.id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(serialize_session(session), encoding="utf-8")
        os.replace(tmp, path)


async def _read_body(request: Request) -> Any:
    raw = await request.body()
    if not raw:
        return {}
    try:
        return canonical_loads(raw.decode("utf-8"))
    except UnicodeDecodeError:
        raise ParseError("body is not valid UTF-8") from None


def create_app(data_dir: str | Path = ".",
               clock: Callable[[], int] | None = None) -> FastAPI:
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    now_ms = clock or (lambda: int(time.time() * 1000))
    store = SessionStore(data_dir)

    app = FastAPI(title="psmkit", docs_url=None, redoc_url=None,
                  openapi_url=None)
    app.state.store = store
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(PsmError)
    async def _psm_error(_request: Request, exc: PsmError):
        return CanonicalResponse(_error_doc(exc),
                                 status_code=_status_for(exc))

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await _read_body(request)
        if not isinstance(body, dict):
            raise SchemaError("body must be an object")
        unknown = body.keys() - {"id", "policy"}
        if unknown:
            raise SchemaError(f"unknown field {sorted(unknown)[0]!r}",
                              path=sorted(unknown)[0])
        session_id = body.get("id")
        if session_id is None:
            session_id = os.urandom(6).hex()
        if not isinstance(session_id, str) \
                or not _ID_RE.fullmatch(session_id):
            raise SchemaError("id must match [A-Za-z0-9][A-Za-z0-9_-]{0,63}",
                              path="id")
        policy = RevisionPolicy()
        if "policy" in body:
            policy = policy_from_doc(body["policy"])
        handle = store.create(session_id, policy)
        return CanonicalResponse(session_to_doc(handle.session),
                                 status_code=201)

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        handle = store.get(session_id)
        return CanonicalResponse(session_to_doc(handle.session))

    @app.post("/sessions/{session_id}/events", status_code=201)
    async def post_event(session_id: str, request: Request):
        body = await _read_body(request)
        if not isinstance(body, dict):
            raise SchemaError("body must be an object")
        unknown = body.keys() - {"kind", "actor", "payload"}
        if unknown:
            raise SchemaError(f"unknown field {sorted(unknown)[0]!r}",
                              path=sorted(unknown)[0])
        if "kind" not in body:
            raise SchemaError("missing field 'kind'", path="kind")
        try:
            kind = EventKind(body["kind"])
        except (ValueError, TypeError):
            raise SchemaError(f"unknown event kind {body.get('kind')!r}",
                              path="kind") from None
        actor = body.get("actor")
        if not isinstance(actor, str) or not actor:
            raise SchemaError("actor must be a non-empty string",
                              path="actor")
        payload = body.get("payload", {})

        handle = store.get(session_id)
        async with handle.lock:
            session = handle.session
            if kind is EventKind.PHASE_ADVANCED and payload == {}:
                target = next_phase(session.phase)
                if target is None:
                    raise PhaseCoherenceError(
                        "PHASE_ADVANCED is not allowed during the "
                        "IMPLEMENTATION phase",
                        phase=session.phase.value, kind=kind.value)
                payload = {"from": session.phase.value, "to": target.value}
            timestamp = now_ms()
            warnings = []
            if kind is EventKind.MINOR_REVISION_OPENED:
                warnings = revision_warnings(session, RevisionScope.MINOR,
                                             timestamp)
            elif kind is EventKind.MAJOR_REVISION_OPENED:
                warnings = revision_warnings(session, RevisionScope.MAJOR,
                                             timestamp)
            event = make_event(session, kind, actor, payload, timestamp)
            handle.session = apply_event(session, event)
            store.persist(handle, event)
        return CanonicalResponse({
            "event": event_to_doc(event),
            "warnings": [{"scope": w.scope.value,
                          "elapsedDays": w.elapsed_days,
                          "requiredDays": w.required_days,
                          "message": w.message} for w in warnings],
        }, status_code=201)

    @app.get("/sessions/{session_id}/events")
    async def get_events(session_id: str, request: Request):
        handle = store.get(session_id)
        start = _from_param(request)
        events = [event_to_doc(e) for e in handle.session.log
                  if e.seq >= start]
        return CanonicalResponse({"events": events,
                                  "lastSeq": handle.session.last_seq})

    @app.get("/sessions/{session_id}/stream")
    async def stream(session_id: str, request: Request):
        handle = store.get(session_id)
        start = _from_param(request)

        async def gen():
            last = start - 1
            idle = 0.0
            while True:
                log = handle.session.log
                fresh = [e for e in log if e.seq > last]
                for e in fresh:
                    last = e.seq
                    yield f"id: {e.seq}\ndata: {event_line(e)}\n\n"
                if fresh:
                    idle = 0.0
                else:
                    if await request.is_disconnected():
                        return
                    idle += 0.05
                    if idle >= 15.0:
                        idle = 0.0
                        yield ": keep-alive\n\n"
                    await asyncio.sleep(0.05)

        return StreamingResponse(gen(), media_type="text/event-stream",
                                 headers={"Cache-Control": "no-cache",
                                          "X-Accel-Buffering": "no"})

    @app.get("/sessions/{session_id}/analysis/impact")
    async def analysis_impact(session_id: str):
        handle = store.get(session_id)
        return CanonicalResponse(
            impact_report_to_doc(progress_rollup(handle.session.model)))

    @app.get("/sessions/{session_id}/analysis/sroi")
    async def analysis_sroi(session_id: str):
        handle = store.get(session_id)
        return CanonicalResponse(
            sroi_report_to_doc(sroi(handle.session.model)))

    @app.get("/sessions/{session_id}/analysis/complexity")
    async def analysis_complexity(session_id: str, request: Request):
        handle = store.get(session_id)
        session = handle.session
        measure_raw = request.query_params.get(
            "measure", ComplexityMeasure.PARASITIC_RATIO.value)
        try:
            measure = ComplexityMeasure(measure_raw)
        except ValueError:
            raise SchemaError(f"unknown measure {measure_raw!r}",
                              path="measure") from None
        h_crit = _float_param(request, "hCrit", 0.25)
        network = build_dependency_network(session.model,
                                           session.declared_dependencies)
        report = complexity_gate(network, measure=measure, h_crit=h_crit)
        return CanonicalResponse(complexity_report_to_doc(report))

    @app.get("/sessions/{session_id}/analysis/congruence")
    async def analysis_congruence(session_id: str, request: Request):
        handle = store.get(session_id)
        epsilon = _float_param(request, "epsilon", 0.2)
        return CanonicalResponse(congruence_analysis_doc(
            handle.session.congruence_records, epsilon))

    def _layout_config(request: Request) -> LayoutConfig:
        return LayoutConfig(
            goal_radius=_float_param(request, "goalRadius", 60.0),
            ring_thickness=_float_param(request, "ringThickness", 40.0),
            start_angle_deg=_float_param(request, "startAngleDeg", 0.0))

    @app.get("/sessions/{session_id}/layout")
    async def layout(session_id: str, request: Request):
        handle = store.get(session_id)
        sectors = compute_layout(handle.session.model,
                                 _layout_config(request))
        return CanonicalResponse(
            {"sectors": [sector_to_doc(s) for s in sectors]})

    @app.get("/sessions/{session_id}/layout.svg")
    async def layout_svg(session_id: str, request: Request):
        handle = store.get(session_id)
        config = _layout_config(request)
        svg = to_svg(compute_layout(handle.session.model, config), config)
        return Response(content=svg, media_type="image/svg+xml")

    return app


def _from_param(request: Request) -> int:
    raw = request.query_params.get("from", "1")
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"from must be an integer, got {raw!r}",
                          path="from") from None
    if value < 1:
        raise SchemaError("from must be >= 1", path="from")
    return value


def _float_param(request: Request, name: str, default: float) -> float:
    raw = request.query_params.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise SchemaError(f"{name} must be a number, got {raw!r}",
                          path=name) from None
