"""FastAPI session service.

One WebSocket client at a time drives one Session; all pipeline mutations
happen inside that connection's receive loop, so the pipeline is naturally
serialized. The server echoes a pose per command (after any pipeline frames
that command produced), streams pipeline events as they fire, and finalizes
the trace on end-of-stream or disconnect.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ValidationError

from ..estimator import CommandSample, StreamIntegrityError
from ..profile import ProfileDocument, save_profile
from ..session import EntropyTick, Session, SessionConfig, SessionEvent
from ..simulate import ArenaState
from ..telemetry import LogWriter
from ..trace import TraceWriter, config_fingerprint
from .protocol import (
    CmdMessage,
    DoneMessage,
    PoseMessage,
    client_message_adapter,
    event_to_message,
)

WS_POLICY_VIOLATION = 1008


class HealthResponse(BaseModel):
    status: str
    session_active: bool
    config: dict


class ProfileResponse(BaseModel):
    alpha_lin: float
    alpha_ang: float
    revision: int
    dpu_avg: float | str
    dpu_std: float | str


def _threshold_json(value: float) -> float | str:
    return "inf" if value == float("inf") else value


def create_app(
    config: SessionConfig,
    profile_doc: ProfileDocument,
    *,
    trace_path: str | Path | None = None,
    capture_log_path: str | Path | None = None,
    profile_out_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="entrowatch session service")
    app.state.session_active = False
    app.state.current_doc = profile_doc

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(
            status="ok",
            session_active=app.state.session_active,
            config=config_fingerprint(config),
        )

    @app.get("/profile", response_model=ProfileResponse)
    def profile() -> ProfileResponse:
        doc: ProfileDocument = app.state.current_doc
        return ProfileResponse(
            alpha_lin=doc.profile.alpha_lin,
            alpha_ang=doc.profile.alpha_ang,
            revision=doc.profile.revision,
            dpu_avg=_threshold_json(doc.dpu_avg),
            dpu_std=_threshold_json(doc.dpu_std),
        )

    @app.websocket("/ws")
    async def ws_session(websocket: WebSocket) -> None:
        await websocket.accept()
        if app.state.session_active:
            await websocket.close(
                code=WS_POLICY_VIOLATION, reason="one session at a time; try later"
            )
            return
        app.state.session_active = True
        session = Session(config, profile_doc)
        arena = ArenaState()
        trace_fh = None
        trace = None
        log_writer = None
        log_fh = None
        if trace_path is not None:
            trace_fh = open(trace_path, "w", encoding="utf-8", newline="\n")
            trace = TraceWriter(trace_fh, config)
        if capture_log_path is not None:
            log_fh = open(capture_log_path, "w", encoding="utf-8", newline="\n")
            log_writer = LogWriter(log_fh)
        computations = 0

        async def emit(events: list[SessionEvent]) -> None:
            nonlocal computations
            for event in events:
                if isinstance(event, EntropyTick):
                    computations += 1
                if trace is not None:
                    trace.write_event(event)
                await websocket.send_text(event_to_message(event).model_dump_json())

        try:
            while True:
                try:
                    raw = await websocket.receive_text()
                except WebSocketDisconnect:
                    events = session.finalize()
                    if trace is not None:
                        for event in events:
                            trace.write_event(event)
                    break
                try:
                    message = client_message_adapter.validate_json(raw)
                except ValidationError as exc:
                    await websocket.close(
                        code=WS_POLICY_VIOLATION, reason=f"bad frame: {exc.errors()[0]['msg']}"
                    )
                    break
                if isinstance(message, CmdMessage):
                    sample = CommandSample(t_ms=message.t_ms, lin=message.lin, ang=message.ang)
                    if log_writer is not None:
                        log_writer.append(sample)
                    try:
                        events = session.feed(sample)
                    except StreamIntegrityError as exc:
                        await websocket.close(code=WS_POLICY_VIOLATION, reason=str(exc))
                        break
                    await emit(events)
                    arena.step(sample.lin, sample.ang)
                    await websocket.send_text(
                        PoseMessage(
                            t_ms=sample.t_ms, x=arena.x, y=arena.y, heading=arena.heading
                        ).model_dump_json()
                    )
                else:
                    events = session.finalize()
                    await emit(events)
                    await websocket.send_text(
                        DoneMessage(computations=computations).model_dump_json()
                    )
                    await websocket.close()
                    break
        finally:
            app.state.current_doc = session.profile_document()
            if profile_out_path is not None:
                save_profile(profile_out_path, app.state.current_doc)
            if trace_fh is not None:
                trace_fh.close()
            if log_fh is not None:
                log_fh.close()
            app.state.session_active = False

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
