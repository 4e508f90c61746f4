"""HTTP API over the session manager.

Endpoints (all JSON unless noted):

* ``GET  /api/state``            current session / rest / matrix summary
* ``POST /api/session/start``    body: region, material, thickness_mm[, override_rest]
* ``POST /api/session/mark``     body optional: t_s (pin the mark to a sample)
* ``POST /api/session/abort``
* ``GET  /api/session/stream``   server-sent events: state / sample / marked / aborted
* ``GET  /api/matrix``
* ``GET  /api/selection``

With ``ui_dir`` set, the directory is served at ``/`` for the operator console.
"""

import json
import queue

from fastapi import FastAPI
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..errors import SessionStateError
from .manager import SessionManager

STREAM_POLL_S = 5.0


class StartRequest(BaseModel):
    region: str
    material: str
    thickness_mm: float
    override_rest: bool = False


class MarkRequest(BaseModel):
    t_s: float | None = None


def create_app(manager: SessionManager, ui_dir=None) -> FastAPI:
    app = FastAPI(title="socketlab session service")

    @app.exception_handler(SessionStateError)
    async def _conflict(request, exc):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def _unknown(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _invalid(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/state")
    def state():
        return manager.state()

    @app.post("/api/session/start")
    def start(req: StartRequest):
        return manager.start_session(req.region, req.material, req.thickness_mm,
                                     override_rest=req.override_rest)

    @app.post("/api/session/mark")
    def mark(req: MarkRequest | None = None):
        return manager.mark(None if req is None else req.t_s)

    @app.post("/api/session/abort")
    def abort():
        return manager.abort()

    @app.get("/api/matrix")
    def matrix():
        return manager.matrix_view()

    @app.get("/api/selection")
    def selection():
        return manager.selection_view()

    @app.get("/api/session/stream")
    def stream():
        def events():
            sub = manager.subscribe()
            try:
                yield "retry: 500\n\n"
                yield _sse({"event": "snapshot", **manager.state()})
                while True:
                    if sub.overflowed:
                        yield _sse({"event": "overflow",
                                    "detail": "stream consumer too slow; reconnect for current state"})
                        return
                    try:
                        item = sub.queue.get(timeout=STREAM_POLL_S)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield _sse(item)
            finally:
                manager.unsubscribe(sub)

        return StreamingResponse(events(), media_type="text/event-stream")

    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="console")

    return app


def _sse(payload: dict) -> str:
    return f"data: {json.dumps(payload)}\n\n"
