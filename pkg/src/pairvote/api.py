"""HTTP surface for the advisor engine, plus the console's static assets.

All rule evaluation happens server-side in :mod:`service`; the endpoints
translate its dicts to JSON and its errors to status codes.  Requests for
one session serialize through the engine's lock; distinct sessions are
fully concurrent.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .relations import ProtocolViolationError
from .service import (
    AdvisorEngine,
    BadRequestError,
    SessionCompleteError,
    SessionStore,
    UnknownSessionError,
)

DEFAULT_STORE = "pairvote_sessions.jsonl"


class CreateSessionBody(BaseModel):
    n: int
    chair_pref: list[int]
    advisor: str = "greedy"


class VoteBody(BaseModel):
    winner: int
    loser: int


def create_app(store_path: str | None = None, static_dir: str | None = None) -> FastAPI:
    store = SessionStore(store_path or os.environ.get("PAIRVOTE_STORE", DEFAULT_STORE))
    engine = AdvisorEngine(store)
    app = FastAPI(title="pairvote advisor")
    app.state.engine = engine

    def run(fn, *args):
        try:
            return fn(*args)
        except UnknownSessionError as exc:
            raise HTTPException(404, f"unknown session {exc.args[0]}") from exc
        except (BadRequestError, SessionCompleteError, ProtocolViolationError, ValueError) as exc:
            raise HTTPException(400, str(exc)) from exc

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        session = run(engine.create_session, body.n, body.chair_pref, body.advisor)
        return session.to_dict()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return run(engine.get, session_id).to_dict()

    @app.post("/sessions/{session_id}/votes")
    def record_vote(session_id: str, body: VoteBody):
        session, implied = run(engine.record_outcome, session_id, body.winner, body.loser)
        return {"session": session.to_dict(), "implied": implied}

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        return run(engine.undo, session_id).to_dict()

    @app.get("/sessions/{session_id}/recommendation")
    def recommendation(session_id: str):
        return run(engine.recommend, session_id)

    @app.get("/sessions/{session_id}/what-if")
    def what_if(session_id: str, x: int, y: int):
        return run(engine.what_if, session_id, x, y)

    static = static_dir or os.environ.get("PAIRVOTE_STATIC")
    if static and os.path.isdir(static):
        app.mount("/", StaticFiles(directory=static, html=True), name="console")
    return app
