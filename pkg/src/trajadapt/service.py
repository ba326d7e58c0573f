"""HTTP service for the review loop.

Sessions live in memory; generation runs on a background thread so polling
never blocks on an in-flight LLM call (awaiting_llm is an observable
state).  Per-session operations are serialized with a per-session lock, and
eval runs are queued one at a time.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .core import Scene, Trajectory
from .dataset import Sample, default_corpus_path, generate_trajectory, load_corpus, run_eval
from .llm import LlmConfig, make_transport
from .session import (
    APPROVED,
    AWAITING_LLM,
    PROPOSED,
    Session,
    SessionConfig,
    generate_proposal,
    new_session,
    record_verdict,
    save_session,
)


@dataclass
class ServiceSettings:
    llm: LlmConfig = field(default_factory=LlmConfig)
    corpus_path: str | Path | None = None
    export_dir: str | Path | None = None
    auto_repair_budget: int = 1
    static_dir: str | Path | None = None  # built review UI, served at /

    def session_config(self, llm: LlmConfig | None = None) -> SessionConfig:
        return SessionConfig(llm=llm or self.llm, auto_repair_budget=self.auto_repair_budget)


class CreateSessionBody(BaseModel):
    instruction: str | None = None
    scene: dict | None = None
    trajectory: dict | None = None
    sample_id: str | None = None
    fixture_id: str | None = None  # mock response key for custom payloads


class VerdictBody(BaseModel):
    approve: bool
    feedback: str | None = None


class EvalBody(BaseModel):
    llm: str = "mock"
    parallelism: int = 1


def session_view(session: Session) -> dict[str, Any]:
    adapted = session.adapted_trajectory()
    view: dict[str, Any] = {
        "id": session.id,
        "state": session.state,
        "instruction": session.instruction,
        "iteration_count": len(session.iterations),
        "plan": session.latest_plan(),
        "scene": session.scene.to_dict(),
        "original": session.original.to_dict(),
        "adapted": adapted.to_dict() if adapted is not None else None,
        "error": session.error,
    }
    return view


class _Store:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: Session) -> threading.Lock:
        with self._guard:
            self._sessions[session.id] = session
            lock = threading.Lock()
            self._locks[session.id] = lock
            return lock

    def get(self, session_id: str) -> tuple[Session, threading.Lock]:
        with self._guard:
            session = self._sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
            return session, self._locks[session_id]


def create_app(settings: ServiceSettings | None = None) -> FastAPI:
    settings = settings or ServiceSettings()
    app = FastAPI(title="trajadapt", version="0.1.0")
    store = _Store()
    eval_lock = threading.Lock()
    transport = make_transport(settings.llm)

    corpus_path = Path(settings.corpus_path) if settings.corpus_path else default_corpus_path()
    samples: dict[str, Sample] = {}
    if corpus_path.is_file():
        samples = {s.id: s for s in load_corpus(corpus_path)}

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        details = [
            {"field": ".".join(str(p) for p in err.get("loc", [])), "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"error": "malformed body", "fields": details})

    def bad_request(message: str) -> HTTPException:
        return HTTPException(status_code=400, detail=message)

    def spawn_generation(session: Session, lock: threading.Lock) -> None:
        def runner() -> None:
            with lock:
                generate_proposal(session, transport=transport)
                _maybe_export(session)

        threading.Thread(target=runner, daemon=True).start()

    def _maybe_export(session: Session) -> None:
        if settings.export_dir and session.state == APPROVED:
            out = Path(settings.export_dir)
            out.mkdir(parents=True, exist_ok=True)
            save_session(session, out / f"{session.id}.json")

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/corpus")
    def corpus() -> list[dict]:
        return [
            {
                "id": s.id,
                "instruction": s.instruction,
                "category": s.category,
                "checks": len(s.checks),
                "objects": s.scene.labels(),
            }
            for s in samples.values()
        ]

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        if body.sample_id is not None:
            sample = samples.get(body.sample_id)
            if sample is None:
                raise HTTPException(status_code=404, detail=f"unknown sample {body.sample_id!r}")
            instruction = body.instruction or sample.instruction
            scene = sample.scene
            traj = generate_trajectory(sample.traj_spec)
            fixture_id = sample.fixture_id or sample.id
        else:
            if not body.instruction or not body.instruction.strip():
                raise bad_request("field 'instruction' is required")
            if body.scene is None or body.trajectory is None:
                raise bad_request("fields 'scene' and 'trajectory' are required without sample_id")
            instruction = body.instruction
            try:
                scene = Scene.from_dict(body.scene)
                traj = Trajectory.from_dict(body.trajectory)
            except (ValueError, TypeError, KeyError) as exc:
                raise bad_request(f"invalid scene/trajectory: {exc}") from None
            fixture_id = body.fixture_id
        session = new_session(
            instruction, scene, traj, settings.session_config(), fixture_id=fixture_id
        )
        lock = store.add(session)
        spawn_generation(session, lock)
        return session_view(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        session, lock = store.get(session_id)
        with lock:
            return session_view(session)

    @app.post("/api/sessions/{session_id}/verdict")
    def post_verdict(session_id: str, body: VerdictBody) -> dict:
        session, lock = store.get(session_id)
        if not lock.acquire(blocking=False):
            # generation still running; the client is acting on stale state
            raise HTTPException(status_code=409, detail="session is busy generating")
        try:
            if session.state != PROPOSED:
                raise HTTPException(
                    status_code=409, detail=f"no pending proposal (state {session.state!r})"
                )
            if not body.approve and (body.feedback is None or not body.feedback.strip()):
                raise bad_request("field 'feedback' is required when approve is false")
            record_verdict(session, approve=body.approve, feedback=body.feedback)
            _maybe_export(session)
            view = session_view(session)
        finally:
            lock.release()
        if session.state == AWAITING_LLM:
            spawn_generation(session, lock)
        return view

    @app.post("/api/eval")
    def eval_endpoint(body: EvalBody) -> dict:
        if body.llm not in ("mock", "live"):
            raise bad_request("field 'llm' must be 'mock' or 'live'")
        llm_config = LlmConfig(
            transport=body.llm,
            endpoint=settings.llm.endpoint,
            model=settings.llm.model,
            temperature=settings.llm.temperature,
            fixtures_dir=settings.llm.fixtures_dir,
        )
        with eval_lock:
            report = run_eval(
                list(samples.values()), llm_config, parallelism=max(1, body.parallelism)
            )
        return report.to_dict()

    if settings.static_dir and Path(settings.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=settings.static_dir, html=True), name="ui")

    return app
