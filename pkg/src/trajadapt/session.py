"""The review loop as a state machine.

A session walks awaiting_llm -> proposed -> (approved | awaiting_llm ...),
or to failed when generation cannot produce a runnable proposal.  Each round
builds a prompt from the instruction plus all accumulated feedback, asks the
transport for a plan/code pair, and executes the code in the sandbox against
the original trajectory as a preview.  Script and parse failures can be fed
straight back to the model as synthetic feedback ("auto repair") before a
human ever sees them; set the budget to 0 to disable that and keep the loop
strictly human-driven.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .core import Scene, Trajectory
from .llm import (
    FixtureMissError,
    LlmConfig,
    PromptRequest,
    ProposalText,
    RequestContext,
    ResponseParseError,
    TransportError,
    build_prompt,
    make_transport,
    parse_response,
)
from .script import ExecOutcome, SandboxLimits, run_source

AWAITING_LLM = "awaiting_llm"
PROPOSED = "proposed"
APPROVED = "approved"
FAILED = "failed"

VERDICT_PENDING = "pending"
VERDICT_APPROVED = "approved"
VERDICT_FEEDBACK = "feedback"
VERDICT_AUTO_REPAIR = "auto_repair"

AUTO_REPAIR_PREFIX = "EXECUTION ERROR: "


class InvalidStateError(RuntimeError):
    """An operation was applied to a session in the wrong state."""


@dataclass
class Iteration:
    """One LLM round: prompt, response, sandbox outcome and review verdict."""

    prompt: str
    response_raw: str | None = None
    proposal: ProposalText | None = None
    parse_error: str | None = None
    outcome: ExecOutcome | None = None
    verdict: str = VERDICT_PENDING
    verdict_message: str | None = None

    def to_dict(self) -> dict:
        data: dict = {
            "prompt": self.prompt,
            "response": self.response_raw,
            "verdict": self.verdict,
        }
        if self.verdict_message is not None:
            data["verdict_message"] = self.verdict_message
        if self.proposal is not None:
            data["high_level_plan"] = self.proposal.high_level_plan
            data["code"] = self.proposal.code
        if self.parse_error is not None:
            data["parse_error"] = self.parse_error
        if self.outcome is not None:
            if self.outcome.ok:
                data["adapted"] = self.outcome.modified.to_dict()
            else:
                err = self.outcome.error
                data["error"] = {"kind": err.kind, "message": err.message, "line": err.line}
        return data


@dataclass(frozen=True)
class SessionConfig:
    llm: LlmConfig = field(default_factory=LlmConfig)
    auto_repair_budget: int = 1
    max_iterations: int = 8
    limits: SandboxLimits = field(default_factory=SandboxLimits)

    def __post_init__(self) -> None:
        if self.auto_repair_budget < 0:
            raise ValueError("auto_repair_budget must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass
class Session:
    id: str
    instruction: str
    scene: Scene
    original: Trajectory
    config: SessionConfig
    fixture_id: str | None = None
    iterations: list[Iteration] = field(default_factory=list)
    state: str = AWAITING_LLM
    error: str | None = None

    def feedback_entries(self) -> tuple[str, ...]:
        """Human feedback and auto-repair errors, in the order they happened."""
        entries = []
        for it in self.iterations:
            if it.verdict == VERDICT_FEEDBACK and it.verdict_message:
                entries.append(it.verdict_message)
            elif it.verdict == VERDICT_AUTO_REPAIR and it.verdict_message:
                entries.append(AUTO_REPAIR_PREFIX + it.verdict_message)
        return tuple(entries)

    def latest_iteration(self) -> Iteration | None:
        return self.iterations[-1] if self.iterations else None

    def latest_plan(self) -> str | None:
        for it in reversed(self.iterations):
            if it.proposal is not None:
                return it.proposal.high_level_plan
        return None

    def adapted_trajectory(self) -> Trajectory | None:
        """The latest successful preview (the final result once approved)."""
        for it in reversed(self.iterations):
            if it.outcome is not None and it.outcome.ok:
                return it.outcome.modified
        return None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "instruction": self.instruction,
            "scene": self.scene.to_dict(),
            "original": self.original.to_dict(),
            "fixture_id": self.fixture_id,
            "state": self.state,
            "error": self.error,
            "iterations": [it.to_dict() for it in self.iterations],
        }


def new_session(
    instruction: str,
    scene: Scene,
    traj: Trajectory,
    config: SessionConfig | None = None,
    *,
    session_id: str | None = None,
    fixture_id: str | None = None,
) -> Session:
    """Create a session in awaiting_llm state without contacting the LLM."""
    if not instruction or not instruction.strip():
        raise ValueError("instruction must be nonempty")
    return Session(
        id=session_id or uuid.uuid4().hex[:12],
        instruction=instruction.strip(),
        scene=scene,
        original=traj,
        config=config or SessionConfig(),
        fixture_id=fixture_id,
    )


def start(
    instruction: str,
    scene: Scene,
    traj: Trajectory,
    config: SessionConfig | None = None,
    *,
    transport=None,
    session_id: str | None = None,
    fixture_id: str | None = None,
) -> Session:
    """Create a session and run the first generation round."""
    session = new_session(
        instruction, scene, traj, config, session_id=session_id, fixture_id=fixture_id
    )
    return generate_proposal(session, transport=transport)


def generate_proposal(session: Session, *, transport=None) -> Session:
    """Run LLM rounds until a proposal executes or budgets run out.

    Never raises for transport, parse or script failures: they land on the
    session as state=failed with the error recorded.
    """
    if session.state != AWAITING_LLM:
        raise InvalidStateError(f"cannot generate in state {session.state!r}")
    transport = transport or make_transport(session.config.llm)
    repairs_left = session.config.auto_repair_budget
    while True:
        if len(session.iterations) >= session.config.max_iterations:
            session.state = FAILED
            session.error = f"iteration cap of {session.config.max_iterations} reached"
            return session
        request = PromptRequest(
            instruction=session.instruction,
            scene=session.scene,
            feedback_history=session.feedback_entries(),
        )
        prompt = build_prompt(request)
        context = RequestContext(
            sample_id=session.fixture_id or session.id,
            iteration=len(session.iterations),
        )
        try:
            raw = transport.complete(prompt, context)
        except (TransportError, FixtureMissError) as exc:
            session.state = FAILED
            session.error = str(exc)
            return session

        iteration = Iteration(prompt=prompt, response_raw=raw)
        failure: str | None = None
        try:
            iteration.proposal = parse_response(raw)
        except ResponseParseError as exc:
            iteration.parse_error = str(exc)
            failure = f"the previous response could not be parsed: {exc}"
        else:
            iteration.outcome = run_source(
                iteration.proposal.code,
                session.scene,
                session.original,
                session.config.limits,
            )
            if not iteration.outcome.ok:
                failure = f"the previous code failed: {iteration.outcome.error}"
        session.iterations.append(iteration)

        if failure is None:
            session.state = PROPOSED
            return session
        if repairs_left > 0:
            repairs_left -= 1
            iteration.verdict = VERDICT_AUTO_REPAIR
            iteration.verdict_message = failure
            continue
        session.state = FAILED
        session.error = failure
        return session


def record_verdict(session: Session, *, approve: bool, feedback: str | None = None) -> Session:
    """Record the verdict without contacting the LLM.

    Approval finalizes the session; feedback moves it back to awaiting_llm,
    leaving the next generation round to the caller (the service runs it on
    a background thread, `submit_verdict` runs it inline).
    """
    if session.state != PROPOSED:
        raise InvalidStateError(f"cannot submit a verdict in state {session.state!r}")
    last = session.iterations[-1]
    if approve:
        last.verdict = VERDICT_APPROVED
        session.state = APPROVED
        return session
    if not feedback or not feedback.strip():
        raise ValueError("feedback text is required when not approving")
    last.verdict = VERDICT_FEEDBACK
    last.verdict_message = feedback.strip()
    session.state = AWAITING_LLM
    return session


def submit_verdict(
    session: Session,
    *,
    approve: bool,
    feedback: str | None = None,
    transport=None,
) -> Session:
    """Record the reviewer's verdict; feedback triggers another round."""
    record_verdict(session, approve=approve, feedback=feedback)
    if session.state == AWAITING_LLM:
        return generate_proposal(session, transport=transport)
    return session


def save_session(session: Session, path: str | Path) -> None:
    """Write the full session record (for audit and replay)."""
    Path(path).write_text(
        json.dumps(session.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
