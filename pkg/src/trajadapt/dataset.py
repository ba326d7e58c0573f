"""Instruction corpus, seeded trajectory generators and the batch runner.

The corpus is a JSONL file, one sample per line: an instruction, a scene,
a generator spec for the initial trajectory, the compliance checks the
adapted trajectory must satisfy, and (for mock runs) the fixture id of the
canned LLM response.  The shipped corpus lives in ``data/corpus.jsonl``
inside the package.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Scene, Trajectory
from .session import PROPOSED, SessionConfig, start, submit_verdict
from .llm import LlmConfig, make_transport
from .verify import CheckSpec, Report, check_from_dict, evaluate

CATEGORIES = ("cartesian", "speed", "object_relative", "numeric", "compound")

TRAJ_KINDS = ("line", "arc", "zigzag")


def default_corpus_path() -> Path:
    return Path(__file__).resolve().parent / "data" / "corpus.jsonl"


class CorpusError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class TrajSpec:
    """Seeded generator spec for an initial trajectory."""

    kind: str
    start: tuple[float, float, float]
    goal: tuple[float, float, float]
    n: int
    v0: float = 1.0
    noise_std: float = 0.0
    seed: int = 0
    sag: float | None = None  # arc only: peak offset at mid-arc
    amplitude: float | None = None  # zigzag only
    periods: float | None = None  # zigzag only

    def __post_init__(self) -> None:
        if self.kind not in TRAJ_KINDS:
            raise ValueError(f"kind must be one of {TRAJ_KINDS}, got {self.kind!r}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.v0 < 0 or self.noise_std < 0:
            raise ValueError("v0 and noise_std must be >= 0")
        if self.kind == "arc" and self.sag is None:
            raise ValueError("arc spec needs 'sag'")
        if self.kind == "zigzag" and (self.amplitude is None or self.periods is None):
            raise ValueError("zigzag spec needs 'amplitude' and 'periods'")
        object.__setattr__(self, "start", tuple(float(c) for c in self.start))
        object.__setattr__(self, "goal", tuple(float(c) for c in self.goal))

    def to_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "start": list(self.start),
            "goal": list(self.goal),
            "n": self.n,
            "v0": self.v0,
            "noise_std": self.noise_std,
            "seed": self.seed,
        }
        if self.sag is not None:
            data["sag"] = self.sag
        if self.amplitude is not None:
            data["amplitude"] = self.amplitude
        if self.periods is not None:
            data["periods"] = self.periods
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "TrajSpec":
        return cls(
            kind=data["kind"],
            start=tuple(data["start"]),
            goal=tuple(data["goal"]),
            n=int(data["n"]),
            v0=float(data.get("v0", 1.0)),
            noise_std=float(data.get("noise_std", 0.0)),
            seed=int(data.get("seed", 0)),
            sag=data.get("sag"),
            amplitude=data.get("amplitude"),
            periods=data.get("periods"),
        )


def _lateral_direction(chord: np.ndarray) -> np.ndarray:
    """Unit lateral offset direction: +Y projected off the chord, else +Z."""
    norm = np.linalg.norm(chord)
    if norm == 0.0:
        return np.array([0.0, 1.0, 0.0])
    u = chord / norm
    lateral = np.array([0.0, 1.0, 0.0]) - u[1] * u
    lat_norm = np.linalg.norm(lateral)
    if lat_norm < 1e-12:
        lateral = np.array([0.0, 0.0, 1.0]) - u[2] * u
        lat_norm = np.linalg.norm(lateral)
    return lateral / lat_norm


def generate_trajectory(spec: TrajSpec) -> Trajectory:
    """Deterministic trajectory from a spec; endpoints land exactly on spec."""
    start = np.asarray(spec.start, dtype=float)
    goal = np.asarray(spec.goal, dtype=float)
    t = np.linspace(0.0, 1.0, spec.n)
    pos = start[None, :] + t[:, None] * (goal - start)[None, :]
    if spec.kind == "arc":
        lateral = _lateral_direction(goal - start)
        pos = pos + (spec.sag * np.sin(np.pi * t))[:, None] * lateral
    elif spec.kind == "zigzag":
        lateral = _lateral_direction(goal - start)
        pos = pos + (spec.amplitude * np.sin(2.0 * np.pi * spec.periods * t))[:, None] * lateral
    if spec.noise_std > 0 and spec.n > 2:
        rng = np.random.default_rng(spec.seed)
        pos[1:-1] += rng.normal(0.0, spec.noise_std, size=(spec.n - 2, 3))
    pos[0], pos[-1] = start, goal
    return Trajectory.from_arrays(pos, np.full(spec.n, spec.v0))


@dataclass(frozen=True)
class Sample:
    id: str
    instruction: str
    category: str
    scene: Scene
    traj_spec: TrajSpec
    checks: tuple[CheckSpec, ...]
    fixture_id: str | None = None

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"category must be one of {CATEGORIES}, got {self.category!r}")
        if not self.checks:
            raise ValueError("sample needs at least one check")
        object.__setattr__(self, "checks", tuple(self.checks))

    def to_dict(self) -> dict:
        data = {
            "id": self.id,
            "instruction": self.instruction,
            "category": self.category,
            "scene": self.scene.to_dict(),
            "traj_spec": self.traj_spec.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.fixture_id is not None:
            data["fixture_id"] = self.fixture_id
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Sample":
        for key in ("id", "instruction", "category", "scene", "traj_spec", "checks"):
            if key not in data:
                raise ValueError(f"missing field {key!r}")
        return cls(
            id=data["id"],
            instruction=data["instruction"],
            category=data["category"],
            scene=Scene.from_dict(data["scene"]),
            traj_spec=TrajSpec.from_dict(data["traj_spec"]),
            checks=tuple(check_from_dict(c) for c in data["checks"]),
            fixture_id=data.get("fixture_id"),
        )


def load_corpus(path: str | Path) -> list[Sample]:
    """Parse a JSONL corpus, validating ids, categories and check labels."""
    samples: list[Sample] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON: {exc}", line_no) from None
            try:
                sample = Sample.from_dict(record)
            except (ValueError, KeyError, TypeError) as exc:
                raise CorpusError(str(exc), line_no) from None
            if sample.id in seen:
                raise CorpusError(f"duplicate sample id {sample.id!r}", line_no)
            seen.add(sample.id)
            missing = sorted(
                {
                    getattr(c, "label")
                    for c in sample.checks
                    if hasattr(c, "label") and sample.scene.find(getattr(c, "label")) is None
                }
            )
            if missing:
                raise CorpusError(
                    f"check label(s) not in scene: {', '.join(missing)}", line_no
                )
            samples.append(sample)
    return samples


def save_corpus(samples: list[Sample], path: str | Path) -> None:
    lines = [json.dumps(s.to_dict()) for s in samples]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass
class SampleResult:
    id: str
    category: str
    passed: bool
    checks_passed: int
    checks_total: int
    error: str | None = None
    report: Report | None = None
    original: Trajectory | None = None
    adapted: Trajectory | None = None

    def to_dict(self) -> dict:
        data = {
            "id": self.id,
            "category": self.category,
            "passed": self.passed,
            "checks_passed": self.checks_passed,
            "checks_total": self.checks_total,
            "error": self.error,
        }
        if self.report is not None:
            data["checks"] = self.report.to_dict()["results"]
        return data


@dataclass
class EvalReport:
    results: list[SampleResult]
    wall_clock_s: float

    @property
    def success_rate(self) -> float:
        if not self.results:
            return 0.0
        return sum(1 for r in self.results if r.passed) / len(self.results)

    def category_rates(self) -> dict[str, float]:
        rates: dict[str, float] = {}
        for category in CATEGORIES:
            group = [r for r in self.results if r.category == category]
            if group:
                rates[category] = sum(1 for r in group if r.passed) / len(group)
        return rates

    def to_dict(self) -> dict:
        return {
            "success_rate": self.success_rate,
            "category_rates": self.category_rates(),
            "samples": [r.to_dict() for r in self.results],
            "wall_clock_s": self.wall_clock_s,
        }


def run_sample(
    sample: Sample,
    llm_config: LlmConfig,
    session_config: SessionConfig | None = None,
    *,
    transport=None,
    keep_trajectories: bool = False,
) -> SampleResult:
    """Adapt one sample end to end (auto-approving the first success)."""
    session_config = session_config or SessionConfig(llm=llm_config)
    transport = transport or make_transport(llm_config)
    total = len(sample.checks)
    try:
        original = generate_trajectory(sample.traj_spec)
    except ValueError as exc:
        return SampleResult(sample.id, sample.category, False, 0, total, error=str(exc))
    session = start(
        sample.instruction,
        sample.scene,
        original,
        session_config,
        transport=transport,
        session_id=sample.id,
        fixture_id=sample.fixture_id or sample.id,
    )
    if session.state != PROPOSED:
        return SampleResult(
            sample.id,
            sample.category,
            False,
            0,
            total,
            error=session.error or f"session ended in state {session.state}",
            original=original if keep_trajectories else None,
        )
    submit_verdict(session, approve=True)
    adapted = session.adapted_trajectory()
    try:
        report = evaluate(original, adapted, sample.scene, sample.checks)
    except ValueError as exc:
        return SampleResult(sample.id, sample.category, False, 0, total, error=str(exc))
    passed_count, _ = report.counts
    return SampleResult(
        sample.id,
        sample.category,
        report.passed,
        passed_count,
        total,
        report=report,
        original=original if keep_trajectories else None,
        adapted=adapted if keep_trajectories else None,
    )


def run_eval(
    samples: list[Sample],
    llm_config: LlmConfig,
    session_config: SessionConfig | None = None,
    *,
    parallelism: int = 1,
    keep_trajectories: bool = False,
) -> EvalReport:
    """Evaluate the corpus; per-sample errors are recorded, never raised.

    Results are assembled in corpus order regardless of parallelism, and the
    mock transport store is shared read-only across workers.
    """
    started = time.perf_counter()
    transport = make_transport(llm_config)

    def worker(sample: Sample) -> SampleResult:
        try:
            return run_sample(
                sample,
                llm_config,
                session_config,
                transport=transport,
                keep_trajectories=keep_trajectories,
            )
        except Exception as exc:  # defensive: a sample must never sink the batch
            return SampleResult(
                sample.id, sample.category, False, 0, len(sample.checks), error=str(exc)
            )

    if parallelism <= 1:
        results = [worker(s) for s in samples]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(worker, samples))
    return EvalReport(results=results, wall_clock_s=time.perf_counter() - started)
