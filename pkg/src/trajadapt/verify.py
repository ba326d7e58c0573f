"""Machine-checkable instruction compliance.

Each check is a small geometric or kinematic predicate over (original,
adapted, scene).  Shape- and direction-sensitive checks resample both
trajectories to a fixed count first so the verdict does not depend on how
many waypoints an adaptation added or removed.  Region-based speed checks
deliberately fail when no waypoint lies in the region: a vacuous pass would
hide an adaptation that moved the trajectory out from under its own
constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable

import numpy as np

from .core import Scene, Trajectory, discrete_frechet, resample, roughness

RESAMPLE_COUNT = 100


@dataclass(frozen=True)
class CheckSpec:
    """Base for all check variants; subclasses set `type` and fields."""

    type = "base"

    def to_dict(self) -> dict:
        data = {"type": self.type}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            data[f.name] = value
        return data


@dataclass(frozen=True)
class StartFixed(CheckSpec):
    tol: float
    type = "start_fixed"


@dataclass(frozen=True)
class GoalFixed(CheckSpec):
    tol: float
    type = "goal_fixed"


@dataclass(frozen=True)
class GoalDisplaced(CheckSpec):
    dir: tuple[float, float, float]
    amount: float
    tol: float
    type = "goal_displaced"


@dataclass(frozen=True)
class DirectionalShift(CheckSpec):
    dir: tuple[float, float, float]
    min_amount: float
    type = "directional_shift"


@dataclass(frozen=True)
class MinClearance(CheckSpec):
    label: str
    d: float
    tol: float
    type = "min_clearance"


@dataclass(frozen=True)
class MaxSpeedWithin(CheckSpec):
    label: str
    radius: float
    vmax: float
    type = "max_speed_within"


@dataclass(frozen=True)
class MinSpeedWithin(CheckSpec):
    label: str
    radius: float
    vmin: float
    type = "min_speed_within"


@dataclass(frozen=True)
class SpeedReducedWithin(CheckSpec):
    label: str
    radius: float
    type = "speed_reduced_within"


@dataclass(frozen=True)
class SpeedIncreasedWithin(CheckSpec):
    label: str
    radius: float
    type = "speed_increased_within"


@dataclass(frozen=True)
class StopsAtEnd(CheckSpec):
    vtol: float
    type = "stops_at_end"


@dataclass(frozen=True)
class TruncatedNear(CheckSpec):
    label: str
    tol: float
    type = "truncated_near"


@dataclass(frozen=True)
class Smoothness(CheckSpec):
    max_roughness: float
    type = "smoothness"


@dataclass(frozen=True)
class ShapeSimilarity(CheckSpec):
    eps_rel: float
    type = "shape_similarity"


CHECK_TYPES: dict[str, type] = {
    cls.type: cls
    for cls in (
        StartFixed,
        GoalFixed,
        GoalDisplaced,
        DirectionalShift,
        MinClearance,
        MaxSpeedWithin,
        MinSpeedWithin,
        SpeedReducedWithin,
        SpeedIncreasedWithin,
        StopsAtEnd,
        TruncatedNear,
        Smoothness,
        ShapeSimilarity,
    )
}


def check_from_dict(data: dict) -> CheckSpec:
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("check must be an object with a 'type' field")
    kind = data["type"]
    cls = CHECK_TYPES.get(kind)
    if cls is None:
        raise ValueError(f"unknown check type {kind!r}")
    kwargs = {}
    for f in fields(cls):
        if f.name not in data:
            raise ValueError(f"check {kind!r} is missing field {f.name!r}")
        value = data[f.name]
        if f.name == "dir":
            value = tuple(float(c) for c in value)
        kwargs[f.name] = value
    spec = cls(**kwargs)
    _validate(spec)
    return spec


def _validate(spec: CheckSpec) -> None:
    for name in ("tol", "vtol", "max_roughness", "eps_rel", "d", "radius", "vmax", "vmin"):
        if hasattr(spec, name) and getattr(spec, name) < 0:
            raise ValueError(f"{spec.type}.{name} must be >= 0")
    if hasattr(spec, "dir"):
        vec = np.asarray(spec.dir, dtype=float)
        if vec.shape != (3,) or float(np.linalg.norm(vec)) == 0.0:
            raise ValueError(f"{spec.type}.dir must be a nonzero 3-vector")
    if hasattr(spec, "radius") and getattr(spec, "radius") <= 0:
        raise ValueError(f"{spec.type}.radius must be > 0")


@dataclass(frozen=True)
class CheckResult:
    spec: CheckSpec
    passed: bool
    measured: float | None

    def to_dict(self) -> dict:
        return {"check": self.spec.to_dict(), "passed": self.passed, "measured": self.measured}


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counts(self) -> tuple[int, int]:
        return sum(1 for r in self.results if r.passed), len(self.results)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "results": [r.to_dict() for r in self.results]}


def _object_position(scene: Scene, label: str) -> np.ndarray:
    obj = scene.find(label)
    if obj is None:
        raise ValueError(f"unknown scene label: {label!r}")
    return np.asarray(obj.position, dtype=float)


def evaluate(
    original: Trajectory,
    adapted: Trajectory,
    scene: Scene,
    checks: list[CheckSpec] | tuple[CheckSpec, ...],
) -> Report:
    """Evaluate every check, preserving order; raises only for config errors."""
    unknown = sorted(
        {
            getattr(c, "label")
            for c in checks
            if hasattr(c, "label") and scene.find(getattr(c, "label")) is None
        }
    )
    if unknown:
        raise ValueError(f"unknown scene label(s): {', '.join(unknown)}")

    orig_k = resample(original, RESAMPLE_COUNT)
    adap_k = resample(adapted, RESAMPLE_COUNT)
    results = []
    for spec in checks:
        handler: Callable = _HANDLERS[spec.type]
        passed, measured = handler(spec, original, adapted, scene, orig_k, adap_k)
        results.append(CheckResult(spec, bool(passed), measured))
    return Report(tuple(results))


def _check_start_fixed(spec, original, adapted, scene, orig_k, adap_k):
    dist = float(np.linalg.norm(adapted.positions()[0] - original.positions()[0]))
    return dist <= spec.tol, dist


def _check_goal_fixed(spec, original, adapted, scene, orig_k, adap_k):
    dist = float(np.linalg.norm(adapted.positions()[-1] - original.positions()[-1]))
    return dist <= spec.tol, dist


def _check_goal_displaced(spec, original, adapted, scene, orig_k, adap_k):
    d_hat = np.asarray(spec.dir, dtype=float)
    d_hat = d_hat / np.linalg.norm(d_hat)
    target = original.positions()[-1] + spec.amount * d_hat
    dist = float(np.linalg.norm(adapted.positions()[-1] - target))
    return dist <= spec.tol, dist


def _check_directional_shift(spec, original, adapted, scene, orig_k, adap_k):
    d_hat = np.asarray(spec.dir, dtype=float)
    d_hat = d_hat / np.linalg.norm(d_hat)
    shift = float((adap_k.positions() @ d_hat).mean() - (orig_k.positions() @ d_hat).mean())
    return shift >= spec.min_amount, shift


def _check_min_clearance(spec, original, adapted, scene, orig_k, adap_k):
    center = _object_position(scene, spec.label)
    dist = float(np.linalg.norm(adapted.positions() - center, axis=1).min())
    return dist >= spec.d - spec.tol, dist


def _speeds_within(traj: Trajectory, center: np.ndarray, radius: float) -> np.ndarray:
    mask = np.linalg.norm(traj.positions() - center, axis=1) <= radius
    return traj.speeds()[mask]


def _check_max_speed_within(spec, original, adapted, scene, orig_k, adap_k):
    inside = _speeds_within(adapted, _object_position(scene, spec.label), spec.radius)
    if inside.size == 0:
        return False, None
    worst = float(inside.max())
    return worst <= spec.vmax, worst


def _check_min_speed_within(spec, original, adapted, scene, orig_k, adap_k):
    inside = _speeds_within(adapted, _object_position(scene, spec.label), spec.radius)
    if inside.size == 0:
        return False, None
    worst = float(inside.min())
    return worst >= spec.vmin, worst


def _check_speed_reduced_within(spec, original, adapted, scene, orig_k, adap_k):
    center = _object_position(scene, spec.label)
    before = _speeds_within(original, center, spec.radius)
    after = _speeds_within(adapted, center, spec.radius)
    if before.size == 0 or after.size == 0:
        return False, None
    delta = float(after.mean() - before.mean())
    return delta < 0.0, delta


def _check_speed_increased_within(spec, original, adapted, scene, orig_k, adap_k):
    center = _object_position(scene, spec.label)
    before = _speeds_within(original, center, spec.radius)
    after = _speeds_within(adapted, center, spec.radius)
    if before.size == 0 or after.size == 0:
        return False, None
    delta = float(after.mean() - before.mean())
    return delta > 0.0, delta


def _check_stops_at_end(spec, original, adapted, scene, orig_k, adap_k):
    v_last = float(adapted.speeds()[-1])
    return v_last <= spec.vtol, v_last


def _check_truncated_near(spec, original, adapted, scene, orig_k, adap_k):
    center = _object_position(scene, spec.label)
    closest_orig = float(np.linalg.norm(original.positions() - center, axis=1).min())
    end_dist = float(np.linalg.norm(adapted.positions()[-1] - center))
    return end_dist <= closest_orig + spec.tol, end_dist


def _check_smoothness(spec, original, adapted, scene, orig_k, adap_k):
    value = roughness(adap_k)
    return value <= spec.max_roughness, value


def _check_shape_similarity(spec, original, adapted, scene, orig_k, adap_k):
    span = original.positions().max(axis=0) - original.positions().min(axis=0)
    diagonal = float(np.linalg.norm(span))
    distance = discrete_frechet(orig_k, adap_k)
    return distance <= spec.eps_rel * diagonal, distance


_HANDLERS = {
    "start_fixed": _check_start_fixed,
    "goal_fixed": _check_goal_fixed,
    "goal_displaced": _check_goal_displaced,
    "directional_shift": _check_directional_shift,
    "min_clearance": _check_min_clearance,
    "max_speed_within": _check_max_speed_within,
    "min_speed_within": _check_min_speed_within,
    "speed_reduced_within": _check_speed_reduced_within,
    "speed_increased_within": _check_speed_increased_within,
    "stops_at_end": _check_stops_at_end,
    "truncated_near": _check_truncated_near,
    "smoothness": _check_smoothness,
    "shape_similarity": _check_shape_similarity,
}
