"""Deterministic waypoint transforms.

These are the reference implementations behind the script interpreter's
trajectory builtins and the measurement kernels used by the compliance
checker.  All functions are pure: they never mutate their inputs and return
new Trajectory values.

Conventions used throughout:

* arc-length parameter s in [0, 1]: cumulative chord length normalized by
  total chord length, with an index-proportional fallback for degenerate
  zero-length inputs;
* blend weights w(s): 1 (uniform), s (fix_start), 1-s (fix_goal) and
  4*s*(1-s) (fix_both), chosen as the simplest profiles that pin the
  required endpoints;
* speed falloff g(rho): 1 inside the unit normalized radius, a half-cosine
  taper on (1, 2), and 0 beyond twice the radius.
"""

from __future__ import annotations

import math

import numpy as np

from .model import BlendMode, Trajectory, Waypoint

_CLEARANCE_ROUNDS = 5


def arc_length_params(traj: Trajectory) -> np.ndarray:
    """Normalized cumulative chord length per waypoint, s[0]=0 and s[-1]=1."""
    pos = traj.positions()
    chords = np.linalg.norm(np.diff(pos, axis=0), axis=1)
    total = float(chords.sum())
    if total == 0.0:
        return np.linspace(0.0, 1.0, len(traj))
    s = np.concatenate(([0.0], np.cumsum(chords))) / total
    s[-1] = 1.0
    return s


def nearest_index(traj: Trajectory, point) -> tuple[int, float]:
    """Index of the waypoint closest to `point` (ties go to the smallest index)."""
    point = np.asarray(point, dtype=float)
    if point.shape != (3,) or not np.all(np.isfinite(point)):
        raise ValueError(f"point must be a finite 3-vector, got {point!r}")
    dists = np.linalg.norm(traj.positions() - point, axis=1)
    idx = int(np.argmin(dists))
    return idx, float(dists[idx])


def smooth(traj: Trajectory, window: int) -> Trajectory:
    """Centered moving average of positions and speeds; endpoints are pinned.

    Near the ends the window shrinks symmetrically to the neighbors that
    exist, which keeps the average centered (and evenly spaced collinear
    input a fixed point).  Output length equals input length.
    """
    window = _require_int(window, "window")
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be an odd integer >= 1, got {window}")
    if window == 1:
        return traj
    pos = traj.positions()
    spd = traj.speeds()
    out_p = pos.copy()
    out_v = spd.copy()
    half = window // 2
    n = len(traj)
    for i in range(1, n - 1):
        h = min(half, i, n - 1 - i)
        out_p[i] = pos[i - h : i + h + 1].mean(axis=0)
        out_v[i] = spd[i - h : i + h + 1].mean()
    return Trajectory.from_arrays(out_p, out_v)


def roughness(traj: Trajectory) -> float:
    """Largest second difference of position, normalized by mean chord length."""
    if len(traj) < 3:
        raise ValueError(f"roughness needs at least 3 waypoints, got {len(traj)}")
    pos = traj.positions()
    chords = np.linalg.norm(np.diff(pos, axis=0), axis=1)
    mean_chord = float(chords.mean())
    if mean_chord == 0.0:
        return 0.0
    second = pos[2:] - 2.0 * pos[1:-1] + pos[:-2]
    return float(np.linalg.norm(second, axis=1).max() / mean_chord)


def resample(traj: Trajectory, n: int) -> Trajectory:
    """Resample to n waypoints at uniform arc-length parameters.

    Positions and speeds are interpolated linearly in s; the first and last
    waypoints of the input are reproduced exactly.
    """
    n = _require_int(n, "n")
    if n < 2:
        raise ValueError(f"resample needs n >= 2, got {n}")
    s_old = arc_length_params(traj)
    s_new = np.linspace(0.0, 1.0, n)
    pos = traj.positions()
    spd = traj.speeds()
    out_p = np.column_stack([np.interp(s_new, s_old, pos[:, k]) for k in range(3)])
    out_v = np.interp(s_new, s_old, spd)
    out_p[0], out_p[-1] = pos[0], pos[-1]
    out_v[0], out_v[-1] = spd[0], spd[-1]
    return Trajectory.from_arrays(out_p, out_v)


def translate_blend(traj: Trajectory, offset, mode: BlendMode) -> Trajectory:
    """Shift positions by `offset` scaled by the blend weight profile.

    Speeds are untouched.  Endpoints pinned by the mode are copied through
    bit-identically.
    """
    offset = np.asarray(offset, dtype=float)
    if offset.shape != (3,) or not np.all(np.isfinite(offset)):
        raise ValueError(f"offset must be a finite 3-vector, got {offset!r}")
    if not isinstance(mode, BlendMode):
        mode = BlendMode.from_name(str(mode))
    s = arc_length_params(traj)
    if mode is BlendMode.UNIFORM:
        w = np.ones_like(s)
    elif mode is BlendMode.FIX_START:
        w = s
    elif mode is BlendMode.FIX_GOAL:
        w = 1.0 - s
    else:
        w = 4.0 * s * (1.0 - s)
    out_p = traj.positions() + w[:, None] * offset
    result = Trajectory.from_arrays(out_p, traj.speeds())
    return _pin_endpoints(
        traj,
        result,
        pin_start=mode in (BlendMode.FIX_START, BlendMode.FIX_BOTH),
        pin_goal=mode in (BlendMode.FIX_GOAL, BlendMode.FIX_BOTH),
    )


def radial_rescale(
    traj: Trajectory, center, factor: float, preserve_endpoints: bool
) -> Trajectory:
    """Scale each waypoint's displacement from `center` by `factor`.

    With preserve_endpoints the displacement is weighted by 4*s*(1-s) so the
    start and goal stay put while the middle moves the most.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (3,) or not np.all(np.isfinite(center)):
        raise ValueError(f"center must be a finite 3-vector, got {center!r}")
    factor = float(factor)
    if not (factor > 0.0) or not math.isfinite(factor):
        raise ValueError(f"factor must be > 0, got {factor}")
    pos = traj.positions()
    disp = (factor - 1.0) * (pos - center)
    if preserve_endpoints:
        s = arc_length_params(traj)
        b = 4.0 * s * (1.0 - s)
    else:
        b = np.ones(len(traj))
    result = Trajectory.from_arrays(pos + b[:, None] * disp, traj.speeds())
    return _pin_endpoints(
        traj, result, pin_start=preserve_endpoints, pin_goal=preserve_endpoints
    )


def enforce_min_distance(traj: Trajectory, center, d: float) -> Trajectory:
    """Push waypoints out of the sphere of radius `d` around `center`.

    Violating waypoints are projected onto the sphere and the result is
    smoothed (window 3); projection and smoothing alternate for up to five
    rounds.  If smoothing keeps dragging points back inside, a final
    projection pass without smoothing settles the guarantee of a minimum
    clearance of d - 1e-6.  A waypoint exactly at the center is pushed along
    +X.  Speeds are untouched.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (3,) or not np.all(np.isfinite(center)):
        raise ValueError(f"center must be a finite 3-vector, got {center!r}")
    d = float(d)
    if d < 0 or not math.isfinite(d):
        raise ValueError(f"min distance must be >= 0, got {d}")
    speeds = traj.speeds()

    def project(pos: np.ndarray) -> np.ndarray:
        out = pos.copy()
        for i in range(len(out)):
            delta = out[i] - center
            dist = float(np.linalg.norm(delta))
            if dist >= d:
                continue
            if dist == 0.0:
                out[i] = center + np.array([d, 0.0, 0.0])
            else:
                out[i] = center + delta * (d / dist)
        return out

    def clear(pos: np.ndarray) -> bool:
        return bool(np.linalg.norm(pos - center, axis=1).min() >= d)

    current = traj
    for _ in range(_CLEARANCE_ROUNDS):
        pos = current.positions()
        if clear(pos):
            return current
        smoothed = smooth(Trajectory.from_arrays(project(pos), speeds), 3)
        current = Trajectory.from_arrays(smoothed.positions(), speeds)
    pos = current.positions()
    if not clear(pos):
        current = Trajectory.from_arrays(project(pos), speeds)
    return current


def scale_speed_near(
    traj: Trajectory, center, radius: float, factor: float, absolute: bool
) -> Trajectory:
    """Adjust speeds near `center` with a smooth cosine falloff.

    With rho the distance normalized by `radius`, the falloff g is 1 for
    rho <= 1, (1 + cos(pi*(rho-1)))/2 for rho in (1, 2) and 0 beyond.  In
    absolute mode `factor` is a target speed blended in by g; otherwise it
    is a multiplier.  Positions are untouched and speeds clamp at 0.
    """
    center = np.asarray(center, dtype=float)
    if center.shape != (3,) or not np.all(np.isfinite(center)):
        raise ValueError(f"center must be a finite 3-vector, got {center!r}")
    radius = float(radius)
    factor = float(factor)
    if not (radius > 0.0) or not math.isfinite(radius):
        raise ValueError(f"radius must be > 0, got {radius}")
    if factor < 0.0 or not math.isfinite(factor):
        raise ValueError(f"factor must be >= 0, got {factor}")
    pos = traj.positions()
    spd = traj.speeds()
    rho = np.linalg.norm(pos - center, axis=1) / radius
    g = np.where(
        rho <= 1.0,
        1.0,
        np.where(rho >= 2.0, 0.0, 0.5 * (1.0 + np.cos(np.pi * (rho - 1.0)))),
    )
    if absolute:
        new_v = spd + g * (factor - spd)
    else:
        new_v = spd * (1.0 + g * (factor - 1.0))
    return Trajectory.from_arrays(pos, np.maximum(new_v, 0.0))


def truncate_at_nearest(traj: Trajectory, center, ramp: int) -> Trajectory:
    """Cut the trajectory at the waypoint nearest `center` and ramp speed to 0.

    The speed of the last min(ramp, k) kept waypoints falls off linearly and
    is exactly 0 at the cut.  If the nearest waypoint is the start, the
    result keeps the first two waypoints with zero speed so it stays a valid
    trajectory.
    """
    ramp = _require_int(ramp, "ramp")
    if ramp < 1:
        raise ValueError(f"ramp must be >= 1, got {ramp}")
    k, _ = nearest_index(traj, center)
    if k == 0:
        first, second = traj.waypoints[0], traj.waypoints[1]
        return Trajectory(
            (
                Waypoint(first.x, first.y, first.z, 0.0),
                Waypoint(second.x, second.y, second.z, 0.0),
            )
        )
    kept = list(traj.waypoints[: k + 1])
    m = min(ramp, k)
    for i in range(k - m, k + 1):
        scale = (k - i) / m
        wp = kept[i]
        kept[i] = Waypoint(wp.x, wp.y, wp.z, wp.v * scale)
    return Trajectory(tuple(kept))


def append_spiral(
    traj: Trajectory, max_radius: float, turns: float, n_points: int
) -> Trajectory:
    """Append an Archimedean spiral around the goal in the goal's z-plane.

    Point j (1-based) sits at angle j*2*pi*turns/n_points and radius
    max_radius*j/n_points, so the last appended point is exactly max_radius
    away from the goal.  Appended speeds equal the goal's speed.
    """
    max_radius = float(max_radius)
    turns = float(turns)
    n_points = _require_int(n_points, "n_points")
    if not (max_radius > 0.0) or not math.isfinite(max_radius):
        raise ValueError(f"max_radius must be > 0, got {max_radius}")
    if not (turns > 0.0) or not math.isfinite(turns):
        raise ValueError(f"turns must be > 0, got {turns}")
    if n_points < 4:
        raise ValueError(f"n_points must be >= 4, got {n_points}")
    goal = traj.waypoints[-1]
    added = []
    for j in range(1, n_points + 1):
        theta = j * 2.0 * math.pi * turns / n_points
        r = max_radius * theta / (2.0 * math.pi * turns)
        added.append(
            Waypoint(
                goal.x + r * math.cos(theta),
                goal.y + r * math.sin(theta),
                goal.z,
                goal.v,
            )
        )
    return Trajectory(traj.waypoints + tuple(added))


def _pin_endpoints(
    original: Trajectory, result: Trajectory, *, pin_start: bool, pin_goal: bool
) -> Trajectory:
    if not (pin_start or pin_goal):
        return result
    wps = list(result.waypoints)
    if pin_start:
        wps[0] = original.waypoints[0]
    if pin_goal:
        wps[-1] = original.waypoints[-1]
    return Trajectory(tuple(wps))


def _require_int(value, name: str) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)
