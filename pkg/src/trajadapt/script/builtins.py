"""Builtin functions available to adaptation scripts.

Everything a script can call lives in this table: scene/trajectory access,
a few math helpers, and the trajectory transforms, which delegate to the
core implementations on list-encoded `[x, y, z, v]` waypoint rows.  None of
them perform I/O, touch a clock, or draw randomness, which keeps script
execution deterministic and isolated.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Protocol

from ..core import (
    BlendMode,
    Scene,
    Trajectory,
    append_spiral,
    enforce_min_distance,
    radial_rescale,
    scale_speed_near,
    smooth,
    translate_blend,
    truncate_at_nearest,
)

BUILTIN_NAMES = frozenset(
    {
        "get_trajectory",
        "detect_objects",
        "len",
        "range",
        "abs",
        "min",
        "max",
        "sqrt",
        "norm3",
        "dist3",
        "lerp",
        "smooth_trajectory",
        "enforce_min_distance",
        "scale_speed_near",
        "truncate_at_nearest",
        "append_spiral",
        "translate_blend",
        "radial_rescale",
    }
)

# one-line signatures, used verbatim in the prompt's language section
BUILTIN_SIGNATURES = (
    "detect_objects(object_name)",
    "get_trajectory()",
    "len(xs)",
    "range(stop) | range(start, stop) | range(start, stop, step)",
    "abs(x)",
    "min(...) / max(...) (two or more numbers, or one nonempty list of numbers)",
    "sqrt(x)",
    "norm3(a)",
    "dist3(a, b)",
    "lerp(a, b, t)",
    "smooth_trajectory(t, window)",
    'translate_blend(t, [dx, dy, dz], mode)  # mode: "uniform" | "fix_start" | "fix_goal" | "fix_both"',
    "radial_rescale(t, center, factor, preserve_endpoints)",
    "enforce_min_distance(t, center, min_distance)",
    "scale_speed_near(t, center, radius, factor, absolute)",
    "truncate_at_nearest(t, center, ramp)",
    "append_spiral(t, max_radius, turns, n_points)",
)


class Context(Protocol):
    """What builtins need from the interpreter."""

    max_list_len: int

    def charge(self, steps: int = 1) -> None: ...

    def fail(self, kind: str, message: str) -> Any: ...


def make_builtins(scene: Scene, traj: Trajectory, ctx: Context) -> dict[str, Callable]:
    def need_number(value, what: str) -> float:
        if isinstance(value, bool) or not isinstance(value, float):
            ctx.fail("type", f"{what} must be a number, got {_type_name(value)}")
        return value

    def need_int(value, what: str) -> int:
        num = need_number(value, what)
        rounded = round(num)
        if abs(num - rounded) > 1e-9:
            ctx.fail("type", f"{what} must be an integer, got {num}")
        return int(rounded)

    def need_list(value, what: str) -> list:
        if not isinstance(value, list):
            ctx.fail("type", f"{what} must be a list, got {_type_name(value)}")
        return value

    def need_vec3(value, what: str) -> list[float]:
        vec = need_list(value, what)
        if len(vec) != 3:
            ctx.fail("type", f"{what} must be a 3-element list, got length {len(vec)}")
        return [need_number(c, f"{what}[{i}]") for i, c in enumerate(vec)]

    def need_bool(value, what: str) -> bool:
        if not isinstance(value, bool):
            ctx.fail("type", f"{what} must be True or False, got {_type_name(value)}")
        return value

    def need_traj(value, what: str) -> Trajectory:
        rows = need_list(value, what)
        try:
            return Trajectory.from_rows(
                [[need_number(c, f"{what} waypoint component") for c in need_list(row, f"{what} row")] for row in rows]
            )
        except ValueError as exc:
            return ctx.fail("type", f"{what} is not a valid trajectory: {exc}")

    def traj_rows(result: Trajectory) -> list:
        ctx.charge(len(result))
        return [list(w.as_row()) for w in result.waypoints]

    def core_call(fn, *args):
        try:
            return fn(*args)
        except ValueError as exc:
            return ctx.fail("type", str(exc))

    # --- scene / trajectory access ---

    def bi_get_trajectory() -> list:
        ctx.charge(len(traj))
        return [list(w.as_row()) for w in traj.waypoints]

    def bi_detect_objects(name):
        if not isinstance(name, str):
            ctx.fail("type", "detect_objects() takes an object name string")
        found = scene.find(name)
        if found is None:
            return None
        return [found.position[0], found.position[1], found.position[2]]

    # --- generic helpers ---

    def bi_len(value):
        if isinstance(value, (list, str)):
            return float(len(value))
        return ctx.fail("type", f"len() takes a list or string, got {_type_name(value)}")

    def bi_range(*args):
        if not 1 <= len(args) <= 3:
            ctx.fail("type", "range() takes 1 to 3 arguments")
        nums = [need_int(a, "range() argument") for a in args]
        if len(nums) == 1:
            start, stop, step = 0, nums[0], 1
        elif len(nums) == 2:
            start, stop, step = nums[0], nums[1], 1
        else:
            start, stop, step = nums
        if step == 0:
            ctx.fail("type", "range() step must not be zero")
        count = max(0, math.ceil((stop - start) / step))
        if count > ctx.max_list_len:
            ctx.fail("budget", f"list size limit exceeded: range of {count} elements")
        ctx.charge(count)
        return [float(v) for v in range(start, stop, step)]

    def bi_abs(value):
        return abs(need_number(value, "abs() argument"))

    def _min_max(args, picker, name):
        if len(args) == 1:
            values = need_list(args[0], f"{name}() argument")
            if not values:
                ctx.fail("type", f"{name}() of an empty list")
            return picker(need_number(v, f"{name}() element") for v in values)
        if len(args) >= 2:
            return picker(need_number(v, f"{name}() argument") for v in args)
        return ctx.fail("type", f"{name}() needs arguments")

    def bi_min(*args):
        return _min_max(args, min, "min")

    def bi_max(*args):
        return _min_max(args, max, "max")

    def bi_sqrt(value):
        num = need_number(value, "sqrt() argument")
        if num < 0:
            ctx.fail("numeric", f"sqrt() of negative number {num}")
        return math.sqrt(num)

    def bi_norm3(vec):
        x, y, z = need_vec3(vec, "norm3() argument")
        return math.sqrt(x * x + y * y + z * z)

    def bi_dist3(a, b):
        ax, ay, az = need_vec3(a, "dist3() first argument")
        bx, by, bz = need_vec3(b, "dist3() second argument")
        dx, dy, dz = ax - bx, ay - by, az - bz
        return math.sqrt(dx * dx + dy * dy + dz * dz)

    def bi_lerp(a, b, t):
        av = need_vec3(a, "lerp() first argument")
        bv = need_vec3(b, "lerp() second argument")
        tt = need_number(t, "lerp() parameter")
        return [av[i] + (bv[i] - av[i]) * tt for i in range(3)]

    # --- trajectory transforms (delegating to core) ---

    def bi_smooth_trajectory(t, window):
        result = core_call(smooth, need_traj(t, "smooth_trajectory()"), need_int(window, "window"))
        return traj_rows(result)

    def bi_translate_blend(t, offset, mode):
        if not isinstance(mode, str):
            ctx.fail("type", "translate_blend() mode must be a string")
        blend = core_call(BlendMode.from_name, mode)
        result = core_call(
            translate_blend,
            need_traj(t, "translate_blend()"),
            need_vec3(offset, "offset"),
            blend,
        )
        return traj_rows(result)

    def bi_radial_rescale(t, center, factor, preserve):
        result = core_call(
            radial_rescale,
            need_traj(t, "radial_rescale()"),
            need_vec3(center, "center"),
            need_number(factor, "factor"),
            need_bool(preserve, "preserve_endpoints"),
        )
        return traj_rows(result)

    def bi_enforce_min_distance(t, center, d):
        result = core_call(
            enforce_min_distance,
            need_traj(t, "enforce_min_distance()"),
            need_vec3(center, "center"),
            need_number(d, "min distance"),
        )
        return traj_rows(result)

    def bi_scale_speed_near(t, center, radius, factor, absolute):
        result = core_call(
            scale_speed_near,
            need_traj(t, "scale_speed_near()"),
            need_vec3(center, "center"),
            need_number(radius, "radius"),
            need_number(factor, "factor"),
            need_bool(absolute, "absolute"),
        )
        return traj_rows(result)

    def bi_truncate_at_nearest(t, center, ramp):
        result = core_call(
            truncate_at_nearest,
            need_traj(t, "truncate_at_nearest()"),
            need_vec3(center, "center"),
            need_int(ramp, "ramp"),
        )
        return traj_rows(result)

    def bi_append_spiral(t, max_radius, turns, n_points):
        result = core_call(
            append_spiral,
            need_traj(t, "append_spiral()"),
            need_number(max_radius, "max_radius"),
            need_number(turns, "turns"),
            need_int(n_points, "n_points"),
        )
        return traj_rows(result)

    return {
        "get_trajectory": bi_get_trajectory,
        "detect_objects": bi_detect_objects,
        "len": bi_len,
        "range": bi_range,
        "abs": bi_abs,
        "min": bi_min,
        "max": bi_max,
        "sqrt": bi_sqrt,
        "norm3": bi_norm3,
        "dist3": bi_dist3,
        "lerp": bi_lerp,
        "smooth_trajectory": bi_smooth_trajectory,
        "translate_blend": bi_translate_blend,
        "radial_rescale": bi_radial_rescale,
        "enforce_min_distance": bi_enforce_min_distance,
        "scale_speed_near": bi_scale_speed_near,
        "truncate_at_nearest": bi_truncate_at_nearest,
        "append_spiral": bi_append_spiral,
    }


def _type_name(value) -> str:
    if value is None:
        return "None"
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, float):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, list):
        return "list"
    return type(value).__name__
