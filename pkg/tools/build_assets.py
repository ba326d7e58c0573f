#!/usr/bin/env python3
"""Regenerate the packaged data assets: golden scripts, corpus, fixtures.

The tables in this file are the single source of truth for:

  * data/golden/        fixed input trajectory + scene, one script per
                        trajectory transform, and frozen expected outputs
                        computed from the direct (non-sandboxed) transforms;
  * data/corpus.jsonl   the instruction corpus (samples + checks);
  * data/fixtures/      canned LLM responses per sample and iteration, plus
                        frozen reference trajectories (<id>.ref.json)
                        computed from per-sample reference transforms.

The script is self-checking: every fixture must parse, execute in the
sandbox, agree with its reference transform, and pass its sample's checks;
the final step runs the whole mock eval and requires a 100% success rate.
Run it from the repo root:  python3 tools/build_assets.py
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from trajadapt.core import (  # noqa: E402
    BlendMode,
    Scene,
    SceneObject,
    Trajectory,
    append_spiral,
    enforce_min_distance,
    nearest_index,
    radial_rescale,
    scale_speed_near,
    smooth,
    translate_blend,
    truncate_at_nearest,
)
from trajadapt.dataset import Sample, TrajSpec, generate_trajectory, load_corpus, run_eval  # noqa: E402
from trajadapt.llm import LlmConfig  # noqa: E402
from trajadapt.script import parse, run_source, to_source, tokenize  # noqa: E402
from trajadapt.verify import check_from_dict, evaluate  # noqa: E402

DATA = REPO / "src" / "trajadapt" / "data"
GOLDEN = DATA / "golden"
FIXTURES = DATA / "fixtures"


def rows_close(a: Trajectory, b: Trajectory, tol: float = 1e-9) -> float:
    ra, rb = np.array(a.to_rows()), np.array(b.to_rows())
    assert ra.shape == rb.shape, f"shape mismatch {ra.shape} vs {rb.shape}"
    worst = float(np.abs(ra - rb).max())
    assert worst <= tol, f"max component diff {worst} > {tol}"
    return worst


# --------------------------------------------------------------------------
# golden scripts: one per transform, oracle = the direct core call
# --------------------------------------------------------------------------

def golden_input() -> Trajectory:
    rows = []
    for i in range(14):
        rows.append(
            [
                round(float(i), 6),
                round(3.0 * math.sin(i / 2.0), 6),
                round(0.15 * i, 6),
                round(1.0 + 0.3 * math.sin(i / 3.0), 6),
            ]
        )
    return Trajectory.from_rows(rows)


GOLDEN_SCENE = Scene(
    (
        SceneObject("box", (6.0, 2.0, 0.5)),
        SceneObject("person", (10.0, -2.0, 1.0)),
        SceneObject("sofa", (2.0, 5.0, 0.0)),
    ),
    description="a small indoor test scene",
)

GOLDEN_SCRIPTS = {
    "identity": (
        "modified_trajectory = get_trajectory()\n",
        lambda t, s: t,
    ),
    "smooth_window5": (
        "t = get_trajectory()\nmodified_trajectory = smooth_trajectory(t, 5)\n",
        lambda t, s: smooth(t, 5),
    ),
    "translate_fix_start": (
        't = get_trajectory()\nmodified_trajectory = translate_blend(t, [3, -1, 2], "fix_start")\n',
        lambda t, s: translate_blend(t, (3, -1, 2), BlendMode.FIX_START),
    ),
    "translate_fix_both": (
        't = get_trajectory()\nmodified_trajectory = translate_blend(t, [0, 0, 4], "fix_both")\n',
        lambda t, s: translate_blend(t, (0, 0, 4), BlendMode.FIX_BOTH),
    ),
    "translate_uniform_loop": (
        "t = get_trajectory()\n"
        "for i in range(len(t)):\n"
        "    t[i][0] = t[i][0] + 5\n"
        "modified_trajectory = t\n",
        lambda t, s: translate_blend(t, (5, 0, 0), BlendMode.UNIFORM),
    ),
    "radial_rescale_box": (
        'c = detect_objects("box")\n'
        "t = get_trajectory()\n"
        "modified_trajectory = radial_rescale(t, c, 1.5, True)\n",
        lambda t, s: radial_rescale(t, s.find("box").position, 1.5, True),
    ),
    "enforce_min_distance_box": (
        'c = detect_objects("box")\n'
        "t = get_trajectory()\n"
        "modified_trajectory = enforce_min_distance(t, c, 2.5)\n",
        lambda t, s: enforce_min_distance(t, s.find("box").position, 2.5),
    ),
    "scale_speed_relative": (
        'c = detect_objects("person")\n'
        "t = get_trajectory()\n"
        "modified_trajectory = scale_speed_near(t, c, 4, 0.5, False)\n",
        lambda t, s: scale_speed_near(t, s.find("person").position, 4, 0.5, False),
    ),
    "scale_speed_absolute": (
        'c = detect_objects("box")\n'
        "t = get_trajectory()\n"
        "modified_trajectory = scale_speed_near(t, c, 3, 4, True)\n",
        lambda t, s: scale_speed_near(t, s.find("box").position, 3, 4, True),
    ),
    "truncate_ramp3": (
        'c = detect_objects("sofa")\n'
        "t = get_trajectory()\n"
        "modified_trajectory = truncate_at_nearest(t, c, 3)\n",
        lambda t, s: truncate_at_nearest(t, s.find("sofa").position, 3),
    ),
    "spiral": (
        "t = get_trajectory()\nmodified_trajectory = append_spiral(t, 2, 1, 8)\n",
        lambda t, s: append_spiral(t, 2, 1, 8),
    ),
    "nearest_manual_stop": (
        "t = get_trajectory()\n"
        'c = detect_objects("sofa")\n'
        "k = 0\n"
        "best = dist3([t[0][0], t[0][1], t[0][2]], c)\n"
        "for i in range(len(t)):\n"
        "    d = dist3([t[i][0], t[i][1], t[i][2]], c)\n"
        "    if d < best:\n"
        "        best = d\n"
        "        k = i\n"
        "t = t[0:k + 1]\n"
        "t[k][3] = 0\n"
        "modified_trajectory = t\n",
        lambda t, s: truncate_at_nearest(t, s.find("sofa").position, 1),
    ),
    "speed_loop_halve": (
        "t = get_trajectory()\n"
        "for i in range(len(t)):\n"
        "    t[i][3] = t[i][3] * 0.5\n"
        "modified_trajectory = t\n",
        lambda t, s: scale_speed_near(t, (0, 0, 0), 1e6, 0.5, False),
    ),
}


def build_golden() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    traj = golden_input()
    (GOLDEN / "input.json").write_text(json.dumps(traj.to_dict(), indent=2) + "\n")
    (GOLDEN / "scene.json").write_text(json.dumps(GOLDEN_SCENE.to_dict(), indent=2) + "\n")

    k, _ = nearest_index(traj, GOLDEN_SCENE.find("sofa").position)
    assert k >= 1, "golden scene must keep the manual-stop script away from index 0"

    for name, (source, oracle) in GOLDEN_SCRIPTS.items():
        program = parse(tokenize(source))
        assert parse(tokenize(to_source(program))) == program, f"{name}: print round-trip"
        outcome = run_source(source, GOLDEN_SCENE, traj)
        assert outcome.ok, f"golden {name} failed: {outcome.error}"
        expected = oracle(traj, GOLDEN_SCENE)
        rows_close(outcome.modified, expected)
        (GOLDEN / f"{name}.as").write_text(source)
        (GOLDEN / f"{name}.expected.json").write_text(
            json.dumps(expected.to_dict(), indent=2) + "\n"
        )
    print(f"golden: {len(GOLDEN_SCRIPTS)} scripts")


# --------------------------------------------------------------------------
# corpus samples
# --------------------------------------------------------------------------

LINE_Y = {"kind": "line", "start": [0, 0, 0], "goal": [0, 40, 0], "n": 41, "v0": 1.0}


def _spec(**overrides) -> dict:
    spec = dict(LINE_Y)
    spec.update(overrides)
    return spec


def _scene(*objects, description=None) -> dict:
    data = {"objects": [{"label": label, "position": list(pos)} for label, pos in objects]}
    if description:
        data["description"] = description
    return data


SAMPLES: list[dict] = [
    # ---- cartesian -------------------------------------------------------
    {
        "id": "go_left",
        "instruction": "Go left",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Shift the goal position left (+X).\n"
            "2) Keep the start position the same.\n"
            "3) Blend the shift in gradually along the path so the shape is preserved."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [12, 0, 0], "fix_start")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (12, 0, 0), BlendMode.FIX_START),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [1, 0, 0], "amount": 12, "tol": 1e-6},
            {"type": "directional_shift", "dir": [1, 0, 0], "min_amount": 4},
            {"type": "shape_similarity", "eps_rel": 0.5},
        ],
    },
    {
        "id": "go_right",
        "instruction": "Go right",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Shift the goal position right (-X).\n"
            "2) Keep the start position the same.\n"
            "3) Blend the shift in gradually along the path."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [-10, 0, 0], "fix_start")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (-10, 0, 0), BlendMode.FIX_START),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [-1, 0, 0], "amount": 10, "tol": 1e-6},
            {"type": "directional_shift", "dir": [-1, 0, 0], "min_amount": 3},
        ],
    },
    {
        "id": "move_front",
        "instruction": "Move to the front",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(start=[0, 0, 0], goal=[40, 0, 0]),
        "plan": (
            "1) Front is the +Y direction.\n"
            "2) Move every waypoint forward by the same offset, start and goal included.\n"
            "3) The shape of the trajectory is unchanged."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [0, 8, 0], "uniform")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (0, 8, 0), BlendMode.UNIFORM),
        "checks": [
            {"type": "goal_displaced", "dir": [0, 1, 0], "amount": 8, "tol": 1e-6},
            {"type": "directional_shift", "dir": [0, 1, 0], "min_amount": 7.9},
            {"type": "shape_similarity", "eps_rel": 0.25},
        ],
    },
    {
        "id": "move_top",
        "instruction": "Move to the top",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Top is the +Z direction.\n"
            "2) Raise the whole trajectory uniformly by a fixed offset.\n"
            "3) Keep the shape of the path unchanged."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [0, 0, 6], "uniform")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (0, 0, 6), BlendMode.UNIFORM),
        "checks": [
            {"type": "goal_displaced", "dir": [0, 0, 1], "amount": 6, "tol": 1e-6},
            {"type": "directional_shift", "dir": [0, 0, 1], "min_amount": 5.9},
            {"type": "shape_similarity", "eps_rel": 0.2},
        ],
    },
    {
        "id": "go_bottom",
        "instruction": "Go to the bottom",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(start=[0, 0, 5], goal=[0, 40, 5]),
        "plan": (
            "1) Bottom is the -Z direction; the path currently flies at z = 5.\n"
            "2) Lower the whole trajectory down to the ground plane.\n"
            "3) Keep the shape unchanged."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [0, 0, -5], "uniform")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (0, 0, -5), BlendMode.UNIFORM),
        "checks": [
            {"type": "goal_displaced", "dir": [0, 0, -1], "amount": 5, "tol": 1e-6},
            {"type": "directional_shift", "dir": [0, 0, -1], "min_amount": 4.9},
        ],
    },
    {
        "id": "stay_bottom",
        "instruction": "Stay on the bottom",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(kind="arc", start=[0, 0, 2], goal=[0, 40, 2], sag=3.0),
        "plan": (
            "1) Keep the start and goal positions the same.\n"
            "2) Find the lowest z-coordinate in the current trajectory.\n"
            "3) Move every intermediate waypoint down to that lowest height.\n"
            "4) Smooth the result to avoid abrupt transitions."
        ),
        "code": (
            "t = get_trajectory()\n"
            "minz = t[0][2]\n"
            "for i in range(len(t)):\n"
            "    if t[i][2] < minz:\n"
            "        minz = t[i][2]\n"
            "for i in range(1, len(t) - 1):\n"
            "    t[i][2] = minz\n"
            "modified_trajectory = smooth_trajectory(t, 3)\n"
        ),
        "ref": "_ref_stay_bottom",
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
            {"type": "directional_shift", "dir": [0, 0, -1], "min_amount": 1.5},
            {"type": "smoothness", "max_roughness": 0.01},
        ],
    },
    {
        "id": "spiral_near_goal",
        "instruction": "Execute a spiral path when near the goal position",
        "category": "cartesian",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Keep the existing trajectory up to the goal.\n"
            "2) After the goal, append waypoints tracing a spiral that grows to its maximum radius.\n"
            "3) Keep the appended velocity equal to the goal velocity."
        ),
        "code": (
            "t = get_trajectory()\n"
            "modified_trajectory = append_spiral(t, 3, 2, 24)\n"
        ),
        "ref": lambda t, s: append_spiral(t, 3, 2, 24),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [1, 0, 0], "amount": 3, "tol": 1e-6},
        ],
    },
    # ---- speed -----------------------------------------------------------
    {
        "id": "go_slower",
        "instruction": "Go slower",
        "category": "speed",
        "scene": _scene(("person", (3, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Keep every waypoint position unchanged.\n"
            "2) Scale every velocity down relative to its original value.\n"
            "3) A uniform scale keeps the velocity profile smooth."
        ),
        "code": (
            "t = get_trajectory()\n"
            "for i in range(len(t)):\n"
            "    t[i][3] = t[i][3] * 0.5\n"
            "modified_trajectory = t\n"
        ),
        "ref": lambda t, s: scale_speed_near(t, (0, 0, 0), 1e6, 0.5, False),
        "checks": [
            {"type": "speed_reduced_within", "label": "person", "radius": 30},
            {"type": "max_speed_within", "label": "person", "radius": 30, "vmax": 0.51},
            {"type": "shape_similarity", "eps_rel": 1e-6},
        ],
    },
    {
        "id": "faster_middle",
        "instruction": "Go faster in the middle of the trajectory",
        "category": "speed",
        "scene": _scene(("cone", (0, 20, 0)), description="a cone marks the middle of the course"),
        "traj_spec": _spec(),
        "plan": (
            "1) Find the middle waypoint of the trajectory.\n"
            "2) Raise velocities near that point with a smooth falloff.\n"
            "3) Leave the positions unchanged."
        ),
        "code": (
            "t = get_trajectory()\n"
            "mid = (len(t) - 1) / 2\n"
            "center = [t[mid][0], t[mid][1], t[mid][2]]\n"
            "modified_trajectory = scale_speed_near(t, center, 8, 1.8, False)\n"
        ),
        "ref": "_ref_faster_middle",
        "checks": [
            {"type": "speed_increased_within", "label": "cone", "radius": 8},
            {"type": "min_speed_within", "label": "cone", "radius": 7.9, "vmin": 1.7},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "slower_near_box",
        "instruction": "Go slower when near to the box",
        "category": "speed",
        "scene": _scene(("box", (4, 20, 0)), description="a cardboard box sits right of the path"),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the box.\n"
            "2) Reduce velocity for waypoints near the box with a smooth falloff.\n"
            "3) Keep all positions unchanged."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("box")\n'
            "modified_trajectory = scale_speed_near(t, c, 8, 0.5, False)\n"
        ),
        "ref": lambda t, s: scale_speed_near(t, s.find("box").position, 8, 0.5, False),
        "checks": [
            {"type": "speed_reduced_within", "label": "box", "radius": 8},
            {"type": "max_speed_within", "label": "box", "radius": 8, "vmax": 0.51},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "faster_near_person",
        "instruction": "Go faster in the vicinity of the person",
        "category": "speed",
        "scene": _scene(("person", (-5, 28, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the person.\n"
            "2) Raise velocity for waypoints in the person's vicinity with a smooth falloff.\n"
            "3) Keep all positions unchanged."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("person")\n'
            "modified_trajectory = scale_speed_near(t, c, 10, 1.6, False)\n"
        ),
        "ref": lambda t, s: scale_speed_near(t, s.find("person").position, 10, 1.6, False),
        "checks": [
            {"type": "speed_increased_within", "label": "person", "radius": 10},
            {"type": "min_speed_within", "label": "person", "radius": 6, "vmin": 1.55},
        ],
    },
    {
        "id": "increase_speed_person",
        "instruction": "Increase the speed near the person",
        "category": "speed",
        "scene": _scene(("person", (2, 15, 2))),
        "traj_spec": _spec(
            kind="zigzag", start=[0, 0, 2], goal=[0, 40, 2], amplitude=1.5, periods=3.0
        ),
        "plan": (
            "1) Locate the person.\n"
            "2) Increase velocities near the person relative to the original profile.\n"
            "3) Taper the change smoothly with distance."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("person")\n'
            "modified_trajectory = scale_speed_near(t, c, 9, 1.5, False)\n"
        ),
        "ref": lambda t, s: scale_speed_near(t, s.find("person").position, 9, 1.5, False),
        "checks": [
            {"type": "speed_increased_within", "label": "person", "radius": 9},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    # ---- object_relative ---------------------------------------------------
    {
        "id": "reach_sofa_stop",
        "instruction": "Reach near the sofa and stop",
        "category": "object_relative",
        "scene": _scene(("sofa", (2, 26, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the sofa.\n"
            "2) Find the waypoint closest to the sofa.\n"
            "3) Cut the trajectory there and ramp the velocity down to zero."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("sofa")\n'
            "modified_trajectory = truncate_at_nearest(t, c, 5)\n"
        ),
        "ref": lambda t, s: truncate_at_nearest(t, s.find("sofa").position, 5),
        "checks": [
            {"type": "stops_at_end", "vtol": 1e-9},
            {"type": "truncated_near", "label": "sofa", "tol": 1e-6},
        ],
    },
    {
        "id": "larger_distance_person",
        "instruction": "Walk at a larger distance from the person",
        "category": "object_relative",
        "scene": _scene(("person", (2, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Keep the start and goal positions the same.\n"
            "2) Locate the person and push intermediate waypoints away from them.\n"
            "3) Smooth the result so the shape stays coherent."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("person")\n'
            "t = radial_rescale(t, c, 1.8, True)\n"
            "modified_trajectory = smooth_trajectory(t, 3)\n"
        ),
        "ref": lambda t, s: smooth(radial_rescale(t, s.find("person").position, 1.8, True), 3),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
            {"type": "min_clearance", "label": "person", "d": 3, "tol": 1e-3},
            {"type": "shape_similarity", "eps_rel": 0.4},
        ],
    },
    {
        "id": "stop_near_box",
        "instruction": "Stop when you reach near the box",
        "category": "object_relative",
        "scene": _scene(("box", (3, 24, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Detect the position of the box.\n"
            "2) Retrieve the current trajectory.\n"
            "3) Identify the waypoint closest to the box.\n"
            "4) Stop at that closest point, removing any subsequent points.\n"
            "5) Ramp the velocity smoothly down to zero at the stop."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("box")\n'
            "modified_trajectory = truncate_at_nearest(t, c, 4)\n"
        ),
        "ref": lambda t, s: truncate_at_nearest(t, s.find("box").position, 4),
        "checks": [
            {"type": "stops_at_end", "vtol": 1e-9},
            {"type": "truncated_near", "label": "box", "tol": 1e-6},
        ],
    },
    {
        "id": "closer_sofa",
        "instruction": "Drive closer to the sofa",
        "category": "object_relative",
        "scene": _scene(("sofa", (6, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Keep the start and goal positions the same.\n"
            "2) Locate the sofa and pull intermediate waypoints toward it.\n"
            "3) Preserve the overall shape of the trajectory."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("sofa")\n'
            "modified_trajectory = radial_rescale(t, c, 0.5, True)\n"
        ),
        "ref": lambda t, s: radial_rescale(t, s.find("sofa").position, 0.5, True),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
            {"type": "directional_shift", "dir": [1, 0, 0], "min_amount": 1.5},
        ],
    },
    {
        "id": "further_box",
        "instruction": "Stay further away from box",
        "category": "object_relative",
        "scene": _scene(("box", (-3, 12, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Keep the start and goal positions the same.\n"
            "2) Locate the box and push intermediate waypoints away from it.\n"
            "3) Preserve the overall shape of the trajectory."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("box")\n'
            "modified_trajectory = radial_rescale(t, c, 1.6, True)\n"
        ),
        "ref": lambda t, s: radial_rescale(t, s.find("box").position, 1.6, True),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
            {"type": "min_clearance", "label": "box", "d": 3.8, "tol": 1e-3},
        ],
    },
    # ---- numeric -----------------------------------------------------------
    {
        "id": "go_left_by_20",
        "instruction": "Go left by 20",
        "category": "numeric",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Left is the +X direction.\n"
            "2) Shift the goal position left by exactly 20 units.\n"
            "3) Keep the start fixed and blend the shift gradually along the path."
        ),
        "code": (
            "t = get_trajectory()\n"
            'modified_trajectory = translate_blend(t, [20, 0, 0], "fix_start")\n'
        ),
        "ref": lambda t, s: translate_blend(t, (20, 0, 0), BlendMode.FIX_START),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [1, 0, 0], "amount": 20, "tol": 1e-6},
            {"type": "directional_shift", "dir": [1, 0, 0], "min_amount": 8},
            {"type": "shape_similarity", "eps_rel": 0.6},
        ],
    },
    {
        "id": "keep_10_box",
        "instruction": "Keep at least 10 distance from the box",
        "category": "numeric",
        "scene": _scene(("box", (4, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the box.\n"
            "2) Push every waypoint closer than 10 units out to at least that distance.\n"
            "3) Smooth the detour so the trajectory stays coherent."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("box")\n'
            "modified_trajectory = enforce_min_distance(t, c, 10)\n"
        ),
        "ref": lambda t, s: enforce_min_distance(t, s.find("box").position, 10),
        "checks": [
            {"type": "min_clearance", "label": "box", "d": 10, "tol": 1e-5},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "distance_20_person",
        "instruction": "Walk at a distance of at least 20 from the person",
        "category": "numeric",
        "scene": _scene(("person", (8, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the person.\n"
            "2) Enforce a minimum clearance of 20 units around them.\n"
            "3) Smooth the resulting detour."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("person")\n'
            "modified_trajectory = enforce_min_distance(t, c, 20)\n"
        ),
        "ref": lambda t, s: enforce_min_distance(t, s.find("person").position, 20),
        "checks": [
            {"type": "min_clearance", "label": "person", "d": 20, "tol": 1e-5},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "speed_5_box",
        "instruction": "Traverse at a speed of 5 in the vicinity of the box",
        "category": "numeric",
        "scene": _scene(("box", (3, 25, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the box.\n"
            "2) Set the velocity to the absolute target 5 near the box, tapering smoothly away.\n"
            "3) Keep all positions unchanged."
        ),
        "code": (
            't = get_trajectory()\n'
            'c = detect_objects("box")\n'
            "modified_trajectory = scale_speed_near(t, c, 8, 5, True)\n"
        ),
        "ref": lambda t, s: scale_speed_near(t, s.find("box").position, 8, 5, True),
        "checks": [
            {"type": "min_speed_within", "label": "box", "radius": 8, "vmin": 4.99},
            {"type": "max_speed_within", "label": "box", "radius": 8, "vmax": 5.01},
            {"type": "shape_similarity", "eps_rel": 1e-6},
            {"type": "start_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "further_20_goal",
        "instruction": "Go further by a distance of 20 after reaching the goal",
        "category": "numeric",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Find the goal position and the direction of travel at the goal.\n"
            "2) Append waypoints continuing straight for 20 more units.\n"
            "3) Keep the appended velocity equal to the goal velocity."
        ),
        "code": (
            "t = get_trajectory()\n"
            "g = t[-1]\n"
            "prev = t[-2]\n"
            "d = [g[0] - prev[0], g[1] - prev[1], g[2] - prev[2]]\n"
            "n = norm3(d)\n"
            "u = [d[0] / n, d[1] / n, d[2] / n]\n"
            "for j in range(1, 11):\n"
            "    t.append([g[0] + u[0] * 2 * j, g[1] + u[1] * 2 * j, g[2] + u[2] * 2 * j, g[3]])\n"
            "modified_trajectory = t\n"
        ),
        "ref": "_ref_further_20",
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [0, 1, 0], "amount": 20, "tol": 1e-6},
        ],
    },
    {
        "id": "spiral_radius_2",
        "instruction": "Execute a spiral of max radius 2 after reaching the goal",
        "category": "numeric",
        "scene": _scene(),
        "traj_spec": _spec(),
        "plan": (
            "1) Retrieve the current trajectory and identify the goal position.\n"
            "2) After the goal, append waypoints tracing a spiral that grows to a maximum radius of 2 units.\n"
            "3) Keep the spiral smooth and gradually increasing in radius.\n"
            "4) Maintain the velocity of the goal position for the spiral."
        ),
        "code": (
            "t = get_trajectory()\n"
            "modified_trajectory = append_spiral(t, 2, 1, 16)\n"
        ),
        "ref": lambda t, s: append_spiral(t, 2, 1, 16),
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [1, 0, 0], "amount": 2, "tol": 1e-6},
        ],
    },
    # ---- compound -----------------------------------------------------------
    {
        "id": "person_box_compound",
        "instruction": "Walk at a larger distance from the person, and go slower when near the box",
        "category": "compound",
        "scene": _scene(("person", (-3, 14, 0)), ("box", (4, 28, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the person and the box.\n"
            "2) Push waypoints near the person out to a larger clearance, keeping start and goal fixed.\n"
            "3) Reduce velocity for waypoints near the box with a smooth falloff.\n"
            "4) Keep the rest of the trajectory unchanged."
        ),
        "code": (
            "t = get_trajectory()\n"
            'p = detect_objects("person")\n'
            'b = detect_objects("box")\n'
            "t = enforce_min_distance(t, p, 6)\n"
            "modified_trajectory = scale_speed_near(t, b, 8, 0.5, False)\n"
        ),
        "ref": lambda t, s: scale_speed_near(
            enforce_min_distance(t, s.find("person").position, 6),
            s.find("box").position,
            8,
            0.5,
            False,
        ),
        "checks": [
            {"type": "min_clearance", "label": "person", "d": 6, "tol": 1e-5},
            {"type": "speed_reduced_within", "label": "box", "radius": 8},
            {"type": "max_speed_within", "label": "box", "radius": 7, "vmax": 0.51},
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_fixed", "tol": 1e-9},
        ],
    },
    {
        "id": "left_10_speed_2",
        "instruction": "Go to the left by 10 at a speed of 2",
        "category": "compound",
        "scene": _scene(("pole", (0, 20, 0))),
        "traj_spec": _spec(),
        "plan": (
            "1) Left is the +X direction; shift the goal left by 10, keeping the start fixed.\n"
            "2) Blend the shift gradually along the path.\n"
            "3) Set every velocity to the requested speed of 2."
        ),
        "code": (
            "t = get_trajectory()\n"
            't = translate_blend(t, [10, 0, 0], "fix_start")\n'
            "for i in range(len(t)):\n"
            "    t[i][3] = 2\n"
            "modified_trajectory = t\n"
        ),
        "ref": "_ref_left_10_speed_2",
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [1, 0, 0], "amount": 10, "tol": 1e-6},
            {"type": "min_speed_within", "label": "pole", "radius": 30, "vmin": 1.999},
            {"type": "max_speed_within", "label": "pole", "radius": 30, "vmax": 2.001},
        ],
    },
    {
        "id": "reach_red_mug",
        "instruction": "Shift the trajectory gradually to reach the red mug",
        "category": "compound",
        "scene": _scene(("red_mug", (3, 44, 0)), description="a red mug stands on a table past the goal"),
        "traj_spec": _spec(),
        "plan": (
            "1) Locate the red mug.\n"
            "2) Compute the offset from the current goal to the mug.\n"
            "3) Blend that offset in gradually from the fixed start so the goal lands on the mug."
        ),
        "code": (
            "t = get_trajectory()\n"
            'm = detect_objects("red_mug")\n'
            "g = t[-1]\n"
            "offset = [m[0] - g[0], m[1] - g[1], m[2] - g[2]]\n"
            'modified_trajectory = translate_blend(t, offset, "fix_start")\n'
        ),
        "ref": "_ref_reach_red_mug",
        "checks": [
            {"type": "start_fixed", "tol": 1e-9},
            {"type": "goal_displaced", "dir": [3, 4, 0], "amount": 5, "tol": 1e-6},
            {"type": "directional_shift", "dir": [3, 4, 0], "min_amount": 2},
        ],
    },
]


# reference transforms that are not single core calls

def _ref_stay_bottom(t: Trajectory, s: Scene) -> Trajectory:
    pos = t.positions()
    minz = float(pos[:, 2].min())
    pos[1:-1, 2] = minz
    return smooth(Trajectory.from_arrays(pos, t.speeds()), 3)


def _ref_faster_middle(t: Trajectory, s: Scene) -> Trajectory:
    mid = (len(t) - 1) // 2
    center = t.positions()[mid]
    return scale_speed_near(t, center, 8, 1.8, False)


def _ref_further_20(t: Trajectory, s: Scene) -> Trajectory:
    pos = t.positions()
    goal = pos[-1]
    u = (goal - pos[-2]) / np.linalg.norm(goal - pos[-2])
    rows = t.to_rows()
    v_goal = rows[-1][3]
    for j in range(1, 11):
        p = goal + u * 2.0 * j
        rows.append([p[0], p[1], p[2], v_goal])
    return Trajectory.from_rows(rows)


def _ref_left_10_speed_2(t: Trajectory, s: Scene) -> Trajectory:
    shifted = translate_blend(t, (10, 0, 0), BlendMode.FIX_START)
    return Trajectory.from_arrays(shifted.positions(), np.full(len(shifted), 2.0))


def _ref_reach_red_mug(t: Trajectory, s: Scene) -> Trajectory:
    mug = np.asarray(s.find("red_mug").position)
    offset = mug - t.positions()[-1]
    return translate_blend(t, offset, BlendMode.FIX_START)


_NAMED_REFS = {
    "_ref_stay_bottom": _ref_stay_bottom,
    "_ref_faster_middle": _ref_faster_middle,
    "_ref_further_20": _ref_further_20,
    "_ref_left_10_speed_2": _ref_left_10_speed_2,
    "_ref_reach_red_mug": _ref_reach_red_mug,
}


def _response_text(sample_id: str, plan: str, code: str) -> str:
    """Render the canned response, varying the envelope across samples."""
    payload = {"high_level_plan": plan, "code": code}
    text = json.dumps(payload, indent=2)
    if sample_id in ("slower_near_box", "move_top"):
        return f"```json\n{text}\n```\n"
    if sample_id == "speed_5_box":
        return json.dumps({"high_level_plan": plan, "python_code": code}, indent=2)
    if sample_id == "closer_sofa":
        # legacy single-quoted envelope with the old code key
        return repr({"high_level_plan": plan, "Python code": code})
    return text


def build_corpus() -> list[Sample]:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    samples: list[Sample] = []
    lines: list[str] = []
    for entry in SAMPLES:
        scene = Scene.from_dict(entry["scene"])
        spec = TrajSpec.from_dict(entry["traj_spec"])
        checks = tuple(check_from_dict(c) for c in entry["checks"])
        sample = Sample(
            id=entry["id"],
            instruction=entry["instruction"],
            category=entry["category"],
            scene=scene,
            traj_spec=spec,
            checks=checks,
            fixture_id=entry["id"],
        )
        samples.append(sample)
        lines.append(json.dumps(sample.to_dict()))

        original = generate_trajectory(spec)
        ref_fn = entry["ref"]
        if isinstance(ref_fn, str):
            ref_fn = _NAMED_REFS[ref_fn]
        reference = ref_fn(original, scene)
        ref_report = evaluate(original, reference, scene, checks)
        assert ref_report.passed, _report_failure(sample.id, "reference", ref_report)

        outcome = run_source(entry["code"], scene, original)
        assert outcome.ok, f"{sample.id}: fixture script failed: {outcome.error}"
        rows_close(outcome.modified, reference, tol=1e-9)
        script_report = evaluate(original, outcome.modified, scene, checks)
        assert script_report.passed, _report_failure(sample.id, "script", script_report)

        program = parse(tokenize(entry["code"]))
        assert parse(tokenize(to_source(program))) == program, f"{sample.id}: round-trip"

        (FIXTURES / f"{sample.id}.0.resp.txt").write_text(
            _response_text(sample.id, entry["plan"], entry["code"]), encoding="utf-8"
        )
        (FIXTURES / f"{sample.id}.ref.json").write_text(
            json.dumps(reference.to_dict()) + "\n", encoding="utf-8"
        )

    (DATA / "corpus.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"corpus: {len(samples)} samples")
    return samples


def _report_failure(sample_id: str, stage: str, report) -> str:
    failing = [
        f"{r.spec.type} measured={r.measured}" for r in report.results if not r.passed
    ]
    return f"{sample_id}: {stage} fails checks: {'; '.join(failing)}"


# --------------------------------------------------------------------------
# demo fixtures for the feedback / auto-repair loops
# --------------------------------------------------------------------------

def build_demo_fixtures() -> None:
    # feedback_demo iteration 0: runnable but wrong direction (right, not left)
    bad_plan = (
        "1) Shift the goal position right (-X).\n"
        "2) Keep the start position the same.\n"
        "3) Blend the shift gradually."
    )
    bad_code = (
        "t = get_trajectory()\n"
        'modified_trajectory = translate_blend(t, [-12, 0, 0], "fix_start")\n'
    )
    good_plan = (
        "1) Shift the goal position left (+X), as the reviewer clarified.\n"
        "2) Keep the start position the same.\n"
        "3) Blend the shift gradually."
    )
    good_code = (
        "t = get_trajectory()\n"
        'modified_trajectory = translate_blend(t, [12, 0, 0], "fix_start")\n'
    )
    (FIXTURES / "feedback_demo.0.resp.txt").write_text(
        json.dumps({"high_level_plan": bad_plan, "code": bad_code}, indent=2)
    )
    (FIXTURES / "feedback_demo.1.resp.txt").write_text(
        json.dumps({"high_level_plan": good_plan, "code": good_code}, indent=2)
    )

    # repair_demo iteration 0: parses but hits a runtime name error
    broken_code = "modified_trajectory = translate_blend(missing_variable, [1, 0, 0], \"uniform\")\n"
    (FIXTURES / "repair_demo.0.resp.txt").write_text(
        json.dumps({"high_level_plan": "1) Use a variable that does not exist.", "code": broken_code})
    )
    (FIXTURES / "repair_demo.1.resp.txt").write_text(
        json.dumps({"high_level_plan": good_plan, "code": good_code})
    )

    # parse_fail_demo iteration 0: no JSON object at all
    (FIXTURES / "parse_fail_demo.0.resp.txt").write_text(
        "Sure! Here is a plan: first go left, then smooth the path.\n"
    )
    (FIXTURES / "parse_fail_demo.1.resp.txt").write_text(
        json.dumps({"high_level_plan": good_plan, "code": good_code})
    )

    # a second round for go_left so feedback round-trips work in mock demos
    revised_plan = (
        "1) Apply the reviewer's correction: shift further left (+X).\n"
        "2) Keep the start position the same.\n"
        "3) Blend the larger shift gradually along the path."
    )
    revised_code = (
        "t = get_trajectory()\n"
        'modified_trajectory = translate_blend(t, [16, 0, 0], "fix_start")\n'
    )
    (FIXTURES / "go_left.1.resp.txt").write_text(
        json.dumps({"high_level_plan": revised_plan, "code": revised_code}, indent=2)
    )
    print("demo fixtures: feedback_demo, repair_demo, parse_fail_demo, go_left.1")


def validate_eval(samples: list[Sample]) -> None:
    corpus = load_corpus(DATA / "corpus.jsonl")
    assert len(corpus) == len(samples)
    report = run_eval(corpus, LlmConfig(transport="mock", fixtures_dir=str(FIXTURES)))
    bad = [r for r in report.results if not r.passed]
    assert not bad, "eval failures: " + ", ".join(f"{r.id}({r.error})" for r in bad)
    print(
        f"eval: {len(report.results)} samples, success rate "
        f"{100 * report.success_rate:.1f}%, wall clock {report.wall_clock_s:.2f}s"
    )


def main() -> None:
    build_golden()
    samples = build_corpus()
    build_demo_fixtures()
    validate_eval(samples)
    print("all assets rebuilt and validated")


if __name__ == "__main__":
    main()
