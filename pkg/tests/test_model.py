from __future__ import annotations

import json
import math

import pytest

from trajadapt.core import (
    BlendMode,
    Scene,
    SceneObject,
    Trajectory,
    Waypoint,
    load_scene,
    load_trajectory,
    save_scene,
    save_trajectory,
)


def test_waypoint_rejects_nonfinite_and_negative_speed():
    with pytest.raises(ValueError):
        Waypoint(math.nan, 0, 0, 1)
    with pytest.raises(ValueError):
        Waypoint(0, math.inf, 0, 1)
    with pytest.raises(ValueError):
        Waypoint(0, 0, 0, -0.1)


def test_trajectory_needs_two_waypoints():
    with pytest.raises(ValueError):
        Trajectory((Waypoint(0, 0, 0, 1),))


def test_scene_rejects_duplicate_labels():
    with pytest.raises(ValueError, match="box"):
        Scene((SceneObject("box", (0, 0, 0)), SceneObject("Box", (1, 0, 0))))


def test_scene_find_is_case_insensitive():
    scene = Scene((SceneObject("Box", (1, 2, 3)),))
    assert scene.find("BOX").position == (1.0, 2.0, 3.0)
    assert scene.find("sofa") is None


def test_blend_mode_parsing():
    assert BlendMode.from_name("fix_both") is BlendMode.FIX_BOTH
    with pytest.raises(ValueError):
        BlendMode.from_name("diagonal")


def test_trajectory_file_round_trip(tmp_path):
    traj = Trajectory.from_rows([[0, 0, 0, 1], [1, 2, 3, 0.5]])
    path = tmp_path / "traj.json"
    save_trajectory(traj, path)
    raw = json.loads(path.read_text())
    assert raw == {"waypoints": [[0.0, 0.0, 0.0, 1.0], [1.0, 2.0, 3.0, 0.5]]}
    assert load_trajectory(path) == traj


def test_scene_file_round_trip(tmp_path):
    scene = Scene((SceneObject("box", (1, 2, 0)),), description="a box on the floor")
    path = tmp_path / "scene.json"
    save_scene(scene, path)
    assert load_scene(path) == scene
    bare = Scene((SceneObject("box", (1, 2, 0)),))
    assert "description" not in bare.to_dict()


def test_malformed_trajectory_rows():
    with pytest.raises(ValueError):
        Trajectory.from_rows([[0, 0, 0], [1, 1, 1]])
    with pytest.raises(ValueError):
        Trajectory.from_dict({"points": []})
