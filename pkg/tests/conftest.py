from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from trajadapt.core import Scene, SceneObject, Trajectory, Waypoint

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "trajadapt" / "data"


def line_traj(points, v=1.0):
    """Trajectory from bare (x, y, z) triples at a constant speed."""
    return Trajectory(tuple(Waypoint(x, y, z, v) for x, y, z in points))


def random_traj(rng: np.random.Generator, n=None, scale=10.0, with_speed=True):
    n = int(n if n is not None else rng.integers(2, 12))
    pos = rng.uniform(-scale, scale, size=(n, 3))
    spd = rng.uniform(0.0, 3.0, size=n) if with_speed else np.ones(n)
    return Trajectory.from_arrays(pos, spd)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def box_scene():
    return Scene((SceneObject("box", (1.0, 2.0, 0.0)),))
