from __future__ import annotations

import math

import numpy as np

from trajadapt.core import Trajectory, discrete_frechet

from conftest import line_traj, random_traj


def brute_force_frechet(p: np.ndarray, q: np.ndarray) -> float:
    """Recursive minimax over all monotone couplings; exponential but exact."""

    def dist(a, b) -> float:
        dx, dy, dz = a[0] - b[0], a[1] - b[1], a[2] - b[2]
        return math.sqrt(dx * dx + dy * dy + dz * dz)

    def go(i: int, j: int, memo: dict) -> float:
        if (i, j) in memo:
            return memo[(i, j)]
        d = dist(p[i], q[j])
        if i == 0 and j == 0:
            best = d
        elif i == 0:
            best = max(go(0, j - 1, memo), d)
        elif j == 0:
            best = max(go(i - 1, 0, memo), d)
        else:
            best = max(
                min(go(i - 1, j, memo), go(i - 1, j - 1, memo), go(i, j - 1, memo)), d
            )
        memo[(i, j)] = best
        return best

    return go(len(p) - 1, len(q) - 1, {})


def test_identical_trajectories_have_zero_distance():
    t = line_traj([(0, 0, 0), (1, 0, 0), (2, 1, 0)])
    assert discrete_frechet(t, t) == 0.0


def test_two_point_offset_pair():
    a = line_traj([(0, 0, 0), (1, 0, 0)])
    b = line_traj([(3, 4, 0), (4, 4, 0)])
    # brute force over all monotone couplings of the 2x2 lattice gives 5
    assert discrete_frechet(a, b) == 5.0


def test_parallel_unit_offset():
    a = line_traj([(0, 0, 0), (1, 0, 0)])
    b = line_traj([(0, 1, 0), (1, 1, 0)])
    assert discrete_frechet(a, b) == 1.0


def test_matches_brute_force_on_random_pairs(rng):
    for _ in range(40):
        a = random_traj(rng, n=rng.integers(2, 7))
        b = random_traj(rng, n=rng.integers(2, 7))
        expect = brute_force_frechet(a.positions(), b.positions())
        assert discrete_frechet(a, b) == expect


def test_symmetry_and_zero_iff_identical(rng):
    for _ in range(25):
        a = random_traj(rng, n=5)
        b = random_traj(rng, n=6)
        assert discrete_frechet(a, b) == discrete_frechet(b, a)
        assert discrete_frechet(a, b) > 0.0
    t = random_traj(rng, n=4)
    same_positions = Trajectory.from_arrays(t.positions(), t.speeds() + 1.0)
    assert discrete_frechet(t, same_positions) == 0.0
