"""Discrete Fréchet distance between waypoint polylines.

Used as the shape-preservation metric: it is insensitive to the number of
waypoints once both curves are resampled, and 0 exactly when the position
sequences coincide.
"""

from __future__ import annotations

import numpy as np

from .model import Trajectory


def discrete_frechet(a: Trajectory, b: Trajectory) -> float:
    """Minimax coupling distance over the two position sequences.

    Standard dynamic program over the (len(a), len(b)) coupling lattice;
    speeds are ignored.
    """
    p = a.positions()
    q = b.positions()
    diff = p[:, None, :] - q[None, :, :]
    # plain sum-of-squares (not BLAS norm) keeps distances bit-identical with
    # scalar reference computations
    dist = np.sqrt((diff**2).sum(axis=2))
    n, m = dist.shape
    table = np.empty((n, m))
    table[0, 0] = dist[0, 0]
    for i in range(1, n):
        table[i, 0] = max(table[i - 1, 0], dist[i, 0])
    for j in range(1, m):
        table[0, j] = max(table[0, j - 1], dist[0, j])
    for i in range(1, n):
        for j in range(1, m):
            reach = min(table[i - 1, j], table[i - 1, j - 1], table[i, j - 1])
            table[i, j] = max(reach, dist[i, j])
    return float(table[-1, -1])
