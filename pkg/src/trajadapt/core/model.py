"""Trajectory and scene data model plus the JSON file formats.

A trajectory is an ordered sequence of waypoints, each carrying a world-frame
position in meters and a scalar path speed in m/s.  A scene is a set of
labeled objects with 3D positions and an optional prose description of the
environment.  Both types are immutable once constructed and safe to share
across threads.

File formats:
    trajectory: {"waypoints": [[x, y, z, v], ...]}
    scene:      {"objects": [{"label": str, "position": [x, y, z]}, ...],
                 "description": str (optional)}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Waypoint:
    """One trajectory sample: position (m) and scalar speed (m/s)."""

    x: float
    y: float
    z: float
    v: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "v"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"waypoint {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.v < 0:
            raise ValueError(f"waypoint speed must be >= 0, got {self.v}")

    @property
    def position(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_row(self) -> list[float]:
        return [self.x, self.y, self.z, self.v]


@dataclass(frozen=True)
class Trajectory:
    """Ordered waypoints; at least two are required."""

    waypoints: tuple[Waypoint, ...]

    def __post_init__(self) -> None:
        wps = tuple(self.waypoints)
        if len(wps) < 2:
            raise ValueError(f"trajectory needs at least 2 waypoints, got {len(wps)}")
        for wp in wps:
            if not isinstance(wp, Waypoint):
                raise TypeError(f"expected Waypoint, got {type(wp).__name__}")
        object.__setattr__(self, "waypoints", wps)

    def __len__(self) -> int:
        return len(self.waypoints)

    def positions(self) -> np.ndarray:
        """(N, 3) array of positions."""
        return np.array([[w.x, w.y, w.z] for w in self.waypoints], dtype=float)

    def speeds(self) -> np.ndarray:
        """(N,) array of speeds."""
        return np.array([w.v for w in self.waypoints], dtype=float)

    @classmethod
    def from_arrays(cls, positions: np.ndarray, speeds: np.ndarray) -> "Trajectory":
        positions = np.asarray(positions, dtype=float)
        speeds = np.asarray(speeds, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise ValueError(f"positions must be (N, 3), got {positions.shape}")
        if speeds.shape != (positions.shape[0],):
            raise ValueError("speeds length must match positions")
        return cls(tuple(Waypoint(p[0], p[1], p[2], s) for p, s in zip(positions, speeds)))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "Trajectory":
        wps = []
        for row in rows:
            row = list(row)
            if len(row) != 4:
                raise ValueError(f"waypoint row must have 4 numbers, got {len(row)}")
            wps.append(Waypoint(*row))
        return cls(tuple(wps))

    def to_rows(self) -> list[list[float]]:
        return [w.as_row() for w in self.waypoints]

    def to_dict(self) -> dict:
        return {"waypoints": self.to_rows()}

    @classmethod
    def from_dict(cls, data: dict) -> "Trajectory":
        if not isinstance(data, dict) or "waypoints" not in data:
            raise ValueError("trajectory file must be an object with a 'waypoints' key")
        return cls.from_rows(data["waypoints"])


@dataclass(frozen=True)
class SceneObject:
    """A labeled object in the environment."""

    label: str
    position: tuple[float, float, float]

    def __post_init__(self) -> None:
        if not self.label or not self.label.strip():
            raise ValueError("object label must be nonempty")
        object.__setattr__(self, "label", self.label.strip().lower())
        pos = tuple(float(c) for c in self.position)
        if len(pos) != 3 or not all(math.isfinite(c) for c in pos):
            raise ValueError(f"object position must be a finite 3-vector, got {self.position!r}")
        object.__setattr__(self, "position", pos)


@dataclass(frozen=True)
class Scene:
    """Labeled objects plus an optional prose description."""

    objects: tuple[SceneObject, ...] = ()
    description: str | None = None

    def __post_init__(self) -> None:
        objs = tuple(self.objects)
        labels = [o.label for o in objs]
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise ValueError(f"duplicate object labels in scene: {', '.join(dupes)}")
        object.__setattr__(self, "objects", objs)

    def find(self, label: str) -> SceneObject | None:
        """Case-insensitive label lookup."""
        needle = label.strip().lower()
        for obj in self.objects:
            if obj.label == needle:
                return obj
        return None

    def labels(self) -> list[str]:
        return [o.label for o in self.objects]

    def to_dict(self) -> dict:
        data: dict = {
            "objects": [{"label": o.label, "position": list(o.position)} for o in self.objects]
        }
        if self.description is not None:
            data["description"] = self.description
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Scene":
        if not isinstance(data, dict):
            raise ValueError("scene file must be a JSON object")
        objs = []
        for entry in data.get("objects", []):
            objs.append(SceneObject(entry["label"], tuple(entry["position"])))
        return cls(tuple(objs), data.get("description"))


class BlendMode(Enum):
    """How a translation offset tapers along arc length.

    UNIFORM moves every waypoint by the full offset; FIX_START ramps the
    offset in linearly from zero at the start; FIX_GOAL ramps it out to zero
    at the goal; FIX_BOTH applies the 4*s*(1-s) bump that pins both ends.
    """

    UNIFORM = "uniform"
    FIX_START = "fix_start"
    FIX_GOAL = "fix_goal"
    FIX_BOTH = "fix_both"

    @classmethod
    def from_name(cls, name: str) -> "BlendMode":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown blend mode {name!r}; expected one of: {valid}") from None


def load_trajectory(path: str | Path) -> Trajectory:
    with open(path, encoding="utf-8") as fh:
        return Trajectory.from_dict(json.load(fh))


def save_trajectory(traj: Trajectory, path: str | Path) -> None:
    Path(path).write_text(json.dumps(traj.to_dict(), indent=2) + "\n", encoding="utf-8")


def load_scene(path: str | Path) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return Scene.from_dict(json.load(fh))


def save_scene(scene: Scene, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scene.to_dict(), indent=2) + "\n", encoding="utf-8")
