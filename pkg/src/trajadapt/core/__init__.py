"""Trajectory/scene data model and the deterministic waypoint transforms."""

from .frechet import discrete_frechet
from .model import (
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
from .transforms import (
    append_spiral,
    arc_length_params,
    enforce_min_distance,
    nearest_index,
    radial_rescale,
    resample,
    roughness,
    scale_speed_near,
    smooth,
    translate_blend,
    truncate_at_nearest,
)

__all__ = [
    "BlendMode",
    "Scene",
    "SceneObject",
    "Trajectory",
    "Waypoint",
    "append_spiral",
    "arc_length_params",
    "discrete_frechet",
    "enforce_min_distance",
    "load_scene",
    "load_trajectory",
    "nearest_index",
    "radial_rescale",
    "resample",
    "roughness",
    "save_scene",
    "save_trajectory",
    "scale_speed_near",
    "smooth",
    "translate_blend",
    "truncate_at_nearest",
]
