"""Plot output: a dependency-free SVG overlay and matplotlib report figures.

The SVG path is the one the CLI `render` subcommand uses: top-down XY
projection with the original polyline in blue, the adapted one in red and
scene objects as labeled markers.  The matplotlib helpers render the same
overlay (plus a category success chart) as PNG files next to an eval
report; matplotlib is imported lazily so the core library never pays for a
plotting stack.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import Scene, Trajectory

ORIGINAL_COLOR = "blue"
ADAPTED_COLOR = "red"


def _xy_bounds(original: Trajectory, adapted: Trajectory | None, scene: Scene):
    points = [original.positions()[:, :2]]
    if adapted is not None:
        points.append(adapted.positions()[:, :2])
    if scene.objects:
        points.append(np.array([[o.position[0], o.position[1]] for o in scene.objects]))
    allpts = np.vstack(points)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-6)
    pad = 0.08 * span.max()
    return lo - pad, hi + pad


def render_svg(
    original: Trajectory,
    adapted: Trajectory | None,
    scene: Scene,
    *,
    width: int = 640,
    height: int = 480,
) -> str:
    """Top-down XY overlay as an SVG document string."""
    lo, hi = _xy_bounds(original, adapted, scene)
    span = hi - lo

    def to_px(xy) -> tuple[float, float]:
        u = (xy[0] - lo[0]) / span[0] * width
        v = height - (xy[1] - lo[1]) / span[1] * height  # flip so +Y is up
        return round(u, 2), round(v, 2)

    def polyline(traj: Trajectory, color: str) -> str:
        pts = " ".join(f"{u},{v}" for u, v in (to_px(p) for p in traj.positions()[:, :2]))
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}" />'
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white" />',
        polyline(original, ORIGINAL_COLOR),
    ]
    if adapted is not None:
        parts.append(polyline(adapted, ADAPTED_COLOR))
    for obj in scene.objects:
        u, v = to_px(obj.position[:2])
        parts.append(f'<circle cx="{u}" cy="{v}" r="5" fill="black" />')
        parts.append(
            f'<text x="{u + 8}" y="{v - 6}" font-size="12" font-family="sans-serif">'
            f"{obj.label}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_svg(
    original: Trajectory, adapted: Trajectory | None, scene: Scene, path: str | Path
) -> None:
    Path(path).write_text(render_svg(original, adapted, scene), encoding="utf-8")


def save_overlay_png(
    original: Trajectory,
    adapted: Trajectory | None,
    scene: Scene,
    path: str | Path,
    *,
    title: str = "",
) -> None:
    """Matplotlib version of the overlay for eval report figures."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    orig = original.positions()
    ax.plot(orig[:, 0], orig[:, 1], color=ORIGINAL_COLOR, label="original", linewidth=1.8)
    if adapted is not None:
        adap = adapted.positions()
        ax.plot(adap[:, 0], adap[:, 1], color=ADAPTED_COLOR, label="adapted", linewidth=1.8)
    for obj in scene.objects:
        ax.plot(obj.position[0], obj.position[1], "ko", markersize=6)
        ax.annotate(obj.label, (obj.position[0], obj.position[1]),
                    textcoords="offset points", xytext=(6, 6), fontsize=9)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(loc="best", fontsize=8)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_category_chart(category_rates: dict[str, float], path: str | Path) -> None:
    """Bar chart of per-category success rates for an eval report."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.5))
    names = list(category_rates)
    values = [100.0 * category_rates[n] for n in names]
    ax.bar(names, values, color="#4878d0")
    ax.set_ylabel("success rate [%]")
    ax.set_ylim(0, 105)
    for i, value in enumerate(values):
        ax.text(i, value + 1, f"{value:.0f}", ha="center", fontsize=8)
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
