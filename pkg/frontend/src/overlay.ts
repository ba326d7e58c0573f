import { fitViewport, project } from "./projection.js";
import type { Plane, SessionView, TrajectoryFile } from "./types.js";

export const ORIGINAL_COLOR = "blue";
export const ADAPTED_COLOR = "red";
export const OBJECT_COLOR = "#222222";

type Paint = string | CanvasGradient | CanvasPattern;

/** The slice of CanvasRenderingContext2D the overlay uses; easy to fake in tests. */
export interface Canvas2DLike {
  strokeStyle: Paint;
  fillStyle: Paint;
  lineWidth: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

function projectedPoints(traj: TrajectoryFile, plane: Plane): [number, number][] {
  return traj.waypoints.map((row) => project(row, plane));
}

function strokePolyline(ctx: Canvas2DLike, pts: [number, number][], color: string): void {
  if (pts.length === 0) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(pts[0][0], pts[0][1]);
  for (let i = 1; i < pts.length; i++) {
    ctx.lineTo(pts[i][0], pts[i][1]);
  }
  ctx.stroke();
}

/** Marker radius encodes speed along the adapted path. */
export function speedRadius(v: number, vmax: number): number {
  if (vmax <= 0) return 1.5;
  return 1.5 + 3.5 * (v / vmax);
}

/**
 * Draw the scene: original polyline in blue, adapted (when present) in red
 * with speed-sized markers, labeled object markers, in the chosen plane.
 */
export function renderOverlay(
  ctx: Canvas2DLike,
  width: number,
  height: number,
  view: SessionView,
  plane: Plane,
): void {
  ctx.clearRect(0, 0, width, height);
  const everything: [number, number][] = [...projectedPoints(view.original, plane)];
  if (view.adapted) {
    everything.push(...projectedPoints(view.adapted, plane));
  }
  for (const obj of view.scene.objects) {
    everything.push(project(obj.position, plane));
  }
  const mapper = fitViewport(everything, width, height);

  strokePolyline(
    ctx,
    projectedPoints(view.original, plane).map((p) => mapper.toPixel(p)),
    ORIGINAL_COLOR,
  );

  if (view.adapted) {
    const pts = projectedPoints(view.adapted, plane).map((p) => mapper.toPixel(p));
    strokePolyline(ctx, pts, ADAPTED_COLOR);
    const speeds = view.adapted.waypoints.map((row) => row[3]);
    const vmax = Math.max(...speeds, 0);
    ctx.fillStyle = ADAPTED_COLOR;
    pts.forEach(([x, y], i) => {
      ctx.beginPath();
      ctx.arc(x, y, speedRadius(speeds[i], vmax), 0, 2 * Math.PI);
      ctx.fill();
    });
  }

  ctx.font = "12px sans-serif";
  for (const obj of view.scene.objects) {
    const [x, y] = mapper.toPixel(project(obj.position, plane));
    ctx.fillStyle = OBJECT_COLOR;
    ctx.beginPath();
    ctx.arc(x, y, 5, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillText(obj.label, x + 8, y - 6);
  }
}
