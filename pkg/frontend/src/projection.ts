import type { Plane } from "./types.js";

const AXES: Record<Plane, [number, number]> = {
  XY: [0, 1],
  XZ: [0, 2],
  YZ: [1, 2],
};

export function project(point: number[], plane: Plane): [number, number] {
  const [a, b] = AXES[plane];
  return [point[a], point[b]];
}

export interface Mapper {
  toPixel(uv: [number, number]): [number, number];
}

/**
 * Fit all projected points into a canvas, preserving aspect ratio and
 * flipping the vertical axis so "up" renders upward.
 */
export function fitViewport(
  points: [number, number][],
  width: number,
  height: number,
  pad = 24,
): Mapper {
  let minU = Infinity;
  let maxU = -Infinity;
  let minV = Infinity;
  let maxV = -Infinity;
  for (const [u, v] of points) {
    minU = Math.min(minU, u);
    maxU = Math.max(maxU, u);
    minV = Math.min(minV, v);
    maxV = Math.max(maxV, v);
  }
  if (!Number.isFinite(minU)) {
    minU = minV = 0;
    maxU = maxV = 1;
  }
  const spanU = Math.max(maxU - minU, 1e-9);
  const spanV = Math.max(maxV - minV, 1e-9);
  const scale = Math.min((width - 2 * pad) / spanU, (height - 2 * pad) / spanV);
  const offsetX = (width - scale * spanU) / 2;
  const offsetY = (height - scale * spanV) / 2;
  return {
    toPixel([u, v]) {
      const x = offsetX + (u - minU) * scale;
      const y = height - (offsetY + (v - minV) * scale);
      return [x, y];
    },
  };
}
