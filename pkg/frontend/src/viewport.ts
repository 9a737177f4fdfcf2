// World <-> screen mapping with pan/zoom kept inside the padded data bbox.
// World y grows upward, canvas y grows downward, hence the flip.

import type { Bbox } from "./api.js";

export interface Viewport {
  cx: number; // world center
  cy: number;
  scale: number; // pixels per world unit
}

const PAD = 0.05; // fraction of bbox extent allowed past the edge
const MAX_ZOOM_IN = 256; // relative to the fitted scale

export function fitViewport(bbox: Bbox, width: number, height: number): Viewport {
  const [xLo, xHi, yLo, yHi] = bbox;
  const w = Math.max(xHi - xLo, 1e-9);
  const h = Math.max(yHi - yLo, 1e-9);
  const scale = Math.min(width / w, height / h) * (1 - 2 * PAD);
  return { cx: (xLo + xHi) / 2, cy: (yLo + yHi) / 2, scale };
}

export function worldToScreen(vp: Viewport, width: number, height: number,
                              x: number, y: number): [number, number] {
  return [width / 2 + (x - vp.cx) * vp.scale,
          height / 2 - (y - vp.cy) * vp.scale];
}

export function screenToWorld(vp: Viewport, width: number, height: number,
                              sx: number, sy: number): [number, number] {
  return [vp.cx + (sx - width / 2) / vp.scale,
          vp.cy - (sy - height / 2) / vp.scale];
}

export function clampViewport(vp: Viewport, bbox: Bbox, width: number,
                              height: number): Viewport {
  const fitted = fitViewport(bbox, width, height);
  const scale = Math.min(Math.max(vp.scale, fitted.scale),
                         fitted.scale * MAX_ZOOM_IN);
  const [xLo, xHi, yLo, yHi] = bbox;
  const padX = (xHi - xLo) * PAD;
  const padY = (yHi - yLo) * PAD;
  return {
    cx: Math.min(Math.max(vp.cx, xLo - padX), xHi + padX),
    cy: Math.min(Math.max(vp.cy, yLo - padY), yHi + padY),
    scale,
  };
}

export function zoomAt(vp: Viewport, width: number, height: number,
                       sx: number, sy: number, factor: number,
                       bbox: Bbox): Viewport {
  const [wx, wy] = screenToWorld(vp, width, height, sx, sy);
  const scale = vp.scale * factor;
  // keep the world point under the cursor fixed on screen
  const cx = wx - (sx - width / 2) / scale;
  const cy = wy + (sy - height / 2) / scale;
  return clampViewport({ cx, cy, scale }, bbox, width, height);
}

export function panBy(vp: Viewport, dxPx: number, dyPx: number,
                      bbox: Bbox, width: number, height: number): Viewport {
  return clampViewport(
    { cx: vp.cx - dxPx / vp.scale, cy: vp.cy + dyPx / vp.scale, scale: vp.scale },
    bbox, width, height);
}
