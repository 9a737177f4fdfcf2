// Canvas drawing of region geometry. Regions arrive as rectangle lists
// (square metrics) or sampled boundary polylines (euclidean); no arc math
// happens here. Returns how many regions were filled so callers can hold
// the drawn count to the service response length.

import type { RegionEntry } from "./api.js";
import { heatColor } from "./colormap.js";
import type { Viewport } from "./viewport.js";
import { worldToScreen } from "./viewport.js";

// the subset of CanvasRenderingContext2D the renderer touches; tests pass
// a recording fake
export interface DrawContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  fill(): void;
  stroke(): void;
}

export interface RenderOptions {
  scale?: "linear" | "log";
  outline?: boolean;
}

export function renderRegions(ctx: DrawContext, width: number, height: number,
                              regions: RegionEntry[], vp: Viewport,
                              opts: RenderOptions = {}): number {
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);
  if (regions.length === 0) return 0;

  const vmax = Math.max(...regions.map((r) => r.influence));
  let drawn = 0;
  for (const region of regions) {
    ctx.fillStyle = heatColor(region.influence, vmax, opts.scale ?? "linear");
    if (region.rects !== undefined) {
      for (const [xLo, xHi, yLo, yHi] of region.rects) {
        const [sx0, sy1] = worldToScreen(vp, width, height, xLo, yLo);
        const [sx1, sy0] = worldToScreen(vp, width, height, xHi, clampTop(yHi, vp, height));
        ctx.fillRect(sx0, sy0, sx1 - sx0, sy1 - sy0);
      }
    } else if (region.polylines !== undefined) {
      for (const line of region.polylines) {
        if (line.length < 3) continue;
        ctx.beginPath();
        const [mx, my] = worldToScreen(vp, width, height, line[0][0], line[0][1]);
        ctx.moveTo(mx, my);
        for (let i = 1; i < line.length; i++) {
          const [lx, ly] = worldToScreen(vp, width, height, line[i][0], line[i][1]);
          ctx.lineTo(lx, ly);
        }
        ctx.closePath();
        ctx.fill();
        if (opts.outline) {
          ctx.strokeStyle = "rgba(0,0,0,0.15)";
          ctx.lineWidth = 1;
          ctx.stroke();
        }
      }
    }
    drawn += 1;
  }
  return drawn;
}

// unbounded faces are exported with huge/infinite y_hi; cap them to the
// top of the screen instead of handing Infinity to the canvas
function clampTop(yHi: number, vp: Viewport, height: number): number {
  if (!Number.isFinite(yHi)) return vp.cy + height / vp.scale;
  return yHi;
}
