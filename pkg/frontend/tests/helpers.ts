// Shared test doubles: a recording canvas context and a manual scheduler.

import type { DrawContext } from "../src/render.js";
import type { Scheduler } from "../src/rate.js";

export interface RecordingContext extends DrawContext {
  fillRectCalls: { x: number; y: number; w: number; h: number; style: string }[];
  fillCalls: number;
  pathPoints: [number, number][];
}

export function recordingContext(): RecordingContext {
  const ctx: RecordingContext = {
    fillStyle: "",
    strokeStyle: "",
    lineWidth: 1,
    fillRectCalls: [],
    fillCalls: 0,
    pathPoints: [],
    clearRect() {},
    fillRect(x, y, w, h) {
      ctx.fillRectCalls.push({ x, y, w, h, style: String(ctx.fillStyle) });
    },
    beginPath() {},
    moveTo(x, y) { ctx.pathPoints.push([x, y]); },
    lineTo(x, y) { ctx.pathPoints.push([x, y]); },
    closePath() {},
    fill() { ctx.fillCalls += 1; },
    stroke() {},
  };
  return ctx;
}

// deterministic time control for the rate limiter
export class ManualScheduler implements Scheduler {
  private t = 0;
  private queue: { at: number; fn: () => void; id: number }[] = [];
  private nextId = 1;

  now(): number { return this.t; }

  setTimeout(fn: () => void, ms: number): unknown {
    const id = this.nextId++;
    this.queue.push({ at: this.t + ms, fn, id });
    return id;
  }

  clearTimeout(handle: unknown): void {
    this.queue = this.queue.filter((q) => q.id !== handle);
  }

  advance(ms: number): void {
    const target = this.t + ms;
    for (;;) {
      const due = this.queue.filter((q) => q.at <= target)
                            .sort((a, b) => a.at - b.at)[0];
      if (!due) break;
      this.queue = this.queue.filter((q) => q.id !== due.id);
      this.t = due.at;
      due.fn();
    }
    this.t = target;
  }
}
