// Contract tests against a real service instance on the worst-case n=3
// fixture: top-k=1 draws exactly one region, an over-the-max threshold
// draws zero, and hovering a region's representative point shows the ids
// /region returns. Skipped when no python interpreter can be spawned.

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api.js";
import { Explorer, type Tooltip } from "../src/controller.js";
import { renderRegions } from "../src/render.js";
import { fitViewport } from "../src/viewport.js";
import { ManualScheduler, recordingContext } from "./helpers.js";

const REPO_ROOT = fileURLToPath(new URL("../..", import.meta.url));
const W = 320;
const H = 320;

let child: ChildProcess | null = null;
let client: ServiceClient | null = null;
let skipReason = "";

function startService(): Promise<string> {
  return new Promise((resolve, reject) => {
    const proc = spawn("python3",
      ["-m", "rnnheat.cli", "serve", "--worst-case", "3", "--port", "0"],
      { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] });
    child = proc;
    let out = "";
    let err = "";
    const timer = setTimeout(() => {
      reject(new Error(`service did not come up; stderr: ${err.slice(0, 400)}`));
    }, 45_000);
    proc.stdout!.on("data", (chunk: Buffer) => {
      out += chunk.toString();
      const m = out.match(/serving on (http:\/\/[^\s]+)/);
      if (m) {
        clearTimeout(timer);
        resolve(m[1]);
      }
    });
    proc.stderr!.on("data", (chunk: Buffer) => { err += chunk.toString(); });
    proc.on("error", (e) => {
      clearTimeout(timer);
      reject(e);
    });
    proc.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early (${code}); ${err.slice(0, 400)}`));
    });
  });
}

beforeAll(async () => {
  try {
    const url = await startService();
    client = new ServiceClient(url.replace(/\/$/, ""));
  } catch (e) {
    skipReason = `service unavailable: ${e instanceof Error ? e.message : e}`;
  }
});

afterAll(() => {
  child?.kill();
});

describe("worst-case n=3 service contract", () => {
  it("meta reports the known fixture shape", async (ctx) => {
    if (!client) return ctx.skip(skipReason);
    const meta = await client.meta();
    expect(meta.n).toBe(3);
    expect(meta.lambda).toBe(3);
    expect(meta.metric).toBe("linf");
    expect(meta.measures_available).toContain("size");
  });

  it("top-k=1 draws exactly one region", async (ctx) => {
    if (!client) return ctx.skip(skipReason);
    const meta = await client.meta();
    const res = await client.heatmap({ topk: 1 });
    expect(res.regions.length).toBe(1);
    expect(res.regions[0].rnn).toEqual([1, 2, 3]);
    expect(res.regions[0].influence).toBe(3);
    const ctx2d = recordingContext();
    const drawn = renderRegions(ctx2d, W, H, res.regions,
                                fitViewport(meta.bbox, W, H));
    expect(drawn).toBe(1);
  });

  it("a threshold above the maximum draws zero regions", async (ctx) => {
    if (!client) return ctx.skip(skipReason);
    const meta = await client.meta();
    const res = await client.heatmap({ threshold: meta.lambda + 1 });
    expect(res.regions.length).toBe(0);
    const ctx2d = recordingContext();
    const drawn = renderRegions(ctx2d, W, H, res.regions,
                                fitViewport(meta.bbox, W, H));
    expect(drawn).toBe(0);
    expect(ctx2d.fillRectCalls.length).toBe(1); // background only
  });

  it("hover at a representative point shows the /region ids", async (ctx) => {
    if (!client) return ctx.skip(skipReason);
    const res = await client.heatmap({ topk: 1 });
    const [xLo, xHi, yLo, yHi] = res.regions[0].rects![0];
    const px = (xLo + xHi) / 2;
    const py = (yLo + yHi) / 2;

    const direct = await client.region(px, py);
    expect(direct).not.toBeNull();
    expect(direct!.rnn).toEqual(res.regions[0].rnn);

    const tips: (Tooltip | null)[] = [];
    const shown = new Promise<Tooltip>((resolve) => {
      const explorer = new Explorer(client!, {
        onRegions: () => {},
        onBanner: () => {},
        onTooltip: (tip) => {
          tips.push(tip);
          if (tip) resolve(tip);
        },
      }, new ManualScheduler());
      explorer.hover(px, py);
    });
    const tip = await shown;
    expect(tip.rnn).toEqual(direct!.rnn);
    expect(tip.influence).toBe(direct!.influence);
  });
});
