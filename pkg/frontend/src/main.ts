// DOM entry point: wires the canvas, the control row, the hover tooltip,
// and the error banner to the Explorer controller. The service base URL
// is the single piece of configuration, read from ?service=... with a
// localhost default.

import { ServiceClient, type Meta, type RegionEntry } from "./api.js";
import { Explorer, type Tooltip } from "./controller.js";
import { renderRegions } from "./render.js";
import { clampViewport, fitViewport, panBy, screenToWorld, zoomAt,
         type Viewport } from "./viewport.js";

const BASE_URL =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8080";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const canvas = el<HTMLCanvasElement>("map");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  const banner = el<HTMLDivElement>("banner");
  const tooltip = el<HTMLDivElement>("tooltip");
  const thresholdInput = el<HTMLInputElement>("threshold");
  const thresholdValue = el<HTMLSpanElement>("threshold-value");
  const topkInput = el<HTMLInputElement>("topk");
  const topkValue = el<HTMLSpanElement>("topk-value");
  const measureSelect = el<HTMLSelectElement>("measure");
  const scaleSelect = el<HTMLSelectElement>("scale");
  const statsLine = el<HTMLSpanElement>("stats");

  const client = new ServiceClient(BASE_URL);
  let meta: Meta;
  try {
    meta = await client.meta();
  } catch (err) {
    banner.textContent = `service unreachable at ${BASE_URL}: ${String(err)}`;
    banner.hidden = false;
    return;
  }

  statsLine.textContent =
    `${meta.metric} / ${meta.mode}, n=${meta.n}, k=${meta.k}, ` +
    `events=${meta.events}, lambda=${meta.lambda}`;
  for (const m of meta.measures_available) {
    const opt = document.createElement("option");
    opt.value = m;
    opt.textContent = m;
    measureSelect.appendChild(opt);
  }

  let viewport: Viewport = fitViewport(meta.bbox, canvas.width, canvas.height);
  let regions: RegionEntry[] = [];

  const redraw = () => {
    renderRegions(ctx, canvas.width, canvas.height, regions, viewport, {
      scale: scaleSelect.value === "log" ? "log" : "linear",
      outline: meta.metric === "l2",
    });
  };

  const explorer = new Explorer(client, {
    onRegions: (rs) => {
      regions = rs;
      banner.hidden = true;
      redraw();
    },
    onTooltip: (tip: Tooltip | null) => {
      if (tip === null) {
        tooltip.hidden = true;
        return;
      }
      const ids = tip.rnn.length ? tip.rnn.join(", ") : "∅";
      tooltip.textContent = `{${ids}} / ${tip.influence}`;
      tooltip.hidden = false;
    },
    onBanner: (msg) => {
      banner.hidden = msg === null;
      if (msg !== null) banner.textContent = msg;
    },
  });

  const settle = (fn: () => void) => fn(); // sliders fire on "change" (settled)

  thresholdInput.addEventListener("input", () => {
    thresholdValue.textContent = thresholdInput.value;
  });
  thresholdInput.addEventListener("change", () => settle(() => {
    void explorer.setControls({ threshold: Number(thresholdInput.value) });
  }));
  topkInput.addEventListener("input", () => {
    topkValue.textContent = topkInput.value === "0" ? "all" : topkInput.value;
  });
  topkInput.addEventListener("change", () => settle(() => {
    const v = Number(topkInput.value);
    void explorer.setControls({ topK: v === 0 ? null : v });
  }));
  measureSelect.addEventListener("change", () => settle(() => {
    void explorer.setControls({ measure: measureSelect.value });
  }));
  scaleSelect.addEventListener("change", redraw);

  canvas.addEventListener("mousemove", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const sx = ev.clientX - rect.left;
    const sy = ev.clientY - rect.top;
    tooltip.style.left = `${ev.clientX + 14}px`;
    tooltip.style.top = `${ev.clientY + 14}px`;
    const [wx, wy] = screenToWorld(viewport, canvas.width, canvas.height, sx, sy);
    explorer.hover(wx, wy);
  });
  canvas.addEventListener("mouseleave", () => explorer.hoverLeave());

  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = canvas.getBoundingClientRect();
    viewport = zoomAt(viewport, canvas.width, canvas.height,
                      ev.clientX - rect.left, ev.clientY - rect.top,
                      ev.deltaY < 0 ? 1.2 : 1 / 1.2, meta.bbox);
    redraw();
  }, { passive: false });

  let dragging: { x: number; y: number } | null = null;
  canvas.addEventListener("mousedown", (ev) => {
    dragging = { x: ev.clientX, y: ev.clientY };
  });
  window.addEventListener("mouseup", () => { dragging = null; });
  window.addEventListener("mousemove", (ev) => {
    if (!dragging) return;
    viewport = panBy(viewport, ev.clientX - dragging.x, ev.clientY - dragging.y,
                     meta.bbox, canvas.width, canvas.height);
    dragging = { x: ev.clientX, y: ev.clientY };
    redraw();
  });

  viewport = clampViewport(viewport, meta.bbox, canvas.width, canvas.height);
  await explorer.refetch();
}

void start();
