// Same colormap as the server-side raster: white for zero influence,
// saturating to dark red at the maximum. Keeping the two in sync means a
// canvas frame and a rendered PNG of the same state look alike.

const DARK_RED: [number, number, number] = [139, 0, 0];

export function normalize(value: number, vmax: number, scale: "linear" | "log"): number {
  if (vmax <= 0 || value <= 0) return 0;
  const t = scale === "log" ? Math.log1p(value) / Math.log1p(vmax) : value / vmax;
  return Math.min(Math.max(t, 0), 1);
}

export function heatColor(value: number, vmax: number, scale: "linear" | "log" = "linear"): string {
  const t = normalize(value, vmax, scale);
  const ch = (c: number) => Math.round(255 + (c - 255) * t);
  return `rgb(${ch(DARK_RED[0])},${ch(DARK_RED[1])},${ch(DARK_RED[2])})`;
}
