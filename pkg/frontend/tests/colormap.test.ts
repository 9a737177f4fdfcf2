import { describe, expect, it } from "vitest";

import { heatColor, normalize } from "../src/colormap.js";

describe("colormap", () => {
  it("maps zero influence to white", () => {
    expect(heatColor(0, 8)).toBe("rgb(255,255,255)");
    expect(heatColor(5, 0)).toBe("rgb(255,255,255)"); // degenerate vmax
  });

  it("saturates the maximum to dark red", () => {
    expect(heatColor(8, 8)).toBe("rgb(139,0,0)");
    expect(heatColor(12, 8)).toBe("rgb(139,0,0)"); // clamped above vmax
  });

  it("is monotone in value for both scales", () => {
    for (const scale of ["linear", "log"] as const) {
      let prev = -1;
      for (let v = 0; v <= 10; v++) {
        const t = normalize(v, 10, scale);
        expect(t).toBeGreaterThanOrEqual(prev);
        prev = t;
      }
    }
  });

  it("log scale lifts small values above linear", () => {
    expect(normalize(1, 100, "log")).toBeGreaterThan(normalize(1, 100, "linear"));
  });
});
