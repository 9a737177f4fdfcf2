"""A one-minute benchmark on modest sizes.

Runs the three rectangle-arrangement algorithms (CREST, its full-rescan
ablation CREST-A, and the grid baseline) over uniform instances and
prints a wall-clock table. The interesting column is the last: the grid
pays for m cells no matter what, while CREST's work follows the output.
Timings use the numba kernels; the first call includes JIT compilation,
which warmup() absorbs.
"""

from __future__ import annotations

import statistics

from rnnheat import kernels
from rnnheat.bench import bench_circles
from rnnheat.geometry import Metric

SIZES = (256, 512, 1024)
RATIO = 8.0
REPS = 3


def _median_wall(fn, circles) -> tuple[float, dict]:
    walls = []
    stats: dict = {}
    for _ in range(REPS):
        stats = fn(circles)
        walls.append(stats["wall_s"] * 1000.0)
    return statistics.median(walls), stats


def main() -> None:
    print("compiling kernels...")
    kernels.warmup()
    print(f"{'n':>6}{'crest ms':>10}{'crest-a ms':>12}{'baseline ms':>13}"
          f"{'k':>8}{'m':>10}{'base/crest':>12}")
    for n in SIZES:
        circles = bench_circles(n, RATIO, 7, "uniform", Metric.LINF)
        crest, cs = _median_wall(
            lambda c: kernels.crest_stats(c, ablation=False), circles)
        ablat, _ = _median_wall(
            lambda c: kernels.crest_stats(c, ablation=True), circles)
        base, bs = _median_wall(kernels.baseline_stats, circles)
        print(f"{n:>6}{crest:>10.1f}{ablat:>12.1f}{base:>13.1f}"
              f"{cs['k']:>8}{bs['m']:>10}{base / crest:>12.1f}x")
    print("\nmedians of", REPS, "runs; the gap widens with n because m")
    print("grows quadratically in the number of squares.")


if __name__ == "__main__":
    main()
