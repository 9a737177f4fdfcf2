"""Dataset generators and the timing/statistics harness.

Suite cells run in child processes so a hung cell can be killed at the
timeout without taking the harness down; timings cover circle-arrangement
processing only (dataset generation and NN computation happen before the
clock starts, since every algorithm consumes the same circles).
"""

from __future__ import annotations

import csv
import json
import statistics
import subprocess
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import Metric, NNCircle, Point, circle_from_bounds
from .nnindex import Client, Dataset, Facility, compute_nn_circles, live_circles

CSV_HEADER = ["algo", "metric", "n", "ratio", "rep", "wall_ms", "labels",
              "regions", "lambda"]
ZIPF_CELLS = 64
_UNIT_SHIFT = 2.0 ** -54


@dataclass
class BenchConfig:
    sizes: list[int]
    ratios: list[float]
    metric: Metric = Metric.LINF
    algorithms: list[str] = field(default_factory=lambda: ["crest"])
    seed: int = 0
    repetitions: int = 1
    distribution: str = "uniform"
    timeout_s: float = 300.0
    workers: int = 1

    def __post_init__(self):
        if any(s < 1 for s in self.sizes) or any(r < 1 for r in self.ratios):
            raise ValueError("sizes and ratios must be >= 1")
        known = {"baseline", "crest_a", "crest", "crest_l2"}
        bad = set(self.algorithms) - known
        if bad:
            raise ValueError(f"unknown algorithms: {sorted(bad)}")
        if self.distribution not in ("uniform", "zipf"):
            raise ValueError(f"unknown distribution: {self.distribution}")


def gen_uniform(n: int, seed: int = 0) -> np.ndarray:
    """n points uniform in the open unit square, deterministic per seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    return (pts + _UNIT_SHIFT) / (1.0 + 2.0 * _UNIT_SHIFT)


def gen_zipf(n: int, skew: float = 0.2, seed: int = 0) -> np.ndarray:
    """Rank-skewed cell occupancy with intra-cell jitter, per coordinate."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if skew < 0:
        raise ValueError("skew must be >= 0")
    rng = np.random.default_rng(seed)
    ranks = np.arange(1, ZIPF_CELLS + 1, dtype=np.float64)
    p = ranks ** -skew
    p /= p.sum()
    cells = rng.choice(ZIPF_CELLS, size=(n, 2), p=p)
    jitter = rng.random((n, 2))
    pts = (cells + jitter) / ZIPF_CELLS
    return (pts + _UNIT_SHIFT) / (1.0 + 2.0 * _UNIT_SHIFT)


def gen_worst_case(n: int) -> list[NNCircle]:
    """n side-n squares, the i-th centered at (i, i): r = n^2 - n + 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    half = n / 2.0
    return [circle_from_bounds(i, i - half, i + half, i - half, i + half)
            for i in range(1, n + 1)]


def gen_distinctness(values) -> list[NNCircle]:
    """Squares with corners (a1,a1)-(ai,ai); duplicates collapse labels."""
    vals = list(values)
    if len(vals) < 2:
        raise ValueError("need at least two values")
    a1 = float(vals[0])
    out = []
    for i, v in enumerate(vals[1:], start=1):
        v = float(v)
        out.append(circle_from_bounds(i, min(a1, v), max(a1, v),
                                      min(a1, v), max(a1, v)))
    return out


def _points_to_dataset(clients: np.ndarray, facilities: np.ndarray) -> Dataset:
    cs = [Client(i, Point(float(x), float(y))) for i, (x, y) in enumerate(clients)]
    fs = [Facility(i, Point(float(x), float(y)))
          for i, (x, y) in enumerate(facilities)]
    return Dataset(cs, fs, mode="bi")


def make_instance(n: int, ratio: float, seed: int,
                  distribution: str = "uniform") -> Dataset:
    """Bichromatic instance: n clients, max(1, n/ratio) facilities."""
    f = max(1, int(round(n / ratio)))
    gen = gen_uniform if distribution == "uniform" else gen_zipf
    if distribution == "uniform":
        clients = gen(n, seed)
        facs = gen(f, seed + 1_000_003)
    else:
        clients = gen_zipf(n, 0.2, seed)
        facs = gen_zipf(f, 0.2, seed + 1_000_003)
    return _points_to_dataset(clients, facs)


def bench_circles(n: int, ratio: float, seed: int, distribution: str,
                  metric: Metric) -> list[NNCircle]:
    """Sweep-ready circles for one suite cell (L1 arrives pre-rotated)."""
    ds = make_instance(n, ratio, seed, distribution)
    if metric is Metric.L1:
        from .nnindex import rotate_dataset
        ds = rotate_dataset(ds)
        circles = compute_nn_circles(ds, Metric.LINF)
    else:
        circles = compute_nn_circles(ds, metric)
    return live_circles(circles)


def _run_cell(algo: str, metric: Metric, n: int, ratio: float, seed: int,
              distribution: str) -> dict:
    """Executed inside the child process; prints nothing, returns stats."""
    from . import kernels

    if algo == "crest_l2":
        from .sweep_l2 import run_crest_l2
        circles = bench_circles(n, ratio, seed, distribution, Metric.L2)
        t0 = time.perf_counter()
        res = run_crest_l2(circles, collect=False)
        wall = time.perf_counter() - t0
        return {"wall_ms": wall * 1000.0, "labels": res.k, "lambda": res.lam}
    mt = metric if metric is not Metric.L2 else Metric.LINF
    circles = bench_circles(n, ratio, seed, distribution, mt)
    kernels.warmup()
    if algo == "baseline":
        stats = kernels.baseline_stats(circles)
        return {"wall_ms": stats["wall_s"] * 1000.0, "labels": stats["m"],
                "lambda": stats["lambda"]}
    stats = kernels.crest_stats(circles, ablation=(algo == "crest_a"))
    return {"wall_ms": stats["wall_s"] * 1000.0, "labels": stats["k"],
            "lambda": stats["lambda"]}


def _child_main(arg: str) -> None:
    spec = json.loads(arg)
    out = _run_cell(spec["algo"], Metric(spec["metric"]), spec["n"],
                    spec["ratio"], spec["seed"], spec["distribution"])
    sys.stdout.write(json.dumps(out) + "\n")


def _spawn_cell(algo: str, cfg: BenchConfig, n: int, ratio: float) -> dict | None:
    spec = json.dumps({"algo": algo, "metric": cfg.metric.value, "n": n,
                       "ratio": ratio, "seed": cfg.seed,
                       "distribution": cfg.distribution})
    try:
        proc = subprocess.run(
            [sys.executable, "-m", "rnnheat.bench", spec],
            capture_output=True, timeout=cfg.timeout_s, text=True)
    except subprocess.TimeoutExpired:
        return None
    if proc.returncode != 0:
        raise RuntimeError(f"bench cell failed: {proc.stderr.strip()}")
    return json.loads(proc.stdout.strip().splitlines()[-1])


def _region_count(cfg: BenchConfig, n: int, ratio: float) -> int | str:
    from . import kernels

    if cfg.metric is Metric.L2:
        if n > 256:
            return ""    # omitted for large Euclidean instances
        from .regions import merge_curved_regions
        from .sweep_l2 import run_crest_l2
        circles = bench_circles(n, ratio, cfg.seed, cfg.distribution, Metric.L2)
        res = run_crest_l2(circles, collect=False, tiling=True)
        return len(merge_curved_regions(res.tiles)) + 1
    circles = bench_circles(n, ratio, cfg.seed, cfg.distribution, cfg.metric)
    return kernels.grid_region_count(circles)


def run_suite(cfg: BenchConfig, out_path: str | None = None) -> list[dict]:
    """One row per (algo, size, ratio, rep); a median row follows when
    repetitions > 1."""
    rows: list[dict] = []
    for n in cfg.sizes:
        for ratio in cfg.ratios:
            regions = _region_count(cfg, n, ratio) if cfg.algorithms else ""
            for algo in cfg.algorithms:
                walls = []
                labels = lam = ""
                for rep in range(cfg.repetitions):
                    res = _spawn_cell(algo, cfg, n, ratio)
                    if res is None:
                        rows.append(_row(algo, cfg, n, ratio, rep, "timeout",
                                         "", regions, ""))
                        continue
                    walls.append(res["wall_ms"])
                    labels, lam = res["labels"], res["lambda"]
                    rows.append(_row(algo, cfg, n, ratio, rep,
                                     round(res["wall_ms"], 3), labels,
                                     regions, lam))
                if cfg.repetitions > 1:
                    med = (round(statistics.median(walls), 3) if walls
                           else "timeout")
                    rows.append(_row(algo, cfg, n, ratio, "median", med,
                                     labels, regions, lam))
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def _row(algo, cfg, n, ratio, rep, wall, labels, regions, lam) -> dict:
    return {"algo": algo, "metric": cfg.metric.value, "n": n, "ratio": ratio,
            "rep": rep, "wall_ms": wall, "labels": labels, "regions": regions,
            "lambda": lam}


def write_csv(rows: list[dict], dest) -> None:
    """Write the suite rows; dest is a path or an open text stream."""
    if hasattr(dest, "write"):
        _write_rows(rows, dest)
        return
    with open(dest, "w", newline="") as fh:
        _write_rows(rows, fh)


def _write_rows(rows: list[dict], fh) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_HEADER)
    w.writeheader()
    for row in rows:
        w.writerow(row)


if __name__ == "__main__":
    _child_main(sys.argv[1])
