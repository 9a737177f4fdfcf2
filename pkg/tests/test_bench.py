"""Dataset generators and the timing suite."""

from __future__ import annotations

import io

import numpy as np
import pytest

from rnnheat.baseline import region_count_grid
from rnnheat.bench import (CSV_HEADER, BenchConfig, bench_circles,
                           gen_distinctness, gen_uniform, gen_worst_case,
                           gen_zipf, make_instance, run_suite, write_csv)
from rnnheat.geometry import Metric
from rnnheat.kernels import crest_stats, warmup
from rnnheat.nnindex import live_circles
from rnnheat.sweep import run_crest

CHI2_CRIT_15_DOF_P01 = 30.578    # upper 1% point, 15 degrees of freedom


def test_uniform_deterministic_and_bounded():
    a = gen_uniform(4, seed=7)
    b = gen_uniform(4, seed=7)
    assert np.array_equal(a, b)
    assert gen_uniform(1, seed=3).shape == (1, 2)
    pts = gen_uniform(10_000, seed=1)
    assert pts.min() > 0.0 and pts.max() < 1.0
    # per-quadrant counts stay within 4 sigma of n/4
    q = ((pts[:, 0] >= 0.5).astype(int) * 2 + (pts[:, 1] >= 0.5).astype(int))
    counts = np.bincount(q, minlength=4)
    sigma = np.sqrt(10_000 * 0.25 * 0.75)
    assert np.all(np.abs(counts - 2500) <= 4 * sigma)


def test_zipf_skew_zero_is_uniform():
    pts = gen_zipf(10_000, skew=0.0, seed=5)
    for axis in (0, 1):
        counts = np.histogram(pts[:, axis], bins=16, range=(0.0, 1.0))[0]
        expected = 10_000 / 16
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert chi2 < CHI2_CRIT_15_DOF_P01
    assert np.array_equal(gen_zipf(64, 0.2, 9), gen_zipf(64, 0.2, 9))


def test_zipf_high_skew_concentrates_first_cell():
    pts = gen_zipf(10_000, skew=2.0, seed=2)
    for axis in (0, 1):
        counts = np.histogram(pts[:, axis], bins=64, range=(0.0, 1.0))[0]
        assert counts.argmax() == 0
        assert counts[0] > counts[1:].max()


@pytest.mark.parametrize("n,r", [(1, 2), (2, 4), (3, 8)])
def test_worst_case_region_formula(n, r):
    assert region_count_grid(gen_worst_case(n)) == r


def test_worst_case_shape():
    circles = gen_worst_case(3)
    assert [(c.center.x, c.center.y) for c in circles] == \
        [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]
    assert all(c.x_hi - c.x_lo == 3.0 for c in circles)


def test_distinctness_reduction():
    res = run_crest(gen_distinctness([1.0, 2.0, 3.0]))
    assert len({s.rnn for s in res.labels}) == 3
    assert frozenset() in {s.rnn for s in res.labels}
    res = run_crest(gen_distinctness([1.0, 2.0, 2.0]))
    assert len({s.rnn for s in res.labels}) < 3
    # equal values collapse to degenerate squares with no interior
    assert live_circles(gen_distinctness([1.0, 1.0])) == []


def test_make_instance_ratio():
    ds = make_instance(128, 4.0, seed=0)
    assert len(ds.clients) == 128 and len(ds.facilities) == 32
    ds2 = make_instance(8, 128.0, seed=0)
    assert len(ds2.facilities) == 1


def test_bench_circles_l1_prerotated():
    from rnnheat.nnindex import compute_nn_circles, rotate_dataset
    rot = bench_circles(32, 4.0, 3, "uniform", Metric.L1)
    manual = live_circles(compute_nn_circles(
        rotate_dataset(make_instance(32, 4.0, 3, "uniform")), Metric.LINF))
    assert [(c.owner, c.center, c.radius) for c in rot] == \
        [(c.owner, c.center, c.radius) for c in manual]


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(sizes=[0], ratios=[1.0])
    with pytest.raises(ValueError):
        BenchConfig(sizes=[4], ratios=[0.5])
    with pytest.raises(ValueError):
        BenchConfig(sizes=[4], ratios=[2.0], algorithms=["quantum"])
    with pytest.raises(ValueError):
        BenchConfig(sizes=[4], ratios=[2.0], distribution="gauss")


def test_empty_algorithms_gives_header_only():
    rows = run_suite(BenchConfig(sizes=[8], ratios=[2.0], algorithms=[]))
    assert rows == []
    buf = io.StringIO()
    write_csv(rows, buf)
    assert buf.getvalue().strip() == ",".join(CSV_HEADER)


def test_suite_single_cell_and_median(tmp_path):
    warmup()
    cfg = BenchConfig(sizes=[64], ratios=[8.0], algorithms=["crest"],
                      repetitions=1, seed=4)
    rows = run_suite(cfg)
    assert len(rows) == 1
    row = rows[0]
    assert row["rep"] == 0 and row["regions"] != "" and row["labels"] >= 1
    r, k = row["regions"], row["labels"]
    assert r <= k <= 14 * r

    cfg3 = BenchConfig(sizes=[64], ratios=[8.0], algorithms=["crest"],
                       repetitions=3, seed=4)
    rows3 = run_suite(cfg3)
    assert len(rows3) == 4
    assert [r["rep"] for r in rows3] == [0, 1, 2, "median"]
    walls = sorted(r["wall_ms"] for r in rows3[:3])
    assert rows3[3]["wall_ms"] == walls[1]
    out = tmp_path / "suite.csv"
    write_csv(rows3, str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 5


def test_suite_determinism_excluding_timings():
    cfg = lambda: BenchConfig(sizes=[48], ratios=[6.0],
                              algorithms=["crest", "crest_a"], seed=11)
    strip = lambda rows: [(r["algo"], r["n"], r["ratio"], r["labels"],
                           r["regions"], r["lambda"]) for r in rows]
    assert strip(run_suite(cfg())) == strip(run_suite(cfg()))
