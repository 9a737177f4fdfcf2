"""Sweep-line labeling: events, status, interval scans, and full runs."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import circles_for, make_dataset, oracle_points
from rnnheat.baseline import baseline_label, region_count_grid, rnn_of_point
from rnnheat.errors import CacheMiss
from rnnheat.geometry import EPS, Metric, Point, circle_from_bounds
from rnnheat.influence import InfluenceContext, Measure
from rnnheat.sweep import (LOWER, UPPER, BaseSetCache, ChangedInterval,
                           LineStatus, Mode, SideElement, build_events,
                           merge_changed_intervals, run_crest, scan_interval)


def _iv(lo, hi):
    return ChangedInterval(lo, hi)


def test_merge_changed_intervals():
    assert merge_changed_intervals([_iv(1, 3), _iv(2, 5)]) == [_iv(1, 5)]
    assert merge_changed_intervals([_iv(1, 2), _iv(3, 4)]) == \
        [_iv(1, 2), _iv(3, 4)]
    assert merge_changed_intervals([_iv(2, 5), _iv(1, 3)]) == [_iv(1, 5)]
    assert merge_changed_intervals([]) == []
    # touching within eps merges
    assert merge_changed_intervals([_iv(0, 1), _iv(1, 2)]) == [_iv(0, 2)]


def test_build_events_single_square():
    c = circle_from_bounds("o1", 1.0, 5.0, 1.0, 5.0)
    events = build_events([c])
    assert [e.x for e in events] == [1.0, 5.0]
    assert events[0].inserts == (0,) and events[0].removes == ()
    assert events[1].removes == (0,) and events[1].inserts == ()


def test_build_events_shared_side_collapses():
    a = circle_from_bounds("a", 0.0, 2.0, 0.0, 2.0)
    b = circle_from_bounds("b", 0.0, 3.0, 5.0, 8.0)
    events = build_events([a, b])
    assert len(events) == 3
    assert events[0].inserts == (0, 1)


def test_each_side_inserted_and_removed_once():
    ds = make_dataset(17, 30, 5)
    circles = circles_for(ds, Metric.LINF)
    events = build_events(circles)
    ins = [i for e in events for i in e.inserts]
    rem = [i for e in events for i in e.removes]
    assert sorted(ins) == list(range(len(circles)))
    assert sorted(rem) == list(range(len(circles)))


def test_line_status_order_and_lookup():
    st = LineStatus(EPS)
    elems = [SideElement(0.0, LOWER, "a", 1), SideElement(4.0, UPPER, "a", 2),
             SideElement(2.0, LOWER, "b", 3), SideElement(6.0, UPPER, "b", 4)]
    for e in elems:
        st.insert(e)
    assert [e.y for e in st.elems] == [0.0, 2.0, 4.0, 6.0]
    assert st.first_geq(2.0) == 1
    assert st.last_leq(4.0) == 2
    assert st.first_geq(-9.0) == 0
    assert st.last_leq(100.0) == 3
    st.remove(elems[2])
    assert [e.key for e in st.elems] == [1, 2, 4]


def test_scan_interval_seeds_from_record_below():
    st = LineStatus(EPS)
    cache = BaseSetCache()
    e1 = SideElement(0.0, LOWER, "o1", 1)
    e2 = SideElement(2.0, LOWER, "o2", 3)
    e3 = SideElement(4.0, UPPER, "o1", 2)
    e4 = SideElement(6.0, UPPER, "o2", 4)
    for e in (e1, e2, e3, e4):
        st.insert(e)
    cache.put(1, frozenset({"o1"}))
    ctx = InfluenceContext(weights={"o1": 1.0, "o2": 1.0})
    got = []
    scan_interval(st, _iv(2.0, 6.0), cache, (0.0, 1.0), Measure.SIZE, ctx,
                  got.append)
    assert [s.rnn for s in got] == [frozenset({"o1", "o2"}),
                                    frozenset({"o2"}), frozenset()]
    assert got[0].rect.y_lo == 2.0 and got[0].rect.y_hi == 4.0
    assert math.isinf(got[2].rect.y_hi)
    assert cache.get(4) == frozenset()


def test_cache_miss():
    with pytest.raises(CacheMiss):
        BaseSetCache().get(7)


def test_two_squares_frozen_counts(two_squares):
    res = run_crest(two_squares)
    assert (res.k, res.events, res.lam) == (5, 4, 2)
    res_a = run_crest(two_squares, mode=Mode.CREST_A)
    assert res_a.k == 8
    bres = baseline_label(two_squares, Metric.LINF)
    assert res.k <= res_a.k <= bres.m
    assert region_count_grid(two_squares) == 4
    labels = {s.rnn for s in res.labels}
    assert labels == {frozenset(), frozenset({1}), frozenset({2}),
                      frozenset({1, 2})}


def test_disjoint_squares_labels():
    circles = [circle_from_bounds(i, 3.0 * i, 3.0 * i + 1.0, 0.0, 1.0)
               for i in range(4)]
    res = run_crest(circles)
    labels = {s.rnn for s in res.labels}
    assert labels == {frozenset({i}) for i in range(4)} | {frozenset()}
    assert region_count_grid(circles) == 5


def test_worst_case_three():
    circles = [circle_from_bounds(i, i - 0.5, i + 2.5, i - 0.5, i + 2.5)
               for i in (1, 2, 3)]
    res = run_crest(circles)
    labels = {s.rnn for s in res.labels}
    # every subset occurs except {1,3}: their overlap lies inside square 2
    assert len(labels) == 7
    assert frozenset({1, 2, 3}) in labels
    assert frozenset({1, 3}) not in labels


def test_tiles_equal_full_rescan():
    for seed in (2, 9, 23):
        ds = make_dataset(seed, 36, 6)
        circles = circles_for(ds, Metric.LINF)
        tiled = run_crest(circles, collect=False, tiling=True)
        full = run_crest(circles, mode=Mode.CREST_A)
        key = lambda s: (s.rect.x_lo, s.rect.x_hi, s.rect.y_lo, s.rect.y_hi,
                         sorted(map(str, s.rnn)))
        assert sorted(map(key, tiled.tiles)) == sorted(map(key, full.labels))


@pytest.mark.parametrize("seed", [1, 12, 31])
def test_emitted_labels_match_oracle(seed):
    ds = make_dataset(seed, 48, 8)
    circles = circles_for(ds, Metric.LINF)
    res = run_crest(circles)
    rng = np.random.default_rng(seed + 100)
    for sub in res.labels:
        if sub.rect.y_lo >= sub.rect.y_hi:
            continue
        y_hi = sub.rect.y_hi if math.isfinite(sub.rect.y_hi) \
            else sub.rect.y_lo + 1.0
        for _ in range(3):
            p = Point(float(rng.uniform(sub.rect.x_lo, sub.rect.x_hi)),
                      float(rng.uniform(sub.rect.y_lo, y_hi)))
            try:
                assert rnn_of_point(p, circles, Metric.LINF) == sub.rnn
                break
            except Exception:
                continue


@pytest.mark.parametrize("seed", [4, 14])
def test_query_labels_match_oracle(seed):
    ds = make_dataset(seed, 40, 6)
    circles = circles_for(ds, Metric.LINF)
    rng = np.random.default_rng(seed + 7)
    pairs = oracle_points(circles, Metric.LINF, rng, 300)
    res = run_crest(circles, collect=False,
                    queries=[p for p, _ in pairs])
    for (p, want), got in zip(pairs, res.query_labels):
        assert got == want, p


@pytest.mark.parametrize("seed", range(6))
def test_count_bounds(seed):
    ds = make_dataset(seed + 50, 44, 7)
    circles = circles_for(ds, Metric.LINF)
    res = run_crest(circles, collect=False)
    res_a = run_crest(circles, mode=Mode.CREST_A, collect=False)
    bres = baseline_label(circles, Metric.LINF, collect=False)
    r = region_count_grid(circles)
    assert r <= res.k <= 14 * r
    assert res.k <= res_a.k <= bres.m


def test_eps_width_circle_skipped():
    thin = circle_from_bounds("thin", 1.0, 1.0 + 1e-12, 0.0, 3.0)
    fat = circle_from_bounds("fat", 0.0, 2.0, 0.0, 2.0)
    res = run_crest([thin, fat], tiling=True)
    assert all("thin" not in s.rnn for s in res.labels)
    assert all("thin" not in t.rnn for t in res.tiles)


def test_degenerate_only_rejected():
    dot = circle_from_bounds("dot", 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        run_crest([dot])
