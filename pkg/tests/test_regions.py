"""Region merging topology, filtering, canonical JSON, and point location."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from conftest import circles_for, make_dataset, oracle_points
from rnnheat.baseline import baseline_label, region_count_grid
from rnnheat.errors import BoundaryPoint
from rnnheat.geometry import EPS, Metric, Point, Rect, circle_from_bounds
from rnnheat.kernels import grid_region_count
from rnnheat.regions import (PointLocator, Region, filter_regions,
                             merge_curved_regions, merge_rect_regions,
                             region_count_from_tiling, regions_payload,
                             to_canonical_json)
from rnnheat.sweep import run_crest


def _merged_by_label(regions):
    out = {}
    for r in regions:
        out.setdefault(r.rnn, []).append(r)
    return out


def _check_case(circles, want_bounded, want_r):
    res = run_crest(circles, tiling=True)
    merged = merge_rect_regions(res.tiles)
    assert len(merged) == want_bounded
    assert len(merged) + 1 == want_r
    assert region_count_grid(circles) == want_r
    assert grid_region_count(circles) == want_r
    cells = baseline_label(circles, Metric.LINF).cells
    merged_cells = merge_rect_regions(cells)
    assert len(merged_cells) == want_bounded
    a = sorted((sorted(map(str, r.rnn)), r.influence) for r in merged)
    b = sorted((sorted(map(str, r.rnn)), r.influence) for r in merged_cells)
    assert a == b
    return merged


def test_merge_overlap_pair(two_squares):
    merged = _check_case(two_squares, 3, 4)
    assert {r.rnn for r in merged} == {frozenset({1}), frozenset({2}),
                                       frozenset({1, 2})}


def test_merge_three_way_overlap():
    circles = [circle_from_bounds("a", 0.0, 4.0, 0.0, 4.0),
               circle_from_bounds("b", 2.0, 6.0, 0.0, 4.0),
               circle_from_bounds("c", 1.0, 5.0, 2.0, 6.0)]
    merged = _check_case(circles, 7, 8)
    labels = {r.rnn for r in merged}
    assert frozenset({"a", "b", "c"}) in labels
    assert len(labels) == 7


def test_merge_ring_keeps_interior_hole():
    circles = [circle_from_bounds("bot", 0.0, 3.0, 0.0, 1.0),
               circle_from_bounds("top", 0.0, 3.0, 2.0, 3.0),
               circle_from_bounds("left", 0.0, 1.0, 0.0, 3.0),
               circle_from_bounds("right", 2.0, 3.0, 0.0, 3.0)]
    merged = _check_case(circles, 9, 10)
    holes = [r for r in merged if r.rnn == frozenset()]
    assert len(holes) == 1    # the hole framed by the four squares


def test_merge_gap_leaks_to_exterior():
    circles = [circle_from_bounds("lo", 0.0, 2.0, 0.0, 2.0),
               circle_from_bounds("hi", 0.0, 2.0, 3.0, 5.0)]
    merged = _check_case(circles, 2, 3)
    assert all(r.rnn for r in merged)    # the gap strip is unbounded-face


@pytest.mark.parametrize("seed", [0, 6, 18, 27])
def test_merge_matches_grid_count_random(seed):
    ds = make_dataset(seed + 300, 42, 6)
    circles = circles_for(ds, Metric.LINF)
    res = run_crest(circles, collect=False, tiling=True)
    r = region_count_grid(circles)
    assert region_count_from_tiling(res.tiles) == r
    assert grid_region_count(circles) == r


def test_filter_regions_orders_and_truncates():
    regs = [Region(frozenset({i}), float(v), i)
            for i, v in enumerate([1.0, 3.0, 2.0, 3.0])]
    kept = filter_regions(regs, None, None)
    assert [r.influence for r in kept] == [3.0, 3.0, 2.0, 1.0]
    assert [r.order for r in kept[:2]] == [1, 3]    # ties keep emission order
    assert [r.influence for r in filter_regions(regs, 2.5, None)] == [3.0, 3.0]
    assert filter_regions(regs, None, 0) == []
    assert len(filter_regions(regs, None, 2)) == 2
    assert len(filter_regions(regs, None, 99)) == 4


def test_canonical_json_stable_and_rounded():
    payload = {"b": [1.0, 0.1234567891234], "a": {"z": 1, "y": 2.0}}
    s = to_canonical_json(payload)
    assert s == '{"a":{"y":2.0,"z":1},"b":[1.0,0.123456789]}'
    assert to_canonical_json(json.loads(s)) == s
    with pytest.raises(ValueError):
        to_canonical_json({"v": math.inf})


def test_regions_payload_shapes():
    rect = Rect(0.0, 1.0, 0.0, 1.0)
    reg = Region(frozenset({3, 1}), 2.0, 0, rects=[rect])
    doc = regions_payload([reg], {"metric": "linf"})
    assert doc["regions"][0]["rnn"] == [1, 3]
    assert doc["regions"][0]["rects"] == [[0.0, 1.0, 0.0, 1.0]]
    assert "polylines" not in doc["regions"][0]


def test_locator_rect_kinds(two_squares):
    res = run_crest(two_squares, tiling=True)
    loc = PointLocator(labels=res.tiles)
    hit = loc.locate(Point(3.0, 3.0))
    assert hit.kind == "region" and hit.rnn == frozenset({1, 2})
    assert loc.locate(Point(2.0, 1.0)).kind == "boundary"
    assert loc.locate(Point(3.0, 4.0)).kind == "boundary"
    out = loc.locate(Point(50.0, 50.0))
    assert out.kind == "exterior" and out.rnn == frozenset()


@pytest.mark.parametrize("seed", [9, 19])
def test_locator_matches_oracle(seed):
    ds = make_dataset(seed + 400, 38, 6)
    circles = circles_for(ds, Metric.LINF)
    res = run_crest(circles, tiling=True)
    loc = PointLocator(labels=res.tiles)
    rng = np.random.default_rng(seed)
    for p, want in oracle_points(circles, Metric.LINF, rng, 200):
        got = loc.locate(p)
        if got.kind == "boundary":
            continue
        assert (got.rnn or frozenset()) == want
