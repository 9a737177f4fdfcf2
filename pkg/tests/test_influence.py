"""Influence measures evaluated over RNN sets."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnnheat.errors import UnknownClientId
from rnnheat.geometry import Point
from rnnheat.influence import (InfluenceContext, Measure, context_for,
                               evaluate)
from rnnheat.nnindex import Client, Dataset, Facility

WEIGHTS = {f"o{i}": float(i) for i in range(1, 6)}


def _ctx(**kw):
    base = dict(weights=WEIGHTS)
    base.update(kw)
    return InfluenceContext(**base)


def test_edges_triangle_vs_path():
    edges = frozenset({frozenset({"o1", "o2"}), frozenset({"o2", "o4"}),
                       frozenset({"o1", "o4"})})
    ctx = _ctx(edges=edges)
    assert evaluate(Measure.EDGES, {"o1", "o2", "o4"}, ctx) == 3.0
    assert evaluate(Measure.EDGES, {"o1", "o3", "o4"}, ctx) == 1.0


def test_capacity_candidate_plus_remnants():
    ctx = _ctx(capacities={"f1": 1}, candidate_capacity=5,
               facility_rnns={"f1": frozenset({"o4", "o5"})})
    assert evaluate(Measure.CAPACITY, {"o1", "o2", "o3"}, ctx) == 4.0


def test_size_and_weighted():
    ctx = _ctx()
    assert evaluate(Measure.SIZE, set(), ctx) == 0.0
    assert evaluate(Measure.SIZE, {"o1", "o3"}, ctx) == 2.0
    assert evaluate(Measure.WEIGHTED, {"o1", "o3"}, ctx) == 4.0


def test_weighted_with_unit_weights_equals_size():
    ctx = InfluenceContext(weights={f"o{i}": 1.0 for i in range(1, 6)})
    for rnn in [set(), {"o1"}, {"o2", "o4", "o5"}]:
        assert evaluate(Measure.WEIGHTED, rnn, ctx) == \
            evaluate(Measure.SIZE, rnn, ctx)


subsets = st.sets(st.sampled_from(sorted(WEIGHTS)))


@given(subsets, subsets)
def test_monotone_measures(a, b):
    small, big = a & b, a | b
    edges = frozenset({frozenset({"o1", "o2"}), frozenset({"o3", "o4"}),
                       frozenset({"o2", "o5"})})
    ctx = _ctx(edges=edges)
    for m in (Measure.SIZE, Measure.WEIGHTED, Measure.EDGES):
        assert evaluate(m, small, ctx) <= evaluate(m, big, ctx)


@given(subsets)
def test_edges_bounded_by_pairs(rnn):
    edges = frozenset({frozenset({"o1", "o2"}), frozenset({"o1", "o3"}),
                       frozenset({"o4", "o5"})})
    ctx = _ctx(edges=edges)
    n = len(rnn)
    assert evaluate(Measure.EDGES, rnn, ctx) <= n * (n - 1) / 2


@given(subsets)
def test_capacity_saturates_at_client_count(rnn):
    n = len(WEIGHTS)
    rnns = {"f1": frozenset({"o1", "o2"}),
            "f2": frozenset({"o3", "o4", "o5"})}
    ctx = _ctx(capacities={"f1": n, "f2": n}, candidate_capacity=n,
               facility_rnns=rnns)
    assert evaluate(Measure.CAPACITY, rnn, ctx) == float(n)


def test_unknown_ids_rejected():
    ctx = _ctx()
    with pytest.raises(UnknownClientId):
        evaluate(Measure.SIZE, {"ghost"}, ctx)
    with pytest.raises(UnknownClientId):
        InfluenceContext(weights={"o1": 1.0},
                         edges=frozenset({frozenset({"o1", "zz"})}))


def test_context_for_collects_dataset_side_data():
    ds = Dataset((Client(1, Point(0, 0), 2.0), Client(2, Point(1, 0), 3.0)),
                 (Facility("f1", Point(0, 1), 4), Facility("f2", Point(2, 2))))
    ctx = context_for(ds, {"f1": {1, 2}, "f2": set()}, candidate_capacity=1)
    assert ctx.weights == {1: 2.0, 2: 3.0}
    assert ctx.capacities == {"f1": 4}
    assert ctx.facility_rnns["f1"] == frozenset({1, 2})
    assert ctx.has_measure(Measure.CAPACITY)
    assert not ctx.has_measure(Measure.EDGES)
