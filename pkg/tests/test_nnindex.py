"""NN assignment, NN circles, RNN set partition, and CSV loaders."""

from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import make_dataset
from rnnheat.errors import (EmptyFacilitySet, MonochromaticSingleton,
                            UnknownClientId)
from rnnheat.geometry import Metric, Point, distance
from rnnheat.nnindex import (Client, Dataset, Facility, compute_nn,
                             compute_nn_circles, facility_rnn_sets,
                             live_circles, load_clients_csv, load_edges_csv,
                             load_facilities_csv, rotate_dataset)


def _bi(client_pts, facility_pts):
    clients = tuple(Client(i, Point(*p)) for i, p in enumerate(client_pts))
    facs = tuple(Facility(f"f{j}", Point(*p))
                 for j, p in enumerate(facility_pts))
    return Dataset(clients, facs)


def test_nn_picks_closest_facility():
    ds = _bi([(3, 3)], [(5, 5), (9, 9)])
    nn = compute_nn(ds, Metric.LINF)
    assert nn.nn_id == ("f0",)
    assert nn.nn_dist == (2.0,)


def test_mono_excludes_self():
    clients = tuple(Client(i, Point(x, 0)) for i, x in enumerate([0, 1, 5]))
    ds = Dataset(clients, (), mode="mono")
    nn = compute_nn(ds, Metric.LINF)
    assert nn.nn_id[0] == 1
    assert nn.nn_dist[0] == 1.0
    assert all(nn.nn_id[i] != clients[i].id for i in range(3))


def test_coincident_client_facility():
    ds = _bi([(0, 0)], [(0, 0)])
    nn = compute_nn(ds, Metric.LINF)
    assert nn.nn_dist == (0.0,)
    circles = compute_nn_circles(ds, Metric.LINF, nn)
    assert circles[0].degenerate
    assert live_circles(circles) == []


def test_tie_breaks_to_smallest_facility_id():
    ds = _bi([(0, 0)], [(2, 0), (-2, 0)])
    nn = compute_nn(ds, Metric.LINF)
    assert nn.nn_id == ("f0",)


def test_circle_bounds_linf_and_l2():
    ds = _bi([(3, 3)], [(5, 5)])
    sq = compute_nn_circles(ds, Metric.LINF)[0]
    assert (sq.x_lo, sq.x_hi, sq.y_lo, sq.y_hi) == (1.0, 5.0, 1.0, 5.0)
    disk = compute_nn_circles(ds, Metric.L2)[0]
    assert disk.center == Point(3, 3)
    assert disk.radius == pytest.approx(2 * math.sqrt(2))


def test_rnn_sets_by_hand():
    ds = _bi([(0, 0), (1, 0)], [(0, 1), (9, 9)])
    nn = compute_nn(ds, Metric.L2)
    sets = facility_rnn_sets(ds, nn)
    assert sets == {"f0": {0, 1}, "f1": set()}


def test_rnn_sets_empty_clients():
    ds = Dataset((), (Facility("f1", Point(0, 0)),))
    nn = compute_nn(ds, Metric.LINF)
    assert facility_rnn_sets(ds, nn) == {"f1": set()}


def test_errors():
    with pytest.raises(EmptyFacilitySet):
        compute_nn(Dataset((Client(1, Point(0, 0)),), ()), Metric.LINF)
    with pytest.raises(MonochromaticSingleton):
        compute_nn(Dataset((Client(1, Point(0, 0)),), (), mode="mono"),
                   Metric.LINF)


@pytest.mark.parametrize("metric", list(Metric))
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_nn_distance_is_minimal(metric, seed):
    ds = make_dataset(seed, 40, 9)
    nn = compute_nn(ds, metric)
    for i, c in enumerate(ds.clients):
        best = min(distance(c.point, f.point, metric)
                   for f in ds.facilities)
        assert nn.nn_dist[i] == pytest.approx(best, abs=1e-12)
        for f in ds.facilities:
            assert nn.nn_dist[i] <= distance(c.point, f.point, metric) + 1e-12


@pytest.mark.parametrize("seed", [3, 4])
def test_rnn_sets_partition_clients(seed):
    ds = make_dataset(seed, 60, 7)
    nn = compute_nn(ds, Metric.L2)
    sets = facility_rnn_sets(ds, nn)
    seen = []
    for s in sets.values():
        seen.extend(s)
    assert sorted(seen) == [c.id for c in ds.clients]


def test_grid_matches_linear_scan():
    # >= 64 facilities routes through the grid accelerator
    ds = make_dataset(11, 80, 96)
    for metric in Metric:
        nn = compute_nn(ds, metric)
        for i, c in enumerate(ds.clients):
            dists = [(distance(c.point, f.point, metric), str(f.id))
                     for f in ds.facilities]
            best = min(d for d, _ in dists)
            best_id = min(fid for d, fid in dists if d == best)
            assert nn.nn_dist[i] == pytest.approx(best, abs=1e-12)
            assert str(nn.nn_id[i]) == best_id


def test_mono_no_self_nn():
    ds = make_dataset(5, 30)
    nn = compute_nn(ds, Metric.LINF)
    for i, c in enumerate(ds.clients):
        assert nn.nn_id[i] != c.id


def test_rotate_dataset_preserves_nn():
    ds = make_dataset(8, 25, 6)
    rot = rotate_dataset(ds)
    nn_l1 = compute_nn(ds, Metric.L1)
    nn_rot = compute_nn(rot, Metric.LINF)
    assert nn_l1.nn_id == nn_rot.nn_id
    for a, b in zip(nn_l1.nn_dist, nn_rot.nn_dist):
        assert a == pytest.approx(b * math.sqrt(2), rel=1e-9)


def test_csv_loaders(tmp_path):
    cf = tmp_path / "clients.csv"
    cf.write_text("1,0.5,0.25\n2,1.5,0.75,2.5\n")
    clients = load_clients_csv(str(cf))
    assert clients[0].point == Point(0.5, 0.25)
    assert clients[0].weight == 1.0
    assert clients[1].weight == 2.5

    ff = tmp_path / "facilities.csv"
    ff.write_text("f1,0,0\nf2,1,1,3\n")
    facs = load_facilities_csv(str(ff))
    assert facs[0].capacity is None
    assert facs[1].capacity == 3

    ef = tmp_path / "edges.csv"
    ef.write_text("1,2\n")
    assert load_edges_csv(str(ef)) == {frozenset({1, 2})}
    ef.write_text("1,1\n")
    with pytest.raises(ValueError):
        load_edges_csv(str(ef))


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        Dataset((Client(1, Point(0, 0)), Client(1, Point(1, 1))), ())
