"""Shared builders: seeded datasets, NN-circle sets, oracle point sampling."""

from __future__ import annotations

import numpy as np
import pytest

from rnnheat.baseline import rnn_of_point
from rnnheat.errors import BoundaryPoint
from rnnheat.geometry import EPS, Metric, Point, circle_from_bounds
from rnnheat.nnindex import (Client, Dataset, Facility, compute_nn,
                             compute_nn_circles, live_circles)


def make_dataset(seed: int, n_clients: int, n_facilities: int = 0,
                 weights: bool = False, capacities: bool = False) -> Dataset:
    """Deterministic random instance; n_facilities=0 means monochromatic."""
    rng = np.random.default_rng(seed)
    pts = rng.random((n_clients, 2))
    clients = tuple(
        Client(i, Point(float(x), float(y)),
               float(rng.integers(1, 5)) if weights else 1.0)
        for i, (x, y) in enumerate(pts))
    if n_facilities == 0:
        return Dataset(clients, (), mode="mono")
    fpts = rng.random((n_facilities, 2))
    facs = tuple(
        Facility(f"f{j}", Point(float(x), float(y)),
                 int(rng.integers(1, 4)) if capacities else None)
        for j, (x, y) in enumerate(fpts))
    return Dataset(clients, facs, mode="bi")


def circles_for(ds: Dataset, metric: Metric):
    return live_circles(compute_nn_circles(ds, metric))


def bbox_of(circles, pad: float = 0.25):
    x_lo = min(c.x_lo for c in circles) - pad
    x_hi = max(c.x_hi for c in circles) + pad
    y_lo = min(c.y_lo for c in circles) - pad
    y_hi = max(c.y_hi for c in circles) + pad
    return x_lo, x_hi, y_lo, y_hi


def oracle_points(circles, metric: Metric, rng, count: int,
                  eps: float = EPS):
    """(point, oracle rnn) pairs at off-boundary samples inside a padded bbox."""
    x_lo, x_hi, y_lo, y_hi = bbox_of(circles)
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        p = Point(float(rng.uniform(x_lo, x_hi)),
                  float(rng.uniform(y_lo, y_hi)))
        try:
            out.append((p, rnn_of_point(p, circles, metric, eps=eps)))
        except BoundaryPoint:
            continue
    return out


@pytest.fixture
def two_squares():
    """Two overlapping squares [0,4]^2 and [2,6]^2 with owners 1 and 2."""
    return [circle_from_bounds(1, 0.0, 4.0, 0.0, 4.0),
            circle_from_bounds(2, 2.0, 6.0, 2.0, 6.0)]
