"""Nearest-facility assignment, NN-circles, and per-facility RNN sets."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyFacilitySet, MonochromaticSingleton
from .geometry import Metric, NNCircle, Point, distance, make_circle, rotate_pi4


@dataclass(frozen=True, slots=True)
class Client:
    id: object
    point: Point
    weight: float = 1.0


@dataclass(frozen=True, slots=True)
class Facility:
    id: object
    point: Point
    capacity: int | None = None


@dataclass(frozen=True)
class Dataset:
    """Clients plus facilities; monochromatic mode ignores `facilities` (F := O)."""

    clients: tuple[Client, ...]
    facilities: tuple[Facility, ...] = ()
    mode: str = "bi"  # "bi" | "mono"

    def __post_init__(self):
        ids = [c.id for c in self.clients]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate client ids")
        fids = [f.id for f in self.facilities]
        if len(set(fids)) != len(fids):
            raise ValueError("duplicate facility ids")
        if self.mode not in ("bi", "mono"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def effective_facilities(self) -> tuple[Facility, ...]:
        if self.mode == "mono":
            return tuple(Facility(c.id, c.point) for c in self.clients)
        return self.facilities


@dataclass(frozen=True)
class NNAssignment:
    """Per-client (nearest facility id, distance), in dataset client order."""

    nn_id: tuple[object, ...]
    nn_dist: tuple[float, ...]


def _as_xy(points: Sequence[Point]) -> np.ndarray:
    a = np.empty((len(points), 2), dtype=np.float64)
    for i, p in enumerate(points):
        a[i, 0] = p.x
        a[i, 1] = p.y
    return a


def _pair_dists(cxy: np.ndarray, fxy: np.ndarray, m: Metric) -> np.ndarray:
    dx = np.abs(cxy[:, None, 0] - fxy[None, :, 0])
    dy = np.abs(cxy[:, None, 1] - fxy[None, :, 1])
    if m is Metric.LINF:
        return np.maximum(dx, dy)
    if m is Metric.L1:
        return dx + dy
    return np.hypot(dx, dy)


class _FacilityGrid:
    """Uniform grid over facilities with expanding LINF cell-ring search.

    The ring lower bound (ring-1)*cell is valid for every metric because
    LINF <= L2 <= L1 pointwise.
    """

    def __init__(self, facilities: Sequence[Facility]):
        self.fac = sorted(facilities, key=_id_sort_key)
        xs = [f.point.x for f in self.fac]
        ys = [f.point.y for f in self.fac]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, 1e-12)
        self.ncell = max(1, int(math.sqrt(len(self.fac))))
        self.cell = span / self.ncell
        self.grid: dict[tuple[int, int], list[int]] = {}
        for i, f in enumerate(self.fac):
            key = self._key(f.point)
            self.grid.setdefault(key, []).append(i)

    def _key(self, p: Point) -> tuple[int, int]:
        cx = min(self.ncell - 1, max(0, int((p.x - self.x0) / self.cell)))
        cy = min(self.ncell - 1, max(0, int((p.y - self.y0) / self.cell)))
        return cx, cy

    def nearest(self, p: Point, m: Metric, exclude_id: object = None):
        kx, ky = self._key(p)
        best_d = math.inf
        best = None
        best_key: tuple = (2, 0, "")
        ring = 0
        max_ring = 2 * self.ncell + 2
        while ring <= max_ring:
            if best is not None and (ring - 1) * self.cell > best_d:
                break
            lo_x, hi_x = kx - ring, kx + ring
            lo_y, hi_y = ky - ring, ky + ring
            for cx in range(lo_x, hi_x + 1):
                for cy in range(lo_y, hi_y + 1):
                    if ring > 0 and lo_x < cx < hi_x and lo_y < cy < hi_y:
                        continue  # interior cells were scanned in earlier rings
                    for idx in self.grid.get((cx, cy), ()):
                        f = self.fac[idx]
                        if exclude_id is not None and f.id == exclude_id:
                            continue
                        d = distance(p, f.point, m)
                        # ties across cells arrive in arbitrary order, so the
                        # id key participates in the comparison
                        if d < best_d or (d == best_d and
                                          _id_sort_key(f) < best_key):
                            best_d, best, best_key = d, f.id, _id_sort_key(f)
            ring += 1
        return best, best_d


def compute_nn(ds: Dataset, m: Metric) -> NNAssignment:
    """Exact nearest facility per client; ties broken by smallest facility id."""
    fac = ds.effective_facilities()
    if ds.mode == "mono":
        if len(ds.clients) < 2:
            raise MonochromaticSingleton("monochromatic mode needs >= 2 clients")
    elif not fac:
        raise EmptyFacilitySet("no facilities")

    # Tie rule: scan facilities in ascending id order and update on strict
    # improvement only. Ids may be ints or strings; sort numerics numerically.
    fac_sorted = sorted(fac, key=_id_sort_key)

    if len(fac_sorted) < 64:
        cxy = _as_xy([c.point for c in ds.clients])
        fxy = _as_xy([f.point for f in fac_sorted])
        d = _pair_dists(cxy, fxy, m)
        if ds.mode == "mono":
            fid_by_col = [f.id for f in fac_sorted]
            col_of = {fid: j for j, fid in enumerate(fid_by_col)}
            for i, c in enumerate(ds.clients):
                d[i, col_of[c.id]] = np.inf
        best_col = np.argmin(d, axis=1)  # argmin takes the first (smallest id) on ties
        ids = tuple(fac_sorted[j].id for j in best_col)
        dists = tuple(float(d[i, j]) for i, j in enumerate(best_col))
        return NNAssignment(ids, dists)

    grid = _FacilityGrid(fac_sorted)
    ids = []
    dists = []
    for c in ds.clients:
        ex = c.id if ds.mode == "mono" else None
        fid, fd = grid.nearest(c.point, m, exclude_id=ex)
        ids.append(fid)
        dists.append(fd)
    return NNAssignment(tuple(ids), tuple(dists))


def id_sort_key(v: object) -> tuple:
    """Sort ids numerically when numeric, lexicographically otherwise."""
    return (0, v, "") if isinstance(v, (int, float)) else (1, 0, str(v))


def _id_sort_key(f: Facility) -> tuple:
    return id_sort_key(f.id)


def compute_nn_circles(ds: Dataset, m: Metric,
                       nn: NNAssignment | None = None) -> list[NNCircle]:
    """One circle per client, radius = NN distance; zero radius is degenerate."""
    if nn is None:
        nn = compute_nn(ds, m)
    return [make_circle(c.id, c.point, r)
            for c, r in zip(ds.clients, nn.nn_dist)]


def live_circles(circles: Iterable[NNCircle]) -> list[NNCircle]:
    """Drop degenerate (zero-radius) circles; they bound no region."""
    return [c for c in circles if not c.degenerate]


def facility_rnn_sets(ds: Dataset, nn: NNAssignment) -> dict[object, set[object]]:
    """Partition of client ids by their tie-broken nearest facility."""
    out: dict[object, set[object]] = {f.id: set() for f in ds.effective_facilities()}
    for c, fid in zip(ds.clients, nn.nn_id):
        out[fid].add(c.id)
    return out


def rotate_dataset(ds: Dataset) -> Dataset:
    """Rotate every point by pi/4 (the L1 -> LINF reduction)."""
    return Dataset(
        tuple(Client(c.id, rotate_pi4(c.point), c.weight) for c in ds.clients),
        tuple(Facility(f.id, rotate_pi4(f.point), f.capacity) for f in ds.facilities),
        ds.mode,
    )


def _parse_id(s: str) -> object:
    s = s.strip()
    try:
        return int(s)
    except ValueError:
        return s


def load_clients_csv(path: str) -> tuple[Client, ...]:
    """Headerless CSV: id,x,y[,weight]."""
    return tuple(_load_rows(path, Client, "weight"))


def load_facilities_csv(path: str) -> tuple[Facility, ...]:
    """Headerless CSV: id,x,y[,capacity]."""
    return tuple(_load_rows(path, Facility, "capacity"))


def _load_rows(path: str, cls, extra: str):
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) not in (3, 4):
                raise ValueError(f"{path}:{lineno}: expected 3 or 4 fields, got {len(row)}")
            try:
                pid = _parse_id(row[0])
                pt = Point(float(row[1]), float(row[2]))
                if len(row) == 4 and row[3].strip():
                    val = float(row[3]) if extra == "weight" else int(row[3])
                else:
                    val = 1.0 if extra == "weight" else None
            except ValueError as e:
                raise ValueError(f"{path}:{lineno}: {e}") from None
            out.append(cls(pid, pt, val))
    return out


def load_edges_csv(path: str) -> set[frozenset]:
    """Edge list: id1,id2 per line."""
    edges = set()
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            a, b = _parse_id(row[0]), _parse_id(row[1])
            if a == b:
                raise ValueError(f"{path}:{lineno}: self-loop edge")
            edges.add(frozenset((a, b)))
    return edges
