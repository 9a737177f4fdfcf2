"""Grid baseline and the brute-force point oracle anchoring all correctness tests.

The baseline extends every circle side into a full grid, then labels each
cell's centroid through point-enclosure (stab) queries. It is deliberately
kept cell-per-cell, with no region merging: it is the comparator whose
inefficiency the sweep is measured against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundaryPoint, UnsupportedMetric
from .geometry import EPS, Metric, NNCircle, Point, Rect, distance
from .influence import InfluenceContext, Measure, evaluate


def rnn_of_point(q: Point, circles: Sequence[NNCircle], m: Metric,
                 eps: float = EPS) -> frozenset:
    """Owners of the circles containing q (closed containment).

    Raises BoundaryPoint when q lies within eps of any circle boundary;
    callers are expected to sample interior points only.
    """
    out = []
    for c in circles:
        d = distance(c.center, q, m)
        if abs(d - c.radius) < eps:
            raise BoundaryPoint(f"point ({q.x},{q.y}) on boundary of circle {c.owner!r}")
        if d <= c.radius:
            out.append(c.owner)
    return frozenset(out)


def rnn_of_points_array(qx: np.ndarray, qy: np.ndarray,
                        circles: Sequence[NNCircle], m: Metric,
                        eps: float = EPS):
    """Vectorized oracle: list of frozensets, or None where a point is
    within eps of a boundary (the caller resamples those)."""
    cx = np.array([c.center.x for c in circles])
    cy = np.array([c.center.y for c in circles])
    r = np.array([c.radius for c in circles])
    dx = np.abs(qx[:, None] - cx[None, :])
    dy = np.abs(qy[:, None] - cy[None, :])
    if m is Metric.LINF:
        d = np.maximum(dx, dy)
    elif m is Metric.L1:
        d = dx + dy
    else:
        d = np.hypot(dx, dy)
    on_boundary = (np.abs(d - r[None, :]) < eps).any(axis=1)
    inside = d <= r[None, :]
    owners = [c.owner for c in circles]
    out: list[frozenset | None] = []
    for i in range(len(qx)):
        if on_boundary[i]:
            out.append(None)
        else:
            out.append(frozenset(owners[j] for j in np.flatnonzero(inside[i])))
    return out


class _YNode:
    __slots__ = ("mid", "left", "right", "by_lo", "by_hi")

    def __init__(self, mid):
        self.mid = mid
        self.left = None
        self.right = None
        self.by_lo: list = []   # straddling intervals sorted by lo ascending
        self.by_hi: list = []   # same intervals sorted by hi descending


def _build_ytree(intervals: list) -> _YNode | None:
    """Midpoint binary partition over interval endpoints."""
    if not intervals:
        return None
    endpoints = sorted({v for iv in intervals for v in (iv[0], iv[1])})
    return _build_ynode(intervals, endpoints)


def _build_ynode(intervals, endpoints):
    if not intervals:
        return None
    mid = endpoints[len(endpoints) // 2]
    node = _YNode(mid)
    left_iv, right_iv = [], []
    for iv in intervals:
        if iv[1] < mid:
            left_iv.append(iv)
        elif iv[0] > mid:
            right_iv.append(iv)
        else:
            node.by_lo.append(iv)
    node.by_lo.sort(key=lambda iv: iv[0])
    node.by_hi = sorted(node.by_lo, key=lambda iv: iv[1], reverse=True)
    le = [v for v in endpoints if v < mid]
    re = [v for v in endpoints if v > mid]
    node.left = _build_ynode(left_iv, le)
    node.right = _build_ynode(right_iv, re)
    return node


class PointEnclosureIndex:
    """Two-level stab index over LINF squares.

    Level 1 keys the elementary x-strips between the distinct vertical-side
    coordinates; level 2 is a per-strip interval tree over the active squares'
    y-extents, searched by midpoint binary partition. stab(q) costs
    O(log n + alpha).
    """

    def __init__(self, circles: Sequence[NNCircle]):
        self.circles = list(circles)
        self.xs = np.unique(np.array(
            [c.x_lo for c in self.circles] + [c.x_hi for c in self.circles],
            dtype=np.float64)) if self.circles else np.empty(0)
        self.columns: list[_YNode | None] = []
        for i in range(max(0, len(self.xs) - 1)):
            lo, hi = self.xs[i], self.xs[i + 1]
            active = [(c.y_lo, c.y_hi, c) for c in self.circles
                      if c.x_lo <= lo and c.x_hi >= hi]
            self.columns.append(_build_ytree(active))

    def stab(self, q: Point) -> list[NNCircle]:
        """Exactly the squares containing q (closed containment)."""
        if len(self.xs) == 0 or q.x < self.xs[0] or q.x > self.xs[-1]:
            return []
        col = int(np.searchsorted(self.xs, q.x, side="right")) - 1
        if col == len(self.columns):  # q.x on the rightmost line
            col -= 1
        out = []
        node = self.columns[col]
        y = q.y
        while node is not None:
            if y <= node.mid:
                for iv in node.by_lo:
                    if iv[0] > y:
                        break
                    out.append(iv[2])
                node = node.left if y < node.mid else None
            else:
                for iv in node.by_hi:
                    if iv[1] < y:
                        break
                    out.append(iv[2])
                node = node.right
        # membership on the exact column boundary is x-exact by construction:
        # a square is active in the column iff it spans the whole strip, so a
        # point on a vertical side needs the neighbouring column too.
        if q.x == self.xs[col] and col > 0:
            seen = {id(c) for c in out}
            extra = [c for c in self._stab_column(col - 1, y) if id(c) not in seen]
            out.extend(c for c in extra if c.x_lo <= q.x <= c.x_hi)
        return out

    def _stab_column(self, col: int, y: float) -> list[NNCircle]:
        out = []
        node = self.columns[col]
        while node is not None:
            if y <= node.mid:
                for iv in node.by_lo:
                    if iv[0] > y:
                        break
                    out.append(iv[2])
                node = node.left if y < node.mid else None
            else:
                for iv in node.by_hi:
                    if iv[1] < y:
                        break
                    out.append(iv[2])
                node = node.right
        return out


def point_enclosure_index(circles: Sequence[NNCircle]) -> PointEnclosureIndex:
    return PointEnclosureIndex(circles)


def _collapse(values: np.ndarray, eps: float) -> np.ndarray:
    """Ascending coordinates with near-duplicates (within eps) collapsed."""
    vs = np.sort(values)
    if len(vs) == 0:
        return vs
    keep = [vs[0]]
    for v in vs[1:]:
        if v - keep[-1] > eps:
            keep.append(v)
    return np.array(keep)


@dataclass(frozen=True)
class GridDecomposition:
    """Elementary grid obtained by extending every circle side."""

    xs: np.ndarray
    ys: np.ndarray

    @property
    def m(self) -> int:
        return max(0, (len(self.xs) - 1)) * max(0, (len(self.ys) - 1))

    def cell_rect(self, i: int, j: int) -> Rect:
        return Rect(float(self.xs[i]), float(self.xs[i + 1]),
                    float(self.ys[j]), float(self.ys[j + 1]))


def grid_decomposition(circles: Sequence[NNCircle], eps: float = EPS) -> GridDecomposition:
    """Side lines plus one sentinel line per border, so the 2n side lines
    cut the plane into at most (2n+1)^2 cells and the unbounded face is
    represented by an explicit ring of empty-labeled cells."""
    xs = _collapse(np.array([v for c in circles for v in (c.x_lo, c.x_hi)]), eps)
    ys = _collapse(np.array([v for c in circles for v in (c.y_lo, c.y_hi)]), eps)
    pad = max(1.0, 0.5 * max(c.radius for c in circles))
    xs = np.concatenate(([xs[0] - pad], xs, [xs[-1] + pad]))
    ys = np.concatenate(([ys[0] - pad], ys, [ys[-1] + pad]))
    return GridDecomposition(xs, ys)


@dataclass(frozen=True)
class LabeledCell:
    rect: Rect
    rnn: frozenset
    influence: float

    @property
    def unbounded(self) -> bool:
        return False    # grid cells always lie inside the circle bounding box


@dataclass(frozen=True)
class BaselineResult:
    cells: list
    m: int
    lam: int


def _square_metric(m: Metric) -> None:
    if m is Metric.L2:
        raise UnsupportedMetric("the grid baseline handles LINF (and L1 after "
                                "rotation), not L2")


def baseline_label(circles: Sequence[NNCircle], m: Metric,
                   measure: Measure = Measure.SIZE,
                   ctx: InfluenceContext | None = None,
                   eps: float = EPS, collect: bool = True) -> BaselineResult:
    """Label every grid cell with its centroid's RNN set.

    L1 inputs are expected in rotated (square) space; geometry is identical
    to LINF there. Output order is deterministic: row-major by (row, column).
    """
    _square_metric(m)
    circles = [c for c in circles if not c.degenerate]
    if not circles:
        raise ValueError("need at least one non-degenerate circle")
    if ctx is None:
        ctx = ctx_for_circles(circles)
    grid = grid_decomposition(circles, eps)
    index = PointEnclosureIndex(circles)
    cells = []
    lam = 0
    for j in range(len(grid.ys) - 1):
        for i in range(len(grid.xs) - 1):
            rect = grid.cell_rect(i, j)
            q = _cell_sample_point(rect, circles, Metric.LINF, eps)
            rnn = frozenset(c.owner for c in index.stab(q))
            lam = max(lam, len(rnn))
            if collect:
                cells.append(LabeledCell(rect, rnn, evaluate(measure, rnn, ctx)))
    return BaselineResult(cells, grid.m, lam)


def _cell_sample_point(rect: Rect, circles, m: Metric, eps: float) -> Point:
    """Cell centroid, nudged by the quarter-diagonal when it falls within
    eps of a circle boundary (possible only with duplicated coordinates)."""
    cx = (rect.x_lo + rect.x_hi) / 2.0
    cy = (rect.y_lo + rect.y_hi) / 2.0
    qw = (rect.x_hi - rect.x_lo) / 4.0
    qh = (rect.y_hi - rect.y_lo) / 4.0
    for dx, dy in ((0.0, 0.0), (qw, qh), (-qw, -qh)):
        q = Point(cx + dx, cy + dy)
        try:
            rnn_of_point(q, circles, m, eps)
            return q
        except BoundaryPoint:
            continue
    raise BoundaryPoint("no off-boundary sample point in cell")


def ctx_for_circles(circles: Iterable[NNCircle]) -> InfluenceContext:
    """Minimal context (unit weights) for circle-only pipelines."""
    return InfluenceContext(weights={c.owner: 1.0 for c in circles})


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def region_count_grid(circles: Sequence[NNCircle], m: Metric = Metric.LINF,
                      eps: float = EPS) -> int:
    """True region count r: union-find over equal-label adjacent grid cells,
    plus a virtual exterior node, so the unbounded face counts once.

    Independent of the sweep: cell labels come from direct containment tests
    of the cell centroids. Two adjacent cells get unioned iff their full RNN
    sets are equal, checked via the per-circle containment indicators.
    """
    _square_metric(m)
    circles = [c for c in circles if not c.degenerate]
    if not circles:
        return 1
    grid = grid_decomposition(circles, eps)
    nx, ny = len(grid.xs) - 1, len(grid.ys) - 1
    cxs = (grid.xs[:-1] + grid.xs[1:]) / 2.0
    cys = (grid.ys[:-1] + grid.ys[1:]) / 2.0
    x_lo = np.array([c.x_lo for c in circles])
    x_hi = np.array([c.x_hi for c in circles])
    y_lo = np.array([c.y_lo for c in circles])
    y_hi = np.array([c.y_hi for c in circles])
    # X[i,c]: column i's centroids lie in circle c's x-extent; same for Y.
    X = (cxs[:, None] >= x_lo[None, :]) & (cxs[:, None] <= x_hi[None, :])
    Y = (cys[:, None] >= y_lo[None, :]) & (cys[:, None] <= y_hi[None, :])

    dsu = _DSU(nx * ny + 1)
    exterior = nx * ny

    # Horizontal neighbours (i,j)-(i+1,j): labels equal iff no circle whose
    # x-indicator flips across the shared line covers row j.
    for i in range(nx - 1):
        flip = np.flatnonzero(X[i] ^ X[i + 1])
        if len(flip):
            same_rows = np.flatnonzero(~Y[:, flip].any(axis=1))
        else:
            same_rows = np.arange(ny)
        for j in same_rows:
            dsu.union(j * nx + i, j * nx + i + 1)
    # Vertical neighbours (i,j)-(i,j+1).
    for j in range(ny - 1):
        flip = np.flatnonzero(Y[j] ^ Y[j + 1])
        if len(flip):
            same_cols = np.flatnonzero(~X[:, flip].any(axis=1))
        else:
            same_cols = np.arange(nx)
        for i in same_cols:
            dsu.union(j * nx + i, (j + 1) * nx + i)
    # Border cells with the empty label connect to the unbounded face.
    covered = X[:, None, :] & Y[None, :, :]   # (nx, ny, n)
    empty = ~covered.any(axis=2)              # (nx, ny)
    for i in range(nx):
        for j in (0, ny - 1):
            if empty[i, j]:
                dsu.union(j * nx + i, exterior)
    for j in range(ny):
        for i in (0, nx - 1):
            if empty[i, j]:
                dsu.union(j * nx + i, exterior)
    return len({dsu.find(a) for a in range(nx * ny + 1)})
