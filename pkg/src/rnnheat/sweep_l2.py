"""Sweep labeling for Euclidean NN-circles (true disks).

The status holds circular arcs (lower/upper semicircles) instead of
horizontal sides. Events are circle x-extremes, circle centers, and all
pairwise boundary intersections, precomputed upfront. Within one strip every
arc is y-monotone, so per-strip min/max heights live at the strip edges and
the ordering (y_s, y_l, y at strip midpoint, owner) is a total order.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cmp_to_key

from .errors import CacheMiss
from .geometry import EPS, NNCircle, Point
from .influence import Measure, evaluate
from .nnindex import id_sort_key
from .sweep import BaseSetCache, ChangedInterval, merge_changed_intervals

ARC_LOWER = "lower"
ARC_UPPER = "upper"


@dataclass
class ArcElement:
    """One semicircle of a live circle; y_s/y_l are per-strip extremes."""

    owner: object
    half: str
    xc: float
    yc: float
    r: float
    y_s: float = 0.0
    y_l: float = 0.0

    @property
    def key(self) -> tuple:
        return (self.owner, self.half)

    def eval_y(self, x: float) -> float:
        dx = min(abs(x - self.xc), self.r)
        h = math.sqrt(max(self.r * self.r - dx * dx, 0.0))
        return self.yc - h if self.half == ARC_LOWER else self.yc + h

    def refresh(self, x_lo: float, x_hi: float) -> None:
        a = self.eval_y(x_lo)
        b = self.eval_y(x_hi)
        self.y_s = min(a, b)
        self.y_l = max(a, b)


@dataclass(frozen=True)
class L2Event:
    x: float
    lefts: tuple = ()
    rights: tuple = ()
    centers: tuple = ()
    crosses: tuple = ()   # (owner1, owner2, Point)


@dataclass(frozen=True)
class CurvedSubregion:
    """Strip-bounded slab between two consecutive arcs (upper None = open)."""

    x_lo: float
    x_hi: float
    lower: ArcElement | None
    upper: ArcElement | None
    rnn: frozenset
    influence: float
    rep: Point

    @property
    def unbounded(self) -> bool:
        return self.upper is None


def circle_pair_intersections(c1: NNCircle, c2: NNCircle,
                              eps: float = EPS) -> list[Point]:
    """Boundary intersection points of two disks; tangency gives one point."""
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    r1, r2 = c1.radius, c2.radius
    if d <= eps:
        return []
    if d > r1 + r2 + eps or d < abs(r1 - r2) - eps:
        return []
    if abs(d - (r1 + r2)) <= eps or abs(d - abs(r1 - r2)) <= eps:
        ux, uy = dx / d, dy / d
        return [Point(c1.center.x + ux * r1, c1.center.y + uy * r1)]
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    ux, uy = dx / d, dy / d
    bx = c1.center.x + ux * a
    by = c1.center.y + uy * a
    return [Point(bx - uy * h, by + ux * h), Point(bx + uy * h, by - ux * h)]


def arc_order(a: ArcElement, b: ArcElement, xm: float,
              eps: float = EPS) -> int:
    """Three-level comparison; ties fall through to owner id, then half."""
    if a.y_s < b.y_s - eps:
        return -1
    if a.y_s > b.y_s + eps:
        return 1
    if a.y_l < b.y_l - eps:
        return -1
    if a.y_l > b.y_l + eps:
        return 1
    am = a.eval_y(xm)
    bm = b.eval_y(xm)
    if am < bm - eps:
        return -1
    if am > bm + eps:
        return 1
    ka, kb = id_sort_key(a.owner), id_sort_key(b.owner)
    if ka != kb:
        return -1 if ka < kb else 1
    if a.half != b.half:
        return -1 if a.half == ARC_LOWER else 1
    return 0


def refresh_status(status: list[ArcElement], strip: tuple[float, float]) -> None:
    """Update per-strip extremes of every element; order untouched."""
    x_lo, x_hi = strip
    for arc in status:
        arc.refresh(x_lo, x_hi)


def build_l2_events(circles: list[NNCircle], eps: float = EPS) -> list[L2Event]:
    entries = []
    for i, c in enumerate(circles):
        entries.append((c.x_lo, 0, ("left", i)))
        entries.append((c.center.x, 1, ("center", i)))
        entries.append((c.x_hi, 2, ("right", i)))
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            for pt in circle_pair_intersections(circles[i], circles[j], eps):
                entries.append((pt.x, 3, ("cross", (i, j, pt))))
    entries.sort(key=lambda e: (e[0], e[1]))
    events: list[L2Event] = []
    pos = 0
    while pos < len(entries):
        gx = entries[pos][0]
        lefts, rights, centers, crosses = [], [], [], []
        while pos < len(entries) and entries[pos][0] <= gx + eps:
            if entries[pos][0] > gx and entries[pos][2][0] == "cross":
                # A crossing folded into an earlier group would sit inside
                # the following strip. Near a vertical tangent an eps shift
                # in x moves arc heights by ~sqrt(r * eps), so the strip
                # edge extremes would freeze the pre-crossing order for the
                # whole strip. Every distinct crossing x therefore stays a
                # strip boundary: there y_s ties and y_l decides the order.
                break
            kind, payload = entries[pos][2]
            if kind == "left":
                lefts.append(payload)
            elif kind == "right":
                rights.append(payload)
            elif kind == "center":
                centers.append(payload)
            else:
                crosses.append(payload)
            pos += 1
        events.append(L2Event(gx, tuple(lefts), tuple(rights),
                              tuple(centers), tuple(crosses)))
    return events


@dataclass
class CrestL2Result:
    subregions: list[CurvedSubregion]
    k: int
    events: int
    lam: int
    query_labels: list[frozenset] = field(default_factory=list)
    tiles: list[CurvedSubregion] | None = None


def _cross_halves(circle: NNCircle, pt: Point, eps: float) -> list[str]:
    if pt.y < circle.center.y - eps:
        return [ARC_LOWER]
    if pt.y > circle.center.y + eps:
        return [ARC_UPPER]
    return [ARC_LOWER, ARC_UPPER]


def run_crest_l2(circles: list[NNCircle], measure: Measure = Measure.SIZE,
                 ctx=None, *, eps: float = EPS, collect: bool = True,
                 queries: list[Point] | None = None,
                 tiling: bool = False) -> CrestL2Result:
    """Label the disk arrangement; returns subregions plus (k, events, lam).

    With `tiling`, the complete slab decomposition of every strip is also
    reconstructed from the cache records and returned in `tiles` (emissions
    cover changed slabs only, so they alone do not tile the strips).
    """
    from .baseline import ctx_for_circles

    live = [c for c in circles if not c.degenerate]
    if ctx is None:
        ctx = ctx_for_circles(live)
    events = build_l2_events(live, eps)
    if not events:
        return CrestL2Result([], 0, 0, 0,
                             [frozenset()] * len(queries or []),
                             [] if tiling else None)

    by_strip: dict[int, list[int]] = {}
    answers = [frozenset()] * len(queries or [])
    if queries:
        xs = [ev.x for ev in events]
        for qi, q in enumerate(queries):
            s = bisect_right(xs, q.x) - 1
            if 0 <= s < len(events) - 1:
                by_strip.setdefault(s, []).append(qi)

    status: list[ArcElement] = []
    cache = BaseSetCache()
    out: list[CurvedSubregion] = []
    tiles: list[CurvedSubregion] | None = [] if tiling else None
    k = 0
    lam = 0

    for ei, ev in enumerate(events):
        x_next = events[ei + 1].x if ei + 1 < len(events) else ev.x
        strip = (ev.x, x_next)
        xm = 0.5 * (ev.x + x_next)

        for idx in ev.rights:
            gone = {(live[idx].owner, ARC_LOWER), (live[idx].owner, ARC_UPPER)}
            status = [a for a in status if a.key not in gone]
            for key in gone:
                cache.drop(key)
        new_arcs = []
        for idx in ev.lefts:
            c = live[idx]
            new_arcs.append(ArcElement(c.owner, ARC_LOWER, c.center.x,
                                       c.center.y, c.radius))
            new_arcs.append(ArcElement(c.owner, ARC_UPPER, c.center.x,
                                       c.center.y, c.radius))
        status.extend(new_arcs)
        refresh_status(status, strip)
        status.sort(key=cmp_to_key(lambda a, b: arc_order(a, b, xm, eps)))
        if not status:
            continue

        by_key = {a.key: a for a in status}
        intervals = []
        for idx in ev.lefts:
            lo_arc = by_key[(live[idx].owner, ARC_LOWER)]
            hi_arc = by_key[(live[idx].owner, ARC_UPPER)]
            intervals.append(ChangedInterval(lo_arc.y_s, hi_arc.y_l))
        for o1, o2, pt in ev.crosses:
            span_lo = math.inf
            span_hi = -math.inf
            for idx, other in ((o1, o2), (o2, o1)):
                for half in _cross_halves(live[idx], pt, eps):
                    arc = by_key.get((live[idx].owner, half))
                    if arc is not None:
                        span_lo = min(span_lo, arc.y_s)
                        span_hi = max(span_hi, arc.y_l)
            if span_lo <= span_hi:
                intervals.append(ChangedInterval(span_lo, span_hi))

        def emit(sub: CurvedSubregion) -> None:
            nonlocal k, lam
            k += 1
            lam = max(lam, len(sub.rnn))
            if collect:
                out.append(sub)

        for iv in merge_changed_intervals(intervals, eps):
            st = 0
            while st < len(status) and status[st].y_l < iv.lo - eps:
                st += 1
            ed = len(status) - 1
            while ed >= 0 and status[ed].y_s > iv.hi + eps:
                ed -= 1
            if st <= ed:
                _scan_arcs(status, cache, st, ed, strip, xm, eps,
                           measure, ctx, emit)

        if tiles is not None:
            for t, arc in enumerate(status):
                snapshot = cache.get(arc.key)
                if t + 1 < len(status):
                    nxt = status[t + 1]
                    ya, yb = arc.eval_y(xm), nxt.eval_y(xm)
                    if yb - ya > eps:
                        tiles.append(CurvedSubregion(
                            strip[0], strip[1], arc, nxt, snapshot,
                            evaluate(measure, snapshot, ctx),
                            Point(xm, 0.5 * (ya + yb))))
                else:
                    tiles.append(CurvedSubregion(
                        strip[0], strip[1], arc, None, snapshot,
                        evaluate(measure, snapshot, ctx),
                        Point(xm, arc.eval_y(xm) + 1.0)))

        for qi in by_strip.get(ei, ()):
            q = queries[qi]
            best = None
            best_y = -math.inf
            for arc in status:
                ya = arc.eval_y(q.x)
                if ya < q.y and ya > best_y:
                    best_y = ya
                    best = arc
            if best is not None:
                answers[qi] = cache.get(best.key)

    return CrestL2Result(out, k, len(events), lam, answers, tiles)


def _scan_arcs(status, cache, st, ed, strip, xm, eps, measure, ctx, emit):
    """Walk arcs st..ed rebuilding sets from the record below st."""
    if st == 0:
        cur = set()
    else:
        cur = set(cache.get(status[st - 1].key))
    for t in range(st, ed + 1):
        arc = status[t]
        if arc.half == ARC_LOWER:
            cur.add(arc.owner)
        else:
            cur.remove(arc.owner)
        snapshot = frozenset(cur)
        if t < ed:
            nxt = status[t + 1]
            ya = arc.eval_y(xm)
            yb = nxt.eval_y(xm)
            if yb - ya > eps:
                emit(CurvedSubregion(strip[0], strip[1], arc, nxt, snapshot,
                                     evaluate(measure, snapshot, ctx),
                                     Point(xm, 0.5 * (ya + yb))))
        elif t == len(status) - 1:
            if cur:
                raise CacheMiss("nonempty set above the topmost arc")
            emit(CurvedSubregion(strip[0], strip[1], arc, None, snapshot,
                                 evaluate(measure, snapshot, ctx),
                                 Point(xm, arc.eval_y(xm) + 1.0)))
        cache.put(arc.key, snapshot)


def subregion_polyline(sub: CurvedSubregion, samples: int = 8,
                       top: float | None = None) -> list[tuple[float, float]]:
    """Closed boundary polyline: lower arc left-to-right, upper back."""
    n = max(samples, 1)
    xs = [sub.x_lo + (sub.x_hi - sub.x_lo) * i / n for i in range(n + 1)]
    pts = [(x, sub.lower.eval_y(x)) for x in xs]
    if sub.upper is not None:
        pts.extend((x, sub.upper.eval_y(x)) for x in reversed(xs))
    else:
        ceil = top if top is not None else sub.lower.y_l + 1.0
        pts.append((sub.x_hi, ceil))
        pts.append((sub.x_lo, ceil))
    return pts
