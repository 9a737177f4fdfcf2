"""Region assembly on top of the sweep tilings.

The full tiling (one labeled slab per strip per valid pair) is merged into
arrangement regions with union-find: two slabs belong to the same region iff
they sit in consecutive strips, carry the same RNN set, and overlap in y.
Vertical neighbors inside one strip always differ by the crossed side's
owner, so no within-strip unions are needed.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field

from .geometry import EPS, Point
from .influence import Measure, evaluate
from .nnindex import id_sort_key
from .sweep import LabeledSubregion
from .sweep_l2 import CurvedSubregion, subregion_polyline


@dataclass
class Region:
    """One arrangement face: every tile that carries its label."""

    rnn: frozenset
    influence: float
    order: int                      # first-emission index, for stable output
    rects: list = field(default_factory=list)
    curved: list = field(default_factory=list)


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _merge(entries, spans_hi, spans_lo, eps):
    """entries: (strip_x_lo, strip_x_hi, label, index).

    spans_hi[i] is tile i's y-extent at its strip's right edge, spans_lo[i]
    at its left edge; adjacency across a shared strip boundary compares the
    left tile's right-edge span with the right tile's left-edge span. Equal
    labels imply no separating side there, so overlap means one face.

    Tiles of the unbounded face are folded into a virtual exterior node and
    dropped: empty-labeled tiles leak outside whenever they are unbounded,
    sit first or last in their strip's stack, border an arrangement end or a
    gap with empty status, or reach below a neighbor strip's lowest element.
    """
    n = len(entries)
    dsu = _DSU(n + 1)
    ext = n
    strips: dict[float, list[int]] = {}
    for i, (x_lo, _x_hi, _lab, _idx) in enumerate(entries):
        strips.setdefault(x_lo, []).append(i)
    keys = sorted(strips)
    for x in keys:
        strips[x].sort(key=lambda i: spans_lo[i])

    for i in range(n):
        if math.isinf(spans_hi[i][1]):
            dsu.union(i, ext)
    for x in keys:
        stack = strips[x]
        for i in (stack[0], stack[-1]):
            if not entries[i][2]:
                dsu.union(i, ext)
        # vertical neighbors sharing an exact edge and the same label are one
        # face (grid lines, unlike sweep status elements, need not be sides)
        for ia, ib in zip(stack, stack[1:]):
            if entries[ia][2] == entries[ib][2] and \
                    spans_lo[ia][1] == spans_lo[ib][0] and \
                    spans_hi[ia][1] == spans_hi[ib][0]:
                dsu.union(ia, ib)

    linked = [False] * len(keys)    # linked[si]: si and si+1 share an edge
    for si in range(len(keys) - 1):
        if entries[strips[keys[si]][0]][1] != keys[si + 1]:
            continue    # empty status between the strips
        linked[si] = True
        # stack order at the shared edge: spans only pinch there, never invert
        cur = sorted(strips[keys[si]], key=lambda i: spans_hi[i])
        nxt = sorted(strips[keys[si + 1]], key=lambda i: spans_lo[i])
        bot_cur = spans_hi[cur[0]][0]
        bot_nxt = spans_lo[nxt[0]][0]
        for i in cur:
            if not entries[i][2] and spans_hi[i][0] < bot_nxt - eps:
                dsu.union(i, ext)
        for i in nxt:
            if not entries[i][2] and spans_lo[i][0] < bot_cur - eps:
                dsu.union(i, ext)
        a = b = 0
        while a < len(cur) and b < len(nxt):
            ia, ib = cur[a], nxt[b]
            lo = max(spans_hi[ia][0], spans_lo[ib][0])
            hi = min(spans_hi[ia][1], spans_lo[ib][1])
            if hi - lo > eps and entries[ia][2] == entries[ib][2]:
                dsu.union(ia, ib)
            if spans_hi[ia][1] < spans_lo[ib][1]:
                a += 1
            else:
                b += 1

    for si, x in enumerate(keys):
        if (si == 0 or not linked[si - 1]) or \
                (si == len(keys) - 1 or not linked[si]):
            for i in strips[x]:
                if not entries[i][2]:
                    dsu.union(i, ext)

    groups: dict[int, list[int]] = {}
    ext_root = dsu.find(ext)
    for i in range(n):
        root = dsu.find(i)
        if root != ext_root:
            groups.setdefault(root, []).append(i)
    return groups


def merge_rect_regions(labels: list[LabeledSubregion],
                       eps: float = EPS) -> list[Region]:
    """Union-find the rectangle tiling into bounded regions; the unbounded
    face (top tiles plus any empty-labeled pockets that leak outside) is
    dropped and accounted for by the callers' +1."""
    tiles = list(labels)
    entries = [(l.rect.x_lo, l.rect.x_hi, l.rnn, i) for i, l in enumerate(tiles)]
    spans = [(l.rect.y_lo, l.rect.y_hi) for l in tiles]
    out = []
    for members in _merge(entries, spans, spans, eps).values():
        members.sort()
        first = tiles[members[0]]
        reg = Region(first.rnn, first.influence, members[0],
                     rects=[tiles[i].rect for i in members])
        out.append(reg)
    out.sort(key=lambda r: r.order)
    return out


def merge_curved_regions(subs: list[CurvedSubregion],
                         eps: float = EPS) -> list[Region]:
    """Same merge over arc-bounded slabs; spans taken at shared strip edges."""
    tiles = list(subs)
    entries = [(s.x_lo, s.x_hi, s.rnn, i) for i, s in enumerate(tiles)]
    spans_hi = [(s.lower.eval_y(s.x_hi),
                 s.upper.eval_y(s.x_hi) if s.upper else math.inf)
                for s in tiles]
    spans_lo = [(s.lower.eval_y(s.x_lo),
                 s.upper.eval_y(s.x_lo) if s.upper else math.inf)
                for s in tiles]
    out = []
    for members in _merge(entries, spans_hi, spans_lo, eps).values():
        members.sort()
        first = tiles[members[0]]
        reg = Region(first.rnn, first.influence, members[0],
                     curved=[tiles[i] for i in members])
        out.append(reg)
    out.sort(key=lambda r: r.order)
    return out


def filter_regions(regions: list[Region], threshold: float | None = None,
                   top_k: int | None = None) -> list[Region]:
    """Threshold first, then the k highest influences (ties: emission order).

    The result is in non-increasing influence order, ties broken by first
    emission, so repeated runs serialize identically.
    """
    kept = [r for r in regions
            if threshold is None or r.influence >= threshold]
    kept.sort(key=lambda r: (-r.influence, r.order))
    if top_k is not None:
        kept = kept[:top_k]
    return kept


def regions_payload(regions: list[Region], meta: dict,
                    samples: int = 8) -> dict:
    """JSON-ready structure; curved boundaries become sampled polylines."""
    items = []
    for r in regions:
        entry = {"rnn": sorted(r.rnn, key=id_sort_key),
                 "influence": r.influence}
        if r.curved:
            entry["polylines"] = [
                [[p[0], p[1]] for p in subregion_polyline(s, samples)]
                for s in r.curved]
        else:
            entry["rects"] = [[rc.x_lo, rc.x_hi, rc.y_lo, rc.y_hi]
                              for rc in r.rects]
        items.append(entry)
    return {"meta": dict(meta), "regions": items}


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    return obj


def to_canonical_json(payload: dict) -> str:
    """Stable byte-for-byte serialization: sorted keys, no whitespace,
    floats rounded to 9 significant digits."""
    return json.dumps(_round_floats(payload), sort_keys=True,
                      separators=(",", ":"), allow_nan=False)


@dataclass(frozen=True)
class LocateResult:
    kind: str                 # "region" | "exterior" | "boundary"
    rnn: frozenset | None
    influence: float | None


class PointLocator:
    """Point lookup over a full tiling (rectangles or arc slabs)."""

    def __init__(self, labels: list[LabeledSubregion] | None = None,
                 curved: list[CurvedSubregion] | None = None,
                 measure: Measure = Measure.SIZE, ctx=None,
                 eps: float = EPS):
        self.eps = eps
        self._empty_influence = (evaluate(measure, frozenset(), ctx)
                                 if ctx is not None else 0.0)
        self.strips = []          # (x_lo, x_hi, sorted tiles)
        per: dict[float, list] = {}
        bounds: dict[float, float] = {}
        for t in (labels or []):
            if t.unbounded:
                continue
            per.setdefault(t.rect.x_lo, []).append(t)
            bounds[t.rect.x_lo] = t.rect.x_hi
        for t in (curved or []):
            if t.unbounded:
                continue
            per.setdefault(t.x_lo, []).append(t)
            bounds[t.x_lo] = t.x_hi
        self.curved = curved is not None
        for x_lo in sorted(per):
            tiles = per[x_lo]
            if not self.curved:
                tiles.sort(key=lambda t: t.rect.y_lo)
            self.strips.append((x_lo, bounds[x_lo], tiles))
        self._xs = [s[0] for s in self.strips]

    def locate(self, p: Point) -> LocateResult:
        eps = self.eps
        si = bisect_right(self._xs, p.x) - 1
        if si < 0 or p.x >= self.strips[si][1]:
            if si >= 0 and abs(p.x - self.strips[si][1]) < eps:
                return LocateResult("boundary", None, None)
            if si + 1 < len(self.strips) and \
                    abs(p.x - self.strips[si + 1][0]) < eps:
                return LocateResult("boundary", None, None)
            return self._exterior()
        x_lo, x_hi, tiles = self.strips[si]
        if abs(p.x - x_lo) < eps or abs(p.x - x_hi) < eps:
            return LocateResult("boundary", None, None)
        if self.curved:
            return self._locate_curved(tiles, p)
        return self._locate_rect(tiles, p)

    def _exterior(self) -> LocateResult:
        return LocateResult("exterior", frozenset(), self._empty_influence)

    def _locate_rect(self, tiles, p: Point) -> LocateResult:
        eps = self.eps
        lo, hi = 0, len(tiles)
        while lo < hi:
            mid = (lo + hi) // 2
            if tiles[mid].rect.y_lo <= p.y:
                lo = mid + 1
            else:
                hi = mid
        idx = lo - 1
        if idx >= 0:
            t = tiles[idx]
            if abs(p.y - t.rect.y_lo) < eps or abs(p.y - t.rect.y_hi) < eps:
                return LocateResult("boundary", None, None)
            if p.y < t.rect.y_hi:
                return LocateResult("region", t.rnn, t.influence)
        if idx + 1 < len(tiles) and abs(p.y - tiles[idx + 1].rect.y_lo) < eps:
            return LocateResult("boundary", None, None)
        return self._exterior()

    def _locate_curved(self, tiles, p: Point) -> LocateResult:
        eps = self.eps
        best = None
        for t in tiles:
            ya = t.lower.eval_y(p.x)
            yb = t.upper.eval_y(p.x)
            if abs(p.y - ya) < eps or abs(p.y - yb) < eps:
                return LocateResult("boundary", None, None)
            if ya < p.y < yb:
                best = t
        if best is None:
            return self._exterior()
        return LocateResult("region", best.rnn, best.influence)


def region_count_from_tiling(labels: list[LabeledSubregion],
                              eps: float = EPS, include_exterior: bool = True)\
        -> int:
    """r from the rectangle tiling; the unbounded face counts once."""
    merged = merge_rect_regions(labels, eps)
    return len(merged) + (1 if include_exterior else 0)
