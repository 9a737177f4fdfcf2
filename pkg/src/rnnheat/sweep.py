"""Sweep-line region labeling over square NN-circles (LINF, and L1 rotated).

The sweep walks the distinct x-coordinates of vertical circle sides. At each
event it maintains the line status (the sorted horizontal sides of the circles
currently cut), derives the y-intervals whose pairs changed, merges them, and
rescans only those runs, reusing cached base sets so each pair's RNN set is an
O(1) edit of its predecessor's. The ablation mode rescans the whole status at
every event from an empty base instead.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import CacheMiss
from .geometry import EPS, Metric, NNCircle, Point, Rect
from .influence import InfluenceContext, Measure, evaluate

UPPER = 0   # upper sides sort before lower sides on y-ties
LOWER = 1


class Mode(Enum):
    CREST = "crest"
    CREST_A = "crest-a"


@dataclass(frozen=True, slots=True)
class SideElement:
    y: float
    kind: int          # UPPER or LOWER
    owner: object
    key: int           # cache key: 2i+1 for circle i's lower side, 2i+2 upper

    def tiebreak(self) -> tuple:
        from .nnindex import id_sort_key
        return (self.kind, id_sort_key(self.owner))


def _less(a: SideElement, b: SideElement, eps: float) -> bool:
    if a.y < b.y - eps:
        return True
    if b.y < a.y - eps:
        return False
    return a.tiebreak() < b.tiebreak()


class LineStatus:
    """Sorted sequence of SideElements with eps-aware ordering."""

    def __init__(self, eps: float = EPS):
        self.eps = eps
        self.elems: list[SideElement] = []
        self.ys: list[float] = []

    def __len__(self) -> int:
        return len(self.elems)

    def _insert_pos(self, e: SideElement) -> int:
        lo, hi = 0, len(self.elems)
        while lo < hi:
            mid = (lo + hi) // 2
            if _less(self.elems[mid], e, self.eps):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def insert(self, e: SideElement) -> int:
        pos = self._insert_pos(e)
        self.elems.insert(pos, e)
        self.ys.insert(pos, e.y)
        return pos

    def remove(self, e: SideElement) -> int:
        pos = self._insert_pos(e)
        # the comparator is a strict weak order; scan the tie run for identity
        i = pos
        while i < len(self.elems) and not _less(e, self.elems[i], self.eps):
            if self.elems[i].key == e.key:
                del self.elems[i]
                del self.ys[i]
                return i
            i += 1
        i = pos - 1
        while i >= 0 and not _less(self.elems[i], e, self.eps):
            if self.elems[i].key == e.key:
                del self.elems[i]
                del self.ys[i]
                return i
            i -= 1
        raise KeyError(f"element {e} not in status")

    def first_geq(self, y: float) -> int:
        return bisect_left(self.ys, y - self.eps)

    def last_leq(self, y: float) -> int:
        return bisect_right(self.ys, y + self.eps) - 1


@dataclass(frozen=True, slots=True)
class ChangedInterval:
    lo: float
    hi: float


def merge_changed_intervals(raw: Sequence[ChangedInterval],
                            eps: float = EPS) -> list[ChangedInterval]:
    """Sort and merge; touching intervals ([1,3],[3,5]) merge too."""
    ivs = sorted(raw, key=lambda iv: (iv.lo, iv.hi))
    out: list[ChangedInterval] = []
    for iv in ivs:
        if out and iv.lo <= out[-1].hi + eps:
            if iv.hi > out[-1].hi:
                out[-1] = ChangedInterval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


class BaseSetCache:
    """Per-element RNN-set snapshots, keyed 2i+1 (lower) / 2i+2 (upper).

    A record keyed by element e holds the RNN set of the open region just
    above e. Interval scans refresh every record they pass over, and a base
    lookup always lands on the last element of an equal-y run, so records
    outside changed intervals stay valid.
    """

    def __init__(self):
        self._table: dict[int, frozenset] = {}

    def get(self, key: int) -> frozenset:
        try:
            return self._table[key]
        except KeyError:
            raise CacheMiss(f"no base record for key {key}") from None

    def put(self, key: int, rnn: frozenset) -> None:
        self._table[key] = rnn

    def drop(self, key: int) -> None:
        self._table.pop(key, None)

    def peek(self, key: int):
        return self._table.get(key)


@dataclass(frozen=True)
class LabeledSubregion:
    rect: Rect
    rnn: frozenset
    influence: float

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.rect.y_hi)


@dataclass(frozen=True)
class Event:
    x: float
    removes: tuple[int, ...]   # circle indices
    inserts: tuple[int, ...]


def build_events(circles: Sequence[NNCircle], eps: float = EPS) -> list[Event]:
    """Strictly ascending event x-coordinates; coordinates within eps of the
    group's first value collapse into one event."""
    entries = []
    for i, c in enumerate(circles):
        entries.append((c.x_lo, 1, i))   # insert
        entries.append((c.x_hi, 0, i))   # remove
    entries.sort(key=lambda t: t[0])
    events: list[Event] = []
    k = 0
    while k < len(entries):
        x0 = entries[k][0]
        removes, inserts = [], []
        while k < len(entries) and entries[k][0] <= x0 + eps:
            _, is_ins, idx = entries[k]
            (inserts if is_ins else removes).append(idx)
            k += 1
        events.append(Event(x0, tuple(sorted(removes)), tuple(sorted(inserts))))
    return events


@dataclass
class CrestResult:
    labels: list[LabeledSubregion] | None
    k: int
    events: int
    lam: int
    query_labels: list[frozenset] | None = None
    tiles: list[LabeledSubregion] | None = None


def run_crest(circles: Sequence[NNCircle],
              measure: Measure = Measure.SIZE,
              ctx: InfluenceContext | None = None,
              mode: Mode = Mode.CREST,
              *,
              eps: float = EPS,
              collect: bool = True,
              queries: Sequence[Point] | None = None,
              tiling: bool = False) -> CrestResult:
    """Sweep the arrangement and label its regions.

    Returns the emitted subregions (when `collect`), the labeling count k,
    the event count, the max RNN-set size over emissions, and, when `queries`
    is given, each query point's RNN label resolved live during the sweep.

    With `tiling`, every strip's complete slab decomposition is also
    reconstructed by reading the cache records (no extra set computation)
    and returned in `tiles`; it equals the full-rescan label stream.
    """
    live = [c for c in circles if not c.degenerate]
    if not live:
        raise ValueError("need at least one non-degenerate circle")
    if ctx is None:
        from .baseline import ctx_for_circles
        ctx = ctx_for_circles(live)

    events = build_events(live, eps)
    status = LineStatus(eps)
    cache = BaseSetCache()
    lowers = [SideElement(c.y_lo, LOWER, c.owner, 2 * i + 1)
              for i, c in enumerate(live)]
    uppers = [SideElement(c.y_hi, UPPER, c.owner, 2 * i + 2)
              for i, c in enumerate(live)]

    labels: list[LabeledSubregion] | None = [] if collect else None
    k = 0
    lam = 0

    query_labels: list[frozenset] | None = None
    by_strip: dict[int, list[int]] = {}
    if queries is not None:
        query_labels = [frozenset()] * len(queries)
        xs = [ev.x for ev in events]
        for qi, q in enumerate(queries):
            s = bisect_right(xs, q.x) - 1
            if 0 <= s < len(events) - 1:
                by_strip.setdefault(s, []).append(qi)
            # points left of the first event or right of the last live strip
            # are exterior: the empty preset stands

    def emit(rect: Rect, rnn: frozenset) -> None:
        nonlocal k, lam
        k += 1
        if len(rnn) > lam:
            lam = len(rnn)
        if labels is not None:
            labels.append(LabeledSubregion(rect, rnn, evaluate(measure, rnn, ctx)))

    tiles: list[LabeledSubregion] | None = [] if tiling else None

    for ei, ev in enumerate(events):
        strip_lo = ev.x
        strip_hi = events[ei + 1].x if ei + 1 < len(events) else math.inf
        # a circle whose width is within eps lands in one event as both a
        # removal and an insertion; it never enters the status
        skip = set(ev.removes) & set(ev.inserts)
        raw: list[ChangedInterval] = []
        for idx in ev.removes:
            if idx in skip:
                continue
            status.remove(lowers[idx])
            status.remove(uppers[idx])
            cache.drop(lowers[idx].key)
            cache.drop(uppers[idx].key)
            raw.append(ChangedInterval(live[idx].y_lo, live[idx].y_hi))
        for idx in ev.inserts:
            if idx in skip:
                continue
            status.insert(lowers[idx])
            status.insert(uppers[idx])
            raw.append(ChangedInterval(live[idx].y_lo, live[idx].y_hi))

        if mode is Mode.CREST:
            for iv in merge_changed_intervals(raw, eps):
                _scan_run(status, cache, status.first_geq(iv.lo),
                          status.last_leq(iv.hi), strip_lo, strip_hi, eps, emit)
        else:
            if len(status):
                _scan_run(status, cache, 0, len(status) - 1,
                          strip_lo, strip_hi, eps, emit)

        if tiles is not None and len(status):
            elems = status.elems
            for t in range(len(elems)):
                rnn = cache.get(elems[t].key)
                if t < len(elems) - 1:
                    if elems[t + 1].y - elems[t].y > eps:
                        tiles.append(LabeledSubregion(
                            Rect(strip_lo, strip_hi, elems[t].y, elems[t + 1].y),
                            rnn, evaluate(measure, rnn, ctx)))
                else:
                    tiles.append(LabeledSubregion(
                        Rect(strip_lo, strip_hi, elems[t].y, math.inf),
                        rnn, evaluate(measure, rnn, ctx)))

        for qi in by_strip.get(ei, ()):
            q = queries[qi]
            pos = bisect_right(status.ys, q.y) - 1
            if pos >= 0:
                query_labels[qi] = cache.get(status.elems[pos].key)

    return CrestResult(labels, k, len(events), lam, query_labels, tiles)


def scan_interval(status: LineStatus, iv: ChangedInterval, cache: BaseSetCache,
                  strip: tuple[float, float],
                  measure: Measure, ctx: InfluenceContext,
                  emit: Callable[[LabeledSubregion], None],
                  eps: float = EPS) -> None:
    """Standalone interval scan (the run_crest inner loop, callable alone)."""
    def _emit(rect: Rect, rnn: frozenset) -> None:
        emit(LabeledSubregion(rect, rnn, evaluate(measure, rnn, ctx)))

    _scan_run(status, cache, status.first_geq(iv.lo), status.last_leq(iv.hi),
              strip[0], strip[1], eps, _emit)


def _scan_run(status: LineStatus, cache: BaseSetCache, st: int, ed: int,
              strip_lo: float, strip_hi: float, eps: float,
              emit: Callable[[Rect, frozenset], None]) -> None:
    """Walk status[st..ed], adding owners on lower sides and removing on
    upper sides, emitting every valid pair and refreshing cache records.

    The base set comes from the record one position before st (empty set if
    none). A pair whose second element lies beyond ed is not emitted, but
    ed's record is still refreshed. When ed is the topmost status element,
    the unbounded region above it is emitted too (its set is always empty);
    that labeling is what keeps every face of the arrangement covered.
    """
    elems = status.elems
    if st > ed:
        return
    cur: set = set() if st == 0 else set(cache.get(elems[st - 1].key))
    for t in range(st, ed + 1):
        e = elems[t]
        if e.kind == LOWER:
            cur.add(e.owner)
        else:
            cur.remove(e.owner)
        snapshot = frozenset(cur)
        if t < ed:
            nxt = elems[t + 1]
            if nxt.y - e.y > eps:
                emit(Rect(strip_lo, strip_hi, e.y, nxt.y), snapshot)
        elif t == len(elems) - 1:
            assert not cur, "nonempty RNN set above the topmost side"
            emit(Rect(strip_lo, strip_hi, e.y, math.inf), snapshot)
        cache.put(e.key, snapshot)
