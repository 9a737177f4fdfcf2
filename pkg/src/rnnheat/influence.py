"""Real-valued influence measures over RNN sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, Mapping

from .errors import UnknownClientId


class Measure(Enum):
    SIZE = "size"
    WEIGHTED = "weighted"
    CAPACITY = "capacity"
    EDGES = "edges"


@dataclass(frozen=True)
class InfluenceContext:
    """Static side data consumed by the measures.

    weights: client id -> weight (every known client id appears here).
    capacities: facility id -> capacity.
    candidate_capacity: capacity of the hypothetical new facility.
    edges: unordered client-id pairs.
    facility_rnns: facility id -> RNN set (pre-insertion assignment).
    """

    weights: Mapping[object, float] = field(default_factory=dict)
    capacities: Mapping[object, int] = field(default_factory=dict)
    candidate_capacity: int = 0
    edges: frozenset = frozenset()
    facility_rnns: Mapping[object, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        known = set(self.weights)
        for e in self.edges:
            for cid in e:
                if cid not in known:
                    raise UnknownClientId(f"edge endpoint {cid!r} is not a client")

    def has_measure(self, measure: Measure) -> bool:
        if measure is Measure.EDGES:
            return bool(self.edges)
        if measure is Measure.CAPACITY:
            return bool(self.capacities) or self.candidate_capacity > 0
        return True


def context_for(ds, rnns: Mapping[object, set] | None = None,
                edges: frozenset = frozenset(),
                candidate_capacity: int = 0) -> InfluenceContext:
    """Build a context from a Dataset (weights/capacities from its records)."""
    weights = {c.id: c.weight for c in ds.clients}
    caps = {f.id: f.capacity for f in ds.effective_facilities()
            if f.capacity is not None}
    fr = {fid: frozenset(s) for fid, s in (rnns or {}).items()}
    return InfluenceContext(weights, caps, candidate_capacity, frozenset(edges), fr)


def evaluate(measure: Measure, rnn: Iterable[object], ctx: InfluenceContext) -> float:
    """Influence of one RNN set.

    SIZE      -> |rnn|
    WEIGHTED  -> sum of client weights
    EDGES     -> number of edges with both endpoints in rnn
    CAPACITY  -> min(candidate_capacity, |rnn|)
                 + sum over facilities f of min(c(f), |R(f) \\ rnn|),
                 i.e. clients captured by the candidate leave their old
                 facility's set so each client is served at most once.
    """
    rnn = frozenset(rnn)
    unknown = rnn - set(ctx.weights)
    if unknown:
        raise UnknownClientId(f"unknown client ids: {sorted(map(str, unknown))}")

    if measure is Measure.SIZE:
        return float(len(rnn))
    if measure is Measure.WEIGHTED:
        return float(sum(ctx.weights[c] for c in rnn))
    if measure is Measure.EDGES:
        return float(sum(1 for e in ctx.edges if e <= rnn))

    total = min(ctx.candidate_capacity, len(rnn))
    for fid, rset in ctx.facility_rnns.items():
        cap = ctx.capacities.get(fid, 0)
        total += min(cap, len(rset - rnn))
    return float(total)
