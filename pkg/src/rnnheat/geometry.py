"""Point/metric primitives, NN-circle bounds, and the L1-to-Linf rotation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

EPS = 1e-9

_COS_PI4 = math.cos(math.pi / 4.0)
_SIN_PI4 = math.sin(math.pi / 4.0)


class Metric(Enum):
    LINF = "linf"
    L1 = "l1"
    L2 = "l2"


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class NNCircle:
    """A client's nearest-neighbor ball.

    For LINF the ball is the axis-aligned square [x_lo,x_hi] x [y_lo,y_hi];
    for L1 it is a diamond (handled by rotating the input into LINF space);
    for L2 a disk. Bounds are stored explicitly so constructions that start
    from exact corner coordinates keep bit-exact ties.
    """

    owner: object
    center: Point
    radius: float
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("negative radius")
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError("inverted circle bounds")

    @property
    def degenerate(self) -> bool:
        return self.radius == 0.0


def make_circle(owner: object, center: Point, radius: float) -> NNCircle:
    return NNCircle(
        owner, center, radius,
        center.x - radius, center.x + radius,
        center.y - radius, center.y + radius,
    )


def circle_from_bounds(owner: object, x_lo: float, x_hi: float,
                       y_lo: float, y_hi: float) -> NNCircle:
    """Square circle given by exact bounds (center/radius derived)."""
    center = Point((x_lo + x_hi) / 2.0, (y_lo + y_hi) / 2.0)
    return NNCircle(owner, center, (x_hi - x_lo) / 2.0, x_lo, x_hi, y_lo, y_hi)


@dataclass(frozen=True, slots=True)
class Rect:
    """Axis-aligned rectangle with open-interior semantics.

    y_lo == y_hi encodes a degenerate rectangle that contains no point.
    """

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self) -> None:
        if not self.x_lo < self.x_hi:
            raise ValueError("rect needs x_lo < x_hi")
        if self.y_lo > self.y_hi:
            raise ValueError("rect needs y_lo <= y_hi")

    def contains(self, p: Point) -> bool:
        return (self.x_lo < p.x < self.x_hi) and (self.y_lo < p.y < self.y_hi)


def distance(p: Point, q: Point, m: Metric) -> float:
    dx = abs(p.x - q.x)
    dy = abs(p.y - q.y)
    if m is Metric.LINF:
        return dx if dx > dy else dy
    if m is Metric.L1:
        return dx + dy
    return math.hypot(dx, dy)


def rotate_pi4(p: Point) -> Point:
    """Counter-clockwise rotation by pi/4.

    L1 distances in the input equal sqrt(2) times LINF distances in the
    image; the scale factor is uniform, so NN relations are preserved and
    no renormalization is done.
    """
    return Point(p.x * _COS_PI4 - p.y * _SIN_PI4,
                 p.x * _SIN_PI4 + p.y * _COS_PI4)


def circle_contains(c: NNCircle, p: Point, m: Metric, closed: bool = True) -> bool:
    d = distance(c.center, p, m)
    return d <= c.radius if closed else d < c.radius
