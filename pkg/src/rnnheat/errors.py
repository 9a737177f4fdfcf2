"""Exception types shared across the package."""


class RnnHeatError(Exception):
    """Base class for all package errors."""


class EmptyFacilitySet(RnnHeatError):
    """Bichromatic NN requested with no facilities."""


class MonochromaticSingleton(RnnHeatError):
    """Monochromatic NN requested with fewer than two clients."""


class UnknownClientId(RnnHeatError):
    """An RNN set references a client id missing from the influence context."""


class BoundaryPoint(RnnHeatError):
    """A query point lies within epsilon of some NN-circle boundary."""


class UnsupportedMetric(RnnHeatError):
    """The requested algorithm does not support this metric."""


class CacheMiss(RnnHeatError):
    """A base-set lookup found no record; signals an event-ordering bug."""


class DegenerateBBox(RnnHeatError):
    """Raster bounding box has no area."""
