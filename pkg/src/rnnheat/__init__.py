"""RNN heat maps over nearest-neighbor circle arrangements."""

from __future__ import annotations

from .errors import (BoundaryPoint, CacheMiss, DegenerateBBox,
                     EmptyFacilitySet, MonochromaticSingleton, RnnHeatError,
                     UnknownClientId, UnsupportedMetric)
from .geometry import (EPS, Metric, NNCircle, Point, Rect, circle_from_bounds,
                       distance, make_circle, rotate_pi4)
from .influence import InfluenceContext, Measure, context_for, evaluate
from .nnindex import (Client, Dataset, Facility, NNAssignment, compute_nn,
                      compute_nn_circles, facility_rnn_sets, live_circles,
                      rotate_dataset)
from .baseline import (BaselineResult, baseline_label, ctx_for_circles,
                        region_count_grid, rnn_of_point)
from .sweep import CrestResult, LabeledSubregion, Mode, run_crest
from .sweep_l2 import CrestL2Result, CurvedSubregion, run_crest_l2
from .regions import (PointLocator, Region, filter_regions,
                      merge_curved_regions, merge_rect_regions,
                      regions_payload, to_canonical_json)
from .render import Raster, rasterize, write_image

__version__ = "0.1.0"

__all__ = [
    "BoundaryPoint", "CacheMiss", "DegenerateBBox", "EmptyFacilitySet",
    "MonochromaticSingleton", "RnnHeatError", "UnknownClientId",
    "UnsupportedMetric",
    "EPS", "Metric", "NNCircle", "Point", "Rect", "circle_from_bounds",
    "distance", "make_circle", "rotate_pi4",
    "InfluenceContext", "Measure", "context_for", "evaluate",
    "Client", "Dataset", "Facility", "NNAssignment", "compute_nn",
    "compute_nn_circles", "facility_rnn_sets", "live_circles",
    "rotate_dataset",
    "BaselineResult", "baseline_label", "ctx_for_circles",
    "region_count_grid", "rnn_of_point",
    "CrestResult", "LabeledSubregion", "Mode", "run_crest",
    "CrestL2Result", "CurvedSubregion", "run_crest_l2",
    "PointLocator", "Region", "filter_regions", "merge_curved_regions",
    "merge_rect_regions", "regions_payload", "to_canonical_json",
    "Raster", "rasterize", "write_image",
    "__version__",
]
