"""HTTP region-data service over one precomputed labeled arrangement.

Geometry and RNN sets are computed once per session; switching the influence
measure re-evaluates numbers over the existing labels under a single-flight
cache. Reads run concurrently against an immutable session object; loading a
new session is an atomic attribute swap.
"""

from __future__ import annotations

import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .geometry import EPS, Metric, Point, Rect
from .influence import Measure, evaluate
from .nnindex import Dataset, compute_nn_circles, live_circles, rotate_dataset
from .regions import (PointLocator, Region, filter_regions,
                      merge_curved_regions, merge_rect_regions,
                      regions_payload, to_canonical_json)
from .sweep import LabeledSubregion, run_crest


class SessionState:
    """Immutable arrangement plus lazily cached per-measure influences."""

    def __init__(self, *, metric: Metric, mode: str, n: int, measure: Measure,
                 ctx, base_regions: list[Region], locator: PointLocator,
                 stats: dict, bbox: tuple, samples: int = 8):
        self.metric = metric
        self.mode = mode
        self.n = n
        self.measure = measure
        self.ctx = ctx
        self.base_regions = base_regions
        self.locator = locator
        self.stats = stats
        self.bbox = bbox
        self.samples = samples
        self._cache: dict[Measure, list[float]] = {
            measure: [r.influence for r in base_regions]}
        self._lock = threading.Lock()

    def measures_available(self) -> list[str]:
        if self.ctx is None:
            return [self.measure.value]
        return [m.value for m in Measure if self.ctx.has_measure(m)]

    def influences(self, measure: Measure) -> list[float] | None:
        """Per-region influence under `measure`; None if context is missing."""
        with self._lock:
            vals = self._cache.get(measure)
            if vals is None:
                if self.ctx is None or not self.ctx.has_measure(measure):
                    return None
                vals = [evaluate(measure, r.rnn, self.ctx)
                        for r in self.base_regions]
                self._cache[measure] = vals
        return vals

    def regions_for(self, measure: Measure) -> list[Region] | None:
        vals = self.influences(measure)
        if vals is None:
            return None
        return [Region(r.rnn, v, r.order, rects=r.rects, curved=r.curved)
                for r, v in zip(self.base_regions, vals)]


def build_session(ds: Dataset, metric: Metric, measure: Measure = Measure.SIZE,
                  *, edges=None, candidate_capacity: int = 0,
                  eps: float = EPS, samples: int = 8) -> SessionState:
    """Compute the arrangement for a dataset (L1 runs in rotated space)."""
    from .influence import context_for
    from .nnindex import compute_nn, facility_rnn_sets
    from .sweep_l2 import run_crest_l2

    work = rotate_dataset(ds) if metric is Metric.L1 else ds
    sweep_metric = Metric.LINF if metric is Metric.L1 else metric
    nn = compute_nn(work, sweep_metric)
    circles = live_circles(compute_nn_circles(work, sweep_metric, nn))
    rnns = facility_rnn_sets(work, nn)
    ctx = context_for(work, rnns, edges=edges or frozenset(),
                      candidate_capacity=candidate_capacity)

    if metric is Metric.L2:
        res = run_crest_l2(circles, measure, ctx, eps=eps, collect=False,
                           tiling=True)
        base = merge_curved_regions(res.tiles, eps)
        locator = PointLocator(curved=res.tiles, measure=measure,
                               ctx=ctx, eps=eps)
        stats = {"k": res.k, "events": res.events, "lambda": res.lam}
    else:
        res = run_crest(circles, measure, ctx, eps=eps, collect=True,
                        tiling=True)
        base = merge_rect_regions(res.tiles, eps)
        locator = PointLocator(labels=res.tiles, measure=measure, ctx=ctx,
                               eps=eps)
        stats = {"k": res.k, "events": res.events, "lambda": res.lam}

    max_r = max(c.radius for c in circles)
    xs = [c.center.x for c in circles]
    ys = [c.center.y for c in circles]
    bbox = (min(xs) - max_r, max(xs) + max_r, min(ys) - max_r, max(ys) + max_r)
    return SessionState(metric=metric, mode=ds.mode, n=len(ds.clients),
                        measure=measure, ctx=ctx, base_regions=base,
                        locator=locator, stats=stats, bbox=bbox,
                        samples=samples)


def session_from_json(path: str, eps: float = EPS) -> SessionState:
    """Rebuild a session from an exported region JSON (rect metrics only)."""
    with open(path) as fh:
        doc = json.load(fh)
    meta = doc["meta"]
    metric = Metric(meta["metric"])
    if metric is Metric.L2:
        raise ValueError("l2 sessions must be built from datasets")
    measure = Measure(meta["measure"])
    tiles = []
    base = []
    for order, reg in enumerate(doc["regions"]):
        rnn = frozenset(reg["rnn"])
        rects = [Rect(*vals) for vals in reg["rects"]]
        base.append(Region(rnn, reg["influence"], order, rects=rects))
        tiles.extend(LabeledSubregion(rc, rnn, reg["influence"])
                     for rc in rects)
    locator = PointLocator(labels=tiles, measure=measure, ctx=None, eps=eps)
    if tiles:
        bbox = (min(t.rect.x_lo for t in tiles),
                max(t.rect.x_hi for t in tiles),
                min(t.rect.y_lo for t in tiles),
                max(t.rect.y_hi for t in tiles))
    else:
        bbox = (0.0, 1.0, 0.0, 1.0)
    stats = {"k": meta.get("k", 0), "events": meta.get("events", 0),
             "lambda": meta.get("lambda", 0)}
    return SessionState(metric=metric, mode=meta.get("mode", "bi"),
                        n=meta.get("n", 0), measure=measure, ctx=None,
                        base_regions=base, locator=locator, stats=stats,
                        bbox=bbox)


class RnnHeatServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, addr, session: SessionState | None = None):
        super().__init__(addr, _Handler)
        self.session = session

    def swap_session(self, session: SessionState) -> None:
        self.session = session


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):   # quiet by default
        pass

    def _send(self, code: int, payload) -> None:
        body = to_canonical_json(payload).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        parts = urlsplit(self.path)
        session = self.server.session
        if session is None:
            self._send(503, {"error": "no session loaded"})
            return
        params = parse_qs(parts.query)
        try:
            if parts.path == "/heatmap":
                self._heatmap(session, params)
            elif parts.path == "/region":
                self._region(session, params)
            elif parts.path == "/meta":
                self._meta(session)
            else:
                self._send(404, {"error": "unknown endpoint"})
        except _BadRequest as exc:
            self._send(400, {"error": str(exc)})

    def _heatmap(self, session: SessionState, params) -> None:
        threshold = _float_param(params, "threshold")
        topk = _int_param(params, "topk")
        if topk is not None and topk < 0:
            raise _BadRequest("topk must be >= 0")
        mname = _str_param(params, "measure")
        if mname is None:
            measure = session.measure
        else:
            try:
                measure = Measure(mname)
            except ValueError:
                raise _BadRequest(f"unknown measure: {mname}")
        regions = session.regions_for(measure)
        if regions is None:
            self._send(409, {"error":
                             f"measure {measure.value} needs missing context"})
            return
        kept = filter_regions(regions, threshold, topk)
        meta = {"metric": session.metric.value, "measure": measure.value,
                "n": session.n, **session.stats}
        self._send(200, regions_payload(kept, meta, session.samples))

    def _region(self, session: SessionState, params) -> None:
        x = _float_param(params, "x")
        y = _float_param(params, "y")
        if x is None or y is None:
            raise _BadRequest("x and y are required")
        res = session.locator.locate(Point(x, y))
        if res.kind == "boundary":
            self._send(200, None)
            return
        from .nnindex import id_sort_key
        self._send(200, {"rnn": sorted(res.rnn, key=id_sort_key),
                         "influence": res.influence})

    def _meta(self, session: SessionState) -> None:
        self._send(200, {"metric": session.metric.value,
                         "mode": session.mode,
                         "n": session.n,
                         **session.stats,
                         "bbox": list(session.bbox),
                         "measures_available": session.measures_available()})


class _BadRequest(Exception):
    pass


def _str_param(params, name):
    vals = params.get(name)
    return vals[-1] if vals else None


def _float_param(params, name):
    raw = _str_param(params, name)
    if raw is None:
        return None
    try:
        v = float(raw)
    except ValueError:
        raise _BadRequest(f"{name} must be a number")
    if math.isnan(v) or math.isinf(v):
        raise _BadRequest(f"{name} must be finite")
    return v


def _int_param(params, name):
    raw = _str_param(params, name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise _BadRequest(f"{name} must be an integer")


def make_server(host: str, port: int,
                session: SessionState | None = None) -> RnnHeatServer:
    return RnnHeatServer((host, port), session)
