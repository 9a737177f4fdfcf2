"""Command-line entry point: heatmap, verify, bench, serve."""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from .errors import RnnHeatError
from .geometry import EPS, Metric, Point, Rect
from .influence import Measure, context_for
from .nnindex import (Dataset, compute_nn, compute_nn_circles,
                      facility_rnn_sets, live_circles, load_clients_csv,
                      load_edges_csv, load_facilities_csv, rotate_dataset)
from .sweep import Mode, run_crest

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--clients", help="client CSV: id,x,y[,weight]")
    p.add_argument("--facilities", help="facility CSV: id,x,y[,capacity]")
    p.add_argument("--metric", choices=["linf", "l1", "l2"], default="linf")
    p.add_argument("--mode", choices=["bi", "mono"], default="bi")
    p.add_argument("--measure",
                   choices=["size", "weighted", "capacity", "edges"],
                   default="size")
    p.add_argument("--edges", help="edge CSV: client_id,client_id")
    p.add_argument("--capacity-file", dest="capacity_file",
                   help="facility capacity CSV: id,capacity")
    p.add_argument("--candidate-capacity", dest="candidate_capacity",
                   type=int, default=0,
                   help="capacity of the hypothetical new facility")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=EPS)
    p.add_argument("--worst-case", dest="worst_case", type=int, default=None,
                   help="use the generated n-square fixture instead of files")


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rnnheat",
        description="RNN heat maps over nearest-neighbor circle arrangements")
    sub = p.add_subparsers(dest="cmd", required=True)

    hp = sub.add_parser("heatmap", help="write heat-map image and region JSON")
    _add_data_flags(hp)
    hp.add_argument("--algo", choices=["crest", "crest-a", "baseline"],
                    default="crest")
    hp.add_argument("--out", help="image path (.png or .ppm)")
    hp.add_argument("--json", dest="json_out", help="region JSON path")
    hp.add_argument("--width", type=int, default=512)
    hp.add_argument("--height", type=int, default=512)
    hp.add_argument("--threshold", type=float, default=None)
    hp.add_argument("--top-k", dest="top_k", type=int, default=None)
    hp.add_argument("--scale", choices=["linear", "log"], default="linear")
    hp.set_defaults(func=cmd_heatmap)

    vp = sub.add_parser("verify", help="compare sweep labels to the oracle")
    _add_data_flags(vp)
    vp.add_argument("--samples", type=int, default=1000)
    vp.set_defaults(func=cmd_verify)

    bp = sub.add_parser("bench", help="run the timing suite, emit CSV")
    bp.add_argument("--sizes", required=True,
                    help="comma-separated client counts")
    bp.add_argument("--ratios", required=True,
                    help="comma-separated |O|/|F| ratios")
    bp.add_argument("--algos", default="crest",
                    help="comma-separated: crest,crest-a,baseline,crest-l2")
    bp.add_argument("--metric", choices=["linf", "l1", "l2"], default="linf")
    bp.add_argument("--distribution", choices=["uniform", "zipf"],
                    default="uniform")
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--reps", type=int, default=1)
    bp.add_argument("--timeout-s", dest="timeout_s", type=float, default=300.0)
    bp.add_argument("--out", help="CSV path (default: stdout)")
    bp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("serve", help="serve the region-data HTTP API")
    _add_data_flags(sp)
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--session-from-json", dest="session_json",
                    help="load a previously exported region JSON")
    sp.set_defaults(func=cmd_serve)
    return p


def _load_dataset(args, parser) -> Dataset:
    if args.clients is None:
        parser.error("--clients is required unless --worst-case is given")
    clients = load_clients_csv(args.clients)
    if args.mode == "mono":
        if args.facilities:
            parser.error("--facilities conflicts with --mode mono")
        return Dataset(clients, [], mode="mono")
    if args.facilities is None:
        parser.error("--facilities is required in bi mode")
    facilities = load_facilities_csv(args.facilities)
    if args.capacity_file:
        caps = {f.id: f.capacity for f in load_facilities_csv(args.capacity_file)}
        facilities = [dataclasses.replace(f, capacity=caps.get(f.id, f.capacity))
                      for f in facilities]
    return Dataset(clients, facilities, mode="bi")


def _check_measure_flags(args, parser) -> None:
    if args.measure == "edges" and not args.edges:
        parser.error("--measure edges requires --edges FILE")


def _pipeline(args, parser):
    """Shared setup: circles + influence context in sweep space."""
    metric = Metric(args.metric)
    if args.worst_case is not None:
        from .bench import gen_worst_case
        if metric is not Metric.LINF:
            parser.error("--worst-case fixtures are L-infinity squares")
        circles = gen_worst_case(args.worst_case)
        from .baseline import ctx_for_circles
        return metric, metric, circles, ctx_for_circles(circles), \
            len(circles)
    ds = _load_dataset(args, parser)
    work = rotate_dataset(ds) if metric is Metric.L1 else ds
    sweep_metric = Metric.LINF if metric is Metric.L1 else metric
    nn = compute_nn(work, sweep_metric)
    circles = live_circles(compute_nn_circles(work, sweep_metric, nn))
    if not circles:
        raise RnnHeatError("every NN-circle is degenerate; nothing to label")
    rnns = facility_rnn_sets(work, nn)
    edges = load_edges_csv(args.edges) if args.edges else frozenset()
    ctx = context_for(work, rnns, edges=edges,
                      candidate_capacity=args.candidate_capacity)
    return metric, sweep_metric, circles, ctx, len(ds.clients)


def cmd_heatmap(args, parser) -> int:
    from .baseline import baseline_label
    from .regions import (filter_regions, merge_curved_regions,
                          merge_rect_regions, regions_payload,
                          to_canonical_json)

    metric = Metric(args.metric)
    measure = Measure(args.measure)
    _check_measure_flags(args, parser)
    if metric is Metric.L2 and args.algo != "crest":
        parser.error(f"--algo {args.algo} supports linf and l1 only")
    metric, sweep_metric, circles, ctx, n_clients = _pipeline(args, parser)

    curved = None
    if sweep_metric is Metric.L2:
        from .sweep_l2 import run_crest_l2
        res = run_crest_l2(circles, measure, ctx, eps=args.epsilon,
                           collect=False, tiling=True)
        curved = res.tiles
        regions = merge_curved_regions(curved, args.epsilon)
        stats = {"k": res.k, "events": res.events, "lambda": res.lam}
    elif args.algo == "baseline":
        bres = baseline_label(circles, sweep_metric, measure, ctx,
                              eps=args.epsilon)
        regions = merge_rect_regions(bres.cells, args.epsilon)
        stats = {"k": bres.m, "events": 0, "lambda": bres.lam}
    else:
        mode = Mode.CREST if args.algo == "crest" else Mode.CREST_A
        res = run_crest(circles, measure, ctx, mode, eps=args.epsilon,
                        collect=True, tiling=(mode is Mode.CREST))
        tiles = res.tiles if mode is Mode.CREST else res.labels
        regions = merge_rect_regions(tiles, args.epsilon)
        stats = {"k": res.k, "events": res.events, "lambda": res.lam}

    kept = filter_regions(regions, args.threshold, args.top_k)
    meta = {"metric": metric.value, "measure": measure.value,
            "n": n_clients, **stats}
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(to_canonical_json(regions_payload(kept, meta)))
            fh.write("\n")
    if args.out:
        _render_regions(kept, curved is not None, args)
    if not args.json_out and not args.out:
        sys.stdout.write(to_canonical_json(regions_payload(kept, meta)))
        sys.stdout.write("\n")
    return EXIT_OK


def _render_regions(kept, is_curved, args) -> None:
    from .render import rasterize, write_image
    from .sweep import LabeledSubregion

    tiles = []
    for reg in kept:
        if is_curved:
            tiles.extend(reg.curved)
        else:
            tiles.extend(LabeledSubregion(rc, reg.rnn, reg.influence)
                         for rc in reg.rects)
    bbox = _tiles_bbox(tiles, is_curved)
    raster = rasterize(tiles, args.width, args.height, bbox,
                       scale=args.scale, curved=is_curved, eps=args.epsilon)
    write_image(raster, args.out)


def _tiles_bbox(tiles, is_curved) -> Rect:
    if not tiles:
        return Rect(0.0, 1.0, 0.0, 1.0)
    if is_curved:
        x_lo = min(t.x_lo for t in tiles)
        x_hi = max(t.x_hi for t in tiles)
        y_lo = min(t.lower.yc - t.lower.r for t in tiles)
        y_hi = max(t.upper.yc + t.upper.r for t in tiles)
    else:
        x_lo = min(t.rect.x_lo for t in tiles)
        x_hi = max(t.rect.x_hi for t in tiles)
        y_lo = min(t.rect.y_lo for t in tiles)
        y_hi = max(t.rect.y_hi for t in tiles)
    pad_x = 0.05 * (x_hi - x_lo) or 0.5
    pad_y = 0.05 * (y_hi - y_lo) or 0.5
    return Rect(x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y)


def cmd_verify(args, parser) -> int:
    from .baseline import rnn_of_point
    from .errors import BoundaryPoint
    from .regions import merge_curved_regions, merge_rect_regions

    metric, sweep_metric, circles, ctx, _n = _pipeline(args, parser)
    rng = np.random.default_rng(args.seed)
    x_lo = min(c.x_lo for c in circles)
    x_hi = max(c.x_hi for c in circles)
    y_lo = min(c.y_lo for c in circles)
    y_hi = max(c.y_hi for c in circles)
    pad_x = 0.1 * (x_hi - x_lo) or 1.0
    pad_y = 0.1 * (y_hi - y_lo) or 1.0

    pts = []
    oracle = []
    attempts = 0
    while len(pts) < args.samples and attempts < 50 * args.samples:
        attempts += 1
        p = Point(float(rng.uniform(x_lo - pad_x, x_hi + pad_x)),
                  float(rng.uniform(y_lo - pad_y, y_hi + pad_y)))
        try:
            oracle.append(rnn_of_point(p, circles, sweep_metric,
                                       eps=args.epsilon))
        except BoundaryPoint:
            continue
        pts.append(p)

    if sweep_metric is Metric.L2:
        from .sweep_l2 import run_crest_l2
        res = run_crest_l2(circles, eps=args.epsilon, queries=pts,
                           collect=False, tiling=True)
        r = len(merge_curved_regions(res.tiles, args.epsilon)) + 1
    else:
        res = run_crest(circles, eps=args.epsilon, queries=pts, tiling=True)
        r = len(merge_rect_regions(res.tiles, args.epsilon)) + 1
    mism = sum(1 for got, want in zip(res.query_labels, oracle)
               if got != want)
    print(f"samples={len(pts)} mismatches={mism} "
          f"k={res.k} r={r} lambda={res.lam}")
    return EXIT_OK if mism == 0 else EXIT_FAIL


def cmd_bench(args, parser) -> int:
    from .bench import BenchConfig, run_suite, write_csv

    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
        ratios = [float(r) for r in args.ratios.split(",") if r]
    except ValueError:
        parser.error("--sizes and --ratios must be comma-separated numbers")
    algos = [a.strip().replace("-", "_") for a in args.algos.split(",") if a.strip()]
    try:
        cfg = BenchConfig(sizes=sizes, ratios=ratios,
                          metric=Metric(args.metric), algorithms=algos,
                          seed=args.seed, repetitions=args.reps,
                          distribution=args.distribution,
                          timeout_s=args.timeout_s)
    except ValueError as exc:
        parser.error(str(exc))
    rows = run_suite(cfg)
    if args.out:
        write_csv(rows, args.out)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_serve(args, parser) -> int:
    from .service import build_session, make_server, session_from_json

    _check_measure_flags(args, parser)
    if args.session_json:
        session = session_from_json(args.session_json, eps=args.epsilon)
    else:
        metric = Metric(args.metric)
        if args.worst_case is not None:
            session = _worst_case_session(args)
        else:
            ds = _load_dataset(args, parser)
            edges = load_edges_csv(args.edges) if args.edges else None
            session = build_session(
                ds, metric, Measure(args.measure), edges=edges,
                candidate_capacity=args.candidate_capacity,
                eps=args.epsilon)
    server = make_server(args.host, args.port, session)
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def _worst_case_session(args):
    from .baseline import ctx_for_circles
    from .bench import gen_worst_case
    from .regions import PointLocator, merge_rect_regions
    from .service import SessionState

    circles = gen_worst_case(args.worst_case)
    ctx = ctx_for_circles(circles)
    measure = Measure(args.measure)
    res = run_crest(circles, measure, ctx, eps=args.epsilon, tiling=True)
    base = merge_rect_regions(res.tiles, args.epsilon)
    locator = PointLocator(labels=res.tiles, measure=measure, ctx=ctx,
                           eps=args.epsilon)
    max_r = max(c.radius for c in circles)
    xs = [c.center.x for c in circles]
    ys = [c.center.y for c in circles]
    return SessionState(
        metric=Metric.LINF, mode="mono", n=len(circles), measure=measure,
        ctx=ctx, base_regions=base, locator=locator,
        stats={"k": res.k, "events": res.events, "lambda": res.lam},
        bbox=(min(xs) - max_r, max(xs) + max_r,
              min(ys) - max_r, max(ys) + max_r))


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except RnnHeatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
