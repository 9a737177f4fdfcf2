"""Write a small gallery of heat-map images into ./gallery.

Four views of RNN influence: the nested-square worst case (every subset
depth occurs), a uniform Euclidean instance (disk arcs), a skewed
Manhattan instance (rendered in the rotated frame where diamonds become
squares), and the same skewed instance with a log colormap, which keeps
single-client regions visible next to the hot core.
"""

from __future__ import annotations

import os

from rnnheat.bench import gen_worst_case, make_instance
from rnnheat.geometry import Metric, Rect
from rnnheat.nnindex import compute_nn_circles, live_circles, rotate_dataset
from rnnheat.render import rasterize, write_image
from rnnheat.sweep import run_crest
from rnnheat.sweep_l2 import run_crest_l2

OUT_DIR = "gallery"
W, H = 480, 360


def _bbox(circles) -> Rect:
    pad = max(c.radius for c in circles)
    return Rect(min(c.x_lo for c in circles) - pad,
                max(c.x_hi for c in circles) + pad,
                min(c.y_lo for c in circles) - pad,
                max(c.y_hi for c in circles) + pad)


def _save(name: str, labels, circles, *, curved=False, scale="linear"):
    raster = rasterize(labels, W, H, _bbox(circles), scale=scale,
                       curved=curved)
    path = os.path.join(OUT_DIR, name)
    write_image(raster, path)
    print(" ", path)


def main() -> None:
    os.makedirs(OUT_DIR, exist_ok=True)
    print("writing:")

    worst = gen_worst_case(6)
    _save("worst_case_6.png", run_crest(worst, tiling=True).tiles, worst)

    disks = live_circles(compute_nn_circles(
        make_instance(48, 6.0, 11), Metric.L2))
    _save("uniform_l2.png", run_crest_l2(disks, tiling=True).tiles, disks,
          curved=True)

    rotated = live_circles(compute_nn_circles(
        rotate_dataset(make_instance(64, 8.0, 23, "zipf")), Metric.LINF))
    tiles = run_crest(rotated, tiling=True).tiles
    _save("zipf_l1_linear.png", tiles, rotated)
    _save("zipf_l1_log.png", tiles, rotated, scale="log")

    print("done; white = no influence, dark red = the maximum.")


if __name__ == "__main__":
    main()
