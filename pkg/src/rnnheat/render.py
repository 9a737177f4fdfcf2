"""Heat-map rasterization with a white-to-dark-red colormap."""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateBBox
from .geometry import EPS, Point, Rect
from .regions import PointLocator

DARK_RED = (139, 0, 0)


class Raster:
    """Row-major intensity buffer (row 0 = top) over a world bbox."""

    def __init__(self, width: int, height: int, bbox: Rect):
        if width < 1 or height < 1:
            raise DegenerateBBox(f"raster size {width}x{height}")
        if not (bbox.x_hi - bbox.x_lo > 0 and bbox.y_hi - bbox.y_lo > 0):
            raise DegenerateBBox("bbox must have positive area")
        self.width = width
        self.height = height
        self.bbox = bbox
        self.pixels = np.zeros((height, width), dtype=np.float64)

    def pixel_center(self, col: int, row: int) -> Point:
        fx = (col + 0.5) / self.width
        fy = (row + 0.5) / self.height
        return Point(self.bbox.x_lo + fx * (self.bbox.x_hi - self.bbox.x_lo),
                     self.bbox.y_hi - fy * (self.bbox.y_hi - self.bbox.y_lo))

    def rgb_bytes(self) -> bytes:
        t = np.clip(self.pixels, 0.0, 1.0)
        rgb = np.empty((self.height, self.width, 3), dtype=np.uint8)
        rgb[..., 0] = np.rint(255.0 + (DARK_RED[0] - 255.0) * t)
        rgb[..., 1] = np.rint(255.0 + (DARK_RED[1] - 255.0) * t)
        rgb[..., 2] = np.rint(255.0 + (DARK_RED[2] - 255.0) * t)
        return rgb.tobytes()


def _normalize(value: float, vmax: float, scale: str) -> float:
    if vmax <= 0 or value <= 0:
        return 0.0
    if scale == "log":
        return math.log1p(value) / math.log1p(vmax)
    return value / vmax


def rasterize(labels, width: int, height: int, bbox: Rect,
              scale: str = "linear", curved: bool = False,
              eps: float = EPS) -> Raster:
    """Sample each pixel center against the tiling; max influence maps to 1."""
    raster = Raster(width, height, bbox)
    tiles = list(labels)
    if not tiles:
        return raster
    locator = PointLocator(labels=None if curved else tiles,
                           curved=tiles if curved else None, eps=eps)
    vmax = max((t.influence for t in tiles), default=0.0)
    nudge = 4.0 * eps
    for row in range(height):
        for col in range(width):
            p = raster.pixel_center(col, row)
            res = locator.locate(p)
            if res.kind == "boundary":
                res = locator.locate(Point(p.x + nudge, p.y + nudge))
            if res.kind == "region":
                raster.pixels[row, col] = _normalize(res.influence, vmax,
                                                     scale)
    return raster


def write_image(raster: Raster, path: str, fmt: str | None = None) -> None:
    """PPM P6 (bit-exact header) or PNG via Pillow, chosen by fmt/extension."""
    if fmt is None:
        fmt = "png" if str(path).lower().endswith(".png") else "ppm"
    fmt = fmt.lower()
    data = raster.rgb_bytes()
    if fmt == "ppm":
        header = f"P6\n{raster.width} {raster.height}\n255\n".encode("ascii")
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(data)
    elif fmt == "png":
        from PIL import Image
        img = Image.frombytes("RGB", (raster.width, raster.height), data)
        img.save(path, format="PNG")
    else:
        raise ValueError(f"unknown image format: {fmt}")


def read_ppm(path: str) -> tuple[int, int, bytes]:
    """Minimal P6 reader for round-trip checks."""
    with open(path, "rb") as fh:
        magic = fh.readline().strip()
        if magic != b"P6":
            raise ValueError("not a P6 ppm")
        dims = fh.readline().split()
        maxval = fh.readline().strip()
        if maxval != b"255":
            raise ValueError("unsupported maxval")
        w, h = int(dims[0]), int(dims[1])
        return w, h, fh.read(3 * w * h)
