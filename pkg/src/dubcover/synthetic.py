"""Synthetic maps used by the experiments and the test-suite.

The three named fixtures mimic the kinds of environment in the field study at
desk scale: an open square, an irregular region with several islands, and a
larger lobed lake. All are deterministic for a given seed.
"""
from __future__ import annotations

import numpy as np

from .gridmap import OccupancyGrid, Point
from .passes import Pass


def _centers(width: int, height: int, res: float) -> tuple[np.ndarray, np.ndarray]:
    xs = (np.arange(width) + 0.5) * res
    ys = (height - np.arange(height) - 0.5) * res
    return np.meshgrid(xs, ys)


def _blob(xs, ys, cx, cy, radius, rng, harmonics=4, roughness=0.18, aspect=1.0):
    """Star-shaped region with a smooth random boundary."""
    ang = np.arctan2(ys - cy, (xs - cx) / aspect)
    dist = np.hypot((xs - cx) / aspect, ys - cy)
    rad = np.ones_like(ang)
    for h in range(2, harmonics + 2):
        amp = roughness * rng.uniform(0.3, 1.0) / h
        rad += amp * np.cos(h * ang + rng.uniform(0, 2 * np.pi))
    return dist <= radius * rad


def _ellipse(xs, ys, cx, cy, a, b):
    return ((xs - cx) / a) ** 2 + ((ys - cy) / b) ** 2 <= 1.0


def open_square(size_m: float = 200.0, res: float = 2.0) -> OccupancyGrid:
    n = int(round(size_m / res))
    return OccupancyGrid(np.ones((n, n), dtype=bool), res, Point(-10.0, -10.0))


def island_region(seed: int = 5, res: float = 2.0) -> OccupancyGrid:
    """Irregular region (about 260 x 200 m) with several islands."""
    rng = np.random.default_rng(seed)
    w, h = 130, 100
    xs, ys = _centers(w, h, res)
    free = _blob(xs, ys, 130.0, 100.0, 92.0, rng, harmonics=5, roughness=0.25, aspect=1.3)
    for _ in range(4):
        cx, cy = rng.uniform(60, 200), rng.uniform(50, 150)
        free &= ~_ellipse(xs, ys, cx, cy, rng.uniform(8, 18), rng.uniform(6, 14))
    return OccupancyGrid(free, res, Point(0.0, 0.0))


def lobed_lake(seed: int = 11, res: float = 3.0) -> OccupancyGrid:
    """Larger lake (about 360 x 300 m) made of overlapping lobes with two islands."""
    rng = np.random.default_rng(seed)
    w, h = 120, 100
    xs, ys = _centers(w, h, res)
    free = _blob(xs, ys, 150.0, 150.0, 100.0, rng, aspect=1.1)
    free |= _blob(xs, ys, 270.0, 110.0, 70.0, rng)
    free |= _blob(xs, ys, 230.0, 230.0, 55.0, rng)
    free &= ~_ellipse(xs, ys, 140.0, 150.0, 20.0, 12.0)
    free &= ~_ellipse(xs, ys, 260.0, 120.0, 10.0, 16.0)
    return OccupancyGrid(free, res, Point(-5.0, 150.0))


FIXTURES = {
    "square": open_square,
    "islands": island_region,
    "lake": lobed_lake,
}


def random_map(rng: np.random.Generator, size: int = 64, density: float | None = None,
               res: float = 1.0) -> OccupancyGrid:
    """Square map with rectangular and elliptical obstacles covering roughly
    ``density`` of the area (drawn from [0, 0.2] when not given)."""
    if density is None:
        density = float(rng.uniform(0.0, 0.2))
    free = np.ones((size, size), dtype=bool)
    xs, ys = _centers(size, size, 1.0)
    target = density * size * size
    attempts = 0
    while (~free).sum() < target and attempts < 200:
        attempts += 1
        cx, cy = rng.uniform(0, size, 2)
        if rng.random() < 0.5:
            a, b = rng.uniform(2, size / 6, 2)
            block = (np.abs(xs - cx) <= a) & (np.abs(ys - cy) <= b)
        else:
            a, b = rng.uniform(2, size / 7, 2)
            block = _ellipse(xs, ys, cx, cy, a, b)
        free &= ~block
    depot = Point(float(rng.uniform(-5, 0)), float(rng.uniform(0, size * res)))
    return OccupancyGrid(free, res, depot)


def random_passes(rng: np.random.Generator, n: int, span: float = 60.0, s: float = 4.5) -> list[Pass]:
    """Free-floating vertical passes for solver experiments."""
    xs = rng.uniform(0.0, span, n)
    lows = rng.uniform(0.0, 0.5 * span, n)
    lengths = rng.uniform(0.0, 0.6 * span, n)
    return [Pass(i, 0, float(x), float(lo), float(lo + ln), s)
            for i, (x, lo, ln) in enumerate(zip(xs, lows, lengths))]
