"""Plan quality measures: ideal cost, max cost, robot utilization, coverage."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .dcrc import Tour
from .gridmap import OccupancyGrid


def ideal_cost(single_cost: float, k: int) -> float:
    """Single-robot route cost shared evenly among ``k`` robots."""
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    return single_cost / k


def utilization(tours: Sequence[Tour], k: int) -> float:
    """Fraction of the ``k`` robots that were given any pass to cover."""
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    return sum(1 for t in tours if not t.empty) / k


def covered_mask(segments: Sequence[tuple[float, float, float]], grid: OccupancyGrid,
                 s: float) -> np.ndarray:
    """Pixels whose centers lie within ``s / 2`` of a vertical centerline.

    ``segments`` holds ``(x, y_low, y_high)`` triples.
    """
    res = grid.resolution
    half = 0.5 * s
    mask = np.zeros(grid.free.shape, dtype=bool)
    for x, y0, y1 in segments:
        c0 = max(0, math.floor((x - half) / res - 0.5))
        c1 = min(grid.width, math.ceil((x + half) / res + 0.5))
        j0 = max(0, math.floor((y0 - half) / res - 0.5))
        j1 = min(grid.height, math.ceil((y1 + half) / res + 0.5))
        if c0 >= c1 or j0 >= j1:
            continue
        xs = (np.arange(c0, c1) + 0.5) * res
        ys = (np.arange(j0, j1) + 0.5) * res
        dx = np.abs(xs - x)[None, :]
        dy = np.maximum(np.maximum(y0 - ys, ys - y1), 0.0)[:, None]
        hit = dx * dx + dy * dy <= half * half + 1e-9
        # rows counted upward from the bottom; raster rows run top-down
        mask[grid.height - j1:grid.height - j0, c0:c1] |= hit[::-1, :]
    return mask


def coverage_fraction(tours: Sequence[Tour], grid: OccupancyGrid, s: float) -> float:
    """Share of free pixels swept by traversed passes (transitions excluded)."""
    total = grid.free_count()
    if total == 0:
        return 0.0
    segs = [(n.entry.x, min(n.entry.y, n.exit.y), max(n.entry.y, n.exit.y))
            for t in tours for n in t.nodes]
    mask = covered_mask(segs, grid, s)
    return float((mask & grid.free).sum() / total)


@dataclass
class PlanReport:
    tour_costs: list[float]
    max_cost: float
    ideal_cost: float
    utilization: float
    coverage_fraction: float | None
    single_route_cost: float

    @property
    def max_over_ideal(self) -> float:
        return self.max_cost / self.ideal_cost if self.ideal_cost > 0 else math.inf

    def to_dict(self) -> dict:
        d = asdict(self)
        d["max_over_ideal"] = self.max_over_ideal
        return d


def make_report(tours: Sequence[Tour], single_route_cost: float, grid: OccupancyGrid | None = None,
                s: float | None = None) -> PlanReport:
    k = len(tours)
    costs = [t.cost for t in tours]
    cov = coverage_fraction(tours, grid, s) if grid is not None and s is not None else None
    return PlanReport(costs, max(costs), ideal_cost(single_route_cost, k), utilization(tours, k),
                      cov, single_route_cost)
