"""Boustrophedon cellular decomposition over a raster, sweeping along +x.

Each pixel column is cut into maximal vertical runs of free pixels
("segments"). A segment continues the cell of its left neighbour when the two
overlap one-to-one; any other overlap pattern (split, merge, birth) closes the
cells involved and opens new ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gridmap import OccupancyGrid


@dataclass
class Cell:
    """Column-convex free region.

    ``floor_px[i]``/``ceil_px[i]`` bound the free run of column
    ``col_start + i`` as a half-open range of upward pixel indices.
    """

    id: int
    col_start: int
    col_end: int
    floor_px: list[int]
    ceil_px: list[int]
    resolution: float
    neighbors: set[int] = field(default_factory=set)

    @property
    def x_min(self) -> float:
        return self.col_start * self.resolution

    @property
    def x_max(self) -> float:
        return self.col_end * self.resolution

    @property
    def floor(self) -> list[float]:
        return [f * self.resolution for f in self.floor_px]

    @property
    def ceiling(self) -> list[float]:
        return [c * self.resolution for c in self.ceil_px]

    @property
    def n_columns(self) -> int:
        return self.col_end - self.col_start

    def span(self, col: int) -> tuple[int, int]:
        i = col - self.col_start
        return self.floor_px[i], self.ceil_px[i]

    def pixel_count(self) -> int:
        return sum(c - f for f, c in zip(self.floor_px, self.ceil_px))

    def mask(self, grid: OccupancyGrid) -> np.ndarray:
        """Boolean raster (same layout as ``grid.free``) of this cell's pixels."""
        m = np.zeros(grid.free.shape, dtype=bool)
        h = grid.height
        for i, (f, c) in enumerate(zip(self.floor_px, self.ceil_px)):
            m[h - c:h - f, self.col_start + i] = True
        return m

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "x_range": [self.x_min, self.x_max],
            "col_range": [self.col_start, self.col_end],
            "floor": self.floor,
            "ceiling": self.ceiling,
            "neighbors": sorted(self.neighbors),
        }


def column_segments(column: np.ndarray) -> list[tuple[int, int]]:
    """Maximal runs of True in a 1-D boolean array as half-open ``(lo, hi)``."""
    padded = np.concatenate(([False], column, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(edges[i]), int(edges[i + 1])) for i in range(0, len(edges), 2)]


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def bcd(grid: OccupancyGrid) -> list[Cell]:
    cols = grid.columns
    cells: list[Cell] = []
    # (segment, cell id) pairs alive in the previous column
    prev: list[tuple[tuple[int, int], int]] = []

    for c in range(grid.width):
        segs = column_segments(cols[c])
        succ = {i: [j for j, s in enumerate(segs) if _overlaps(p, s)] for i, (p, _) in enumerate(prev)}
        pred = {j: [i for i, (p, _) in enumerate(prev) if _overlaps(p, s)] for j, s in enumerate(segs)}

        current: list[tuple[tuple[int, int], int]] = []
        for j, seg in enumerate(segs):
            ps = pred[j]
            if len(ps) == 1 and len(succ[ps[0]]) == 1:
                cid = prev[ps[0]][1]
                cell = cells[cid]
                cell.floor_px.append(seg[0])
                cell.ceil_px.append(seg[1])
                cell.col_end = c + 1
            else:
                cid = len(cells)
                cell = Cell(cid, c, c + 1, [seg[0]], [seg[1]], grid.resolution)
                cells.append(cell)
                for i in ps:
                    other = prev[i][1]
                    cell.neighbors.add(other)
                    cells[other].neighbors.add(cid)
            current.append((seg, cid))
        prev = current
    return cells


def cell_label_raster(grid: OccupancyGrid, cells: list[Cell]) -> np.ndarray:
    """Raster of cell ids (``-1`` for pixels outside every cell)."""
    labels = np.full(grid.free.shape, -1, dtype=np.int64)
    for cell in cells:
        labels[cell.mask(grid)] = cell.id
    return labels
