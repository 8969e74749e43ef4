"""Coverage passes (vertical strips one footprint wide) and their adjacency graph."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .decompose import Cell

EPS = 1e-9


@dataclass(frozen=True)
class Pass:
    id: int
    cell_id: int
    center_x: float
    y_low: float
    y_high: float
    width: float

    @property
    def length(self) -> float:
        return self.y_high - self.y_low

    @property
    def midpoint(self) -> tuple[float, float]:
        return self.center_x, 0.5 * (self.y_low + self.y_high)

    @property
    def x_range(self) -> tuple[float, float]:
        h = 0.5 * self.width
        return self.center_x - h, self.center_x + h

    def to_dict(self) -> dict:
        return {"id": self.id, "cell_id": self.cell_id, "center_x": self.center_x,
                "y_low": self.y_low, "y_high": self.y_high, "width": self.width}


@dataclass
class PassGraph:
    vertices: list[int]
    edges: dict[tuple[int, int], float] = field(default_factory=dict)  # keys (u, v) with u < v
    positions: dict[int, tuple[float, float]] = field(default_factory=dict)  # pass midpoints

    def cost(self, u: int, v: int) -> float:
        return self.edges[(u, v) if u < v else (v, u)]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        comps = []
        for root in sorted(self.vertices):
            if root in seen:
                continue
            stack, comp = [root], []
            seen.add(root)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"u": u, "v": v, "cost": c} for (u, v), c in sorted(self.edges.items())]}


def pass_centers(x_min: float, x_max: float, s: float) -> list[float]:
    """Strip centerlines for an x-interval: ``ceil(width / s)`` strips, the last one
    clamped against ``x_max``; a cell narrower than ``s`` gets one centred strip."""
    width = x_max - x_min
    n = max(1, math.ceil(width / s - EPS))
    if n == 1 and width <= s:
        return [0.5 * (x_min + x_max)]
    centers = [x_min + s * (i + 0.5) for i in range(n - 1)]
    centers.append(x_max - 0.5 * s)
    return centers


def _uncovered_runs(cell: Cell, passes: list[Pass]) -> list[tuple[int, int, int]]:
    """Runs ``(col, lo, hi)`` of cell pixels (upward indices, half-open) whose
    centers lie farther than half a footprint from every pass centerline."""
    res = cell.resolution
    out = []
    for col in range(cell.col_start, cell.col_end):
        xc = (col + 0.5) * res
        lo, hi = cell.span(col)
        hit = np.zeros(hi - lo, dtype=bool)
        yc = (np.arange(lo, hi) + 0.5) * res
        for p in passes:
            half = 0.5 * p.width
            dx = abs(p.center_x - xc)
            if dx > half + EPS:
                continue
            dy = np.maximum(np.maximum(p.y_low - yc, yc - p.y_high), 0.0)
            hit |= dx * dx + dy * dy <= half * half + EPS
        for a, b in _false_runs(hit):
            out.append((col, lo + a, lo + b))
    return out


def _false_runs(hit: np.ndarray) -> list[tuple[int, int]]:
    padded = np.concatenate(([1], hit.astype(np.int8), [1]))
    edges = np.flatnonzero(np.diff(padded))
    return [(int(edges[i]), int(edges[i + 1])) for i in range(0, len(edges), 2)]


def gen_passes(cell: Cell, s: float, start_id: int = 0, fill: bool = True) -> list[Pass]:
    """Passes covering ``cell``, ordered by ``center_x``.

    A pass's centerline spans the free run of the pixel column under its
    center, so the vehicle track itself never leaves the cell. Where the
    cell's span changes sharply within one strip width, that leaves pixels
    out of the sensor's reach (half a footprint from the centerline); with
    ``fill`` the longest such column run gets a short extra pass along its
    column, repeatedly, until every pixel of the cell is reached.
    """
    if not s > 0:
        raise ValueError(f"sensor footprint must be positive, got {s!r}")
    res = cell.resolution
    out = []
    for cx in pass_centers(cell.x_min, cell.x_max, s):
        col = min(max(math.floor(cx / res + EPS), cell.col_start), cell.col_end - 1)
        lo, hi = cell.span(col)
        out.append(Pass(0, cell.id, cx, lo * res, hi * res, float(s)))
    if fill:
        while True:
            runs = _uncovered_runs(cell, out)
            if not runs:
                break
            col, lo, hi = max(runs, key=lambda r: (r[2] - r[1], -r[0]))
            out.append(Pass(0, cell.id, (col + 0.5) * res, lo * res, hi * res, float(s)))
    out.sort(key=lambda p: (p.center_x, p.y_low))
    return [Pass(start_id + i, p.cell_id, p.center_x, p.y_low, p.y_high, p.width)
            for i, p in enumerate(out)]


def generate_passes(cells: list[Cell], s: float) -> list[Pass]:
    """Passes for every cell, with ids contiguous in cell order."""
    passes: list[Pass] = []
    for cell in cells:
        passes.extend(gen_passes(cell, s, start_id=len(passes)))
    return passes


def strips_touch(a: Pass, b: Pass) -> bool:
    """Strip rectangles share boundary or interior with positive-length y overlap."""
    ax0, ax1 = a.x_range
    bx0, bx1 = b.x_range
    x_contact = ax0 <= bx1 + EPS and bx0 <= ax1 + EPS
    y_overlap = min(a.y_high, b.y_high) - max(a.y_low, b.y_low) > EPS
    return x_contact and y_overlap


def _midpoint_distance(a: Pass, b: Pass) -> float:
    (ax, ay), (bx, by) = a.midpoint, b.midpoint
    return math.hypot(ax - bx, ay - by)


def pass_graph(passes: list[Pass], cells: list[Cell]) -> PassGraph:
    """Undirected pass adjacency weighted by midpoint distance.

    Passes are joined when their strips touch within one cell or across
    neighbouring cells. Consecutive passes of a cell and the boundary passes
    of neighbouring cells are always joined, so the graph's components follow
    the free-space components even where a strip pair has no y overlap.
    """
    by_cell: dict[int, list[Pass]] = {}
    for p in passes:
        by_cell.setdefault(p.cell_id, []).append(p)
    for ps in by_cell.values():
        ps.sort(key=lambda p: (p.center_x, p.id))
    cell_by_id = {c.id: c for c in cells}

    pairs: set[tuple[int, int]] = set()

    def join(a: Pass, b: Pass):
        if a.id != b.id:
            pairs.add((min(a.id, b.id), max(a.id, b.id)))

    for cid, ps in by_cell.items():
        for a, b in zip(ps, ps[1:]):
            join(a, b)
        for i, a in enumerate(ps):
            for b in ps[i + 1:]:
                if strips_touch(a, b):
                    join(a, b)
        cell = cell_by_id[cid]
        for nid in cell.neighbors:
            if nid <= cid or nid not in by_cell:
                continue
            other = by_cell[nid]
            left, right = (ps, other) if cell.col_end <= cell_by_id[nid].col_start else (other, ps)
            join(left[-1], right[0])
            for a in ps:
                for b in other:
                    if strips_touch(a, b):
                        join(a, b)

    lookup = {p.id: p for p in passes}
    edges = {}
    for u, v in sorted(pairs):
        edges[(u, v)] = max(_midpoint_distance(lookup[u], lookup[v]), EPS)
    return PassGraph(sorted(lookup), edges, {p.id: p.midpoint for p in passes})


def strip_coverage_mask(passes: list[Pass], grid) -> np.ndarray:
    """Pixels whose centers fall inside some pass strip rectangle."""
    xs, ys = grid.pixel_centers()
    mask = np.zeros(grid.free.shape, dtype=bool)
    for p in passes:
        x0, x1 = p.x_range
        mask |= (xs >= x0 - EPS) & (xs <= x1 + EPS) & (ys >= p.y_low - EPS) & (ys <= p.y_high + EPS)
    return mask
