"""SVG 1.1 renderings of maps, cells, passes and missions.

World coordinates (meters, y up) map to SVG user units with the y axis
flipped. Occupied pixels are drawn as horizontal run rectangles. In mission
drawings the covering strips sit beneath every path element, and each
element is emitted exactly once as its own ``<path>``.
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Sequence

import numpy as np

from .decompose import Cell
from .gridmap import OccupancyGrid
from .mission import Element, MissionFile
from .passes import Pass

SVG_NS = "http://www.w3.org/2000/svg"
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".") or "0"


class Canvas:
    """World-to-SVG transform over a padded bounding box."""

    def __init__(self, x0: float, y0: float, x1: float, y1: float, scale: float = 2.0,
                 margin: float = 5.0):
        self.x0, self.y0 = x0 - margin, y0 - margin
        self.x1, self.y1 = x1 + margin, y1 + margin
        self.scale = scale
        self.root = ET.Element("svg", {
            "xmlns": SVG_NS, "version": "1.1",
            "width": _fmt((self.x1 - self.x0) * scale), "height": _fmt((self.y1 - self.y0) * scale),
            "viewBox": f"0 0 {_fmt((self.x1 - self.x0) * scale)} {_fmt((self.y1 - self.y0) * scale)}",
        })

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return (x - self.x0) * self.scale, (self.y1 - y) * self.scale

    def group(self, gid: str, **attrs) -> ET.Element:
        return ET.SubElement(self.root, "g", {"id": gid, **attrs})

    def tostring(self) -> str:
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(self.root, encoding="unicode")


def _bounds(grid: OccupancyGrid, points: Sequence[tuple[float, float]] = ()) -> tuple[float, ...]:
    w, h = grid.extent
    xs = [0.0, w, grid.depot.x] + [p[0] for p in points]
    ys = [0.0, h, grid.depot.y] + [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def draw_obstacles(canvas: Canvas, grid: OccupancyGrid) -> ET.Element:
    g = canvas.group("obstacles", fill="#444444")
    res = grid.resolution
    occ = ~grid.free
    for row in range(grid.height):
        line = occ[row]
        if not line.any():
            continue
        # run boundaries of occupied pixels along this raster row
        edges = np.flatnonzero(np.diff(np.concatenate(([0], line.astype(np.int8), [0]))))
        y_top = (grid.height - row) * res
        for c0, c1 in zip(edges[::2], edges[1::2]):
            x, y = canvas.pt(c0 * res, y_top)
            ET.SubElement(g, "rect", {"x": _fmt(x), "y": _fmt(y),
                                      "width": _fmt((c1 - c0) * res * canvas.scale),
                                      "height": _fmt(res * canvas.scale)})
    return g


def draw_depot(canvas: Canvas, grid: OccupancyGrid) -> None:
    x, y = canvas.pt(*grid.depot)
    g = canvas.group("depot")
    ET.SubElement(g, "circle", {"cx": _fmt(x), "cy": _fmt(y), "r": _fmt(2.0 * canvas.scale),
                                "fill": "#000000"})


def cell_outline(cell: Cell) -> list[tuple[float, float]]:
    """Polygon tracing the floor left to right and the ceiling back."""
    res = cell.resolution
    lower, upper = [], []
    for c in range(cell.col_start, cell.col_end):
        lo, hi = cell.span(c)
        lower += [(c * res, lo * res), ((c + 1) * res, lo * res)]
        upper += [(c * res, hi * res), ((c + 1) * res, hi * res)]
    return lower + upper[::-1]


def _strip_rect(canvas: Canvas, parent: ET.Element, p: Pass, **attrs) -> None:
    x0, x1 = p.x_range
    x, y = canvas.pt(x0, p.y_high)
    ET.SubElement(parent, "rect", {"x": _fmt(x), "y": _fmt(y),
                                   "width": _fmt((x1 - x0) * canvas.scale),
                                   "height": _fmt(max(p.length, 0.0) * canvas.scale), **attrs})


def render_decomposition(grid: OccupancyGrid, cells: Sequence[Cell],
                         passes: Sequence[Pass] = (), scale: float = 2.0) -> str:
    canvas = Canvas(*_bounds(grid), scale=scale)
    g = canvas.group("cells", stroke="#000000", **{"stroke-width": "0.5"})
    for cell in cells:
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (canvas.pt(*q) for q in cell_outline(cell)))
        ET.SubElement(g, "polygon", {"points": pts, "fill": PALETTE[cell.id % len(PALETTE)],
                                     "fill-opacity": "0.25", "data-cell": str(cell.id)})
    draw_obstacles(canvas, grid)
    if passes:
        gp = canvas.group("passes", stroke="#000000", **{"stroke-width": "0.6"})
        for p in passes:
            (x0, y0), (x1, y1) = canvas.pt(p.center_x, p.y_low), canvas.pt(p.center_x, p.y_high)
            ET.SubElement(gp, "line", {"x1": _fmt(x0), "y1": _fmt(y0), "x2": _fmt(x1), "y2": _fmt(y1),
                                       "data-pass": str(p.id)})
    draw_depot(canvas, grid)
    return canvas.tostring()


def arc_pieces(el: Element) -> list[tuple[float, float]]:
    """Split an arc into pieces of at most pi (SVG arcs are ambiguous beyond
    that); returns the end point of every piece."""
    n = max(1, math.ceil(el.sweep / math.pi - 1e-12))
    sign = 1.0 if el.direction == "ccw" else -1.0
    cx, cy = el.center
    a0 = math.atan2(el.start[1] - cy, el.start[0] - cx)
    ends = []
    for i in range(1, n + 1):
        a = a0 + sign * el.sweep * i / n
        ends.append((cx + el.radius * math.cos(a), cy + el.radius * math.sin(a)))
    ends[-1] = el.end
    return ends


def element_path(canvas: Canvas, el: Element) -> str:
    x, y = canvas.pt(*el.start)
    d = [f"M {_fmt(x)} {_fmt(y)}"]
    if el.kind == "line":
        x, y = canvas.pt(*el.end)
        d.append(f"L {_fmt(x)} {_fmt(y)}")
    else:
        r = _fmt(el.radius * canvas.scale)
        # y flip turns counter-clockwise world arcs into sweep-flag 0
        flag = "0" if el.direction == "ccw" else "1"
        for px, py in arc_pieces(el):
            x, y = canvas.pt(px, py)
            d.append(f"A {r} {r} 0 0 {flag} {_fmt(x)} {_fmt(y)}")
    return " ".join(d)


def sample_element(el: Element, step: float) -> list[tuple[float, float]]:
    n = max(2, math.ceil(el.length / step) + 1)
    if el.kind == "line":
        return [(el.start[0] + (el.end[0] - el.start[0]) * t, el.start[1] + (el.end[1] - el.start[1]) * t)
                for t in np.linspace(0.0, 1.0, n)]
    cx, cy = el.center
    a0 = math.atan2(el.start[1] - cy, el.start[0] - cx)
    sign = 1.0 if el.direction == "ccw" else -1.0
    return [(cx + el.radius * math.cos(a0 + sign * el.sweep * t), cy + el.radius * math.sin(a0 + sign * el.sweep * t))
            for t in np.linspace(0.0, 1.0, n)]


def crosses_obstacle(el: Element, grid: OccupancyGrid) -> bool:
    """True if a sample of the element lands on an occupied in-map pixel."""
    w, h = grid.extent
    for x, y in sample_element(el, 0.5 * grid.resolution):
        if 0 <= x < w and 0 <= y < h and not grid.is_free_at(x, y):
            return True
    return False


def render_mission(mission: MissionFile, grid: OccupancyGrid, footprint: float | None = None,
                   scale: float = 2.0) -> str:
    pts = []
    for r in mission.robots:
        for e in r.elements:
            pts += [e.start, e.end]
            if e.kind == "arc":
                cx, cy = e.center
                pts += [(cx - e.radius, cy - e.radius), (cx + e.radius, cy + e.radius)]
    canvas = Canvas(*_bounds(grid, pts), scale=scale)
    draw_obstacles(canvas, grid)
    s = footprint if footprint is not None else float(mission.params.get("footprint", 0.0))

    strips = canvas.group("strips", **{"fill-opacity": "0.3"})
    for r in mission.robots:
        color = PALETTE[r.robot_id % len(PALETTE)]
        for p in r.passes:
            (x, y), half = p["midpoint"], 0.5 * p["length"]
            _strip_rect(canvas, strips, Pass(p["id"], -1, x, y - half, y + half, s), fill=color)

    paths = canvas.group("elements", fill="none")
    for r in mission.robots:
        color = PALETTE[r.robot_id % len(PALETTE)]
        for i, el in enumerate(r.elements):
            attrs = {"d": element_path(canvas, el), "stroke": color,
                     "class": f"element {el.role}", "data-robot": str(r.robot_id), "data-index": str(i),
                     "stroke-width": "1.5" if el.covering else "0.8"}
            if el.role == "depot":
                attrs["stroke-dasharray"] = "4 3"
            if el.role == "transition" and crosses_obstacle(el, grid):
                attrs["class"] += " crossing"
                attrs["stroke"] = "#ff00ff"
            ET.SubElement(paths, "path", attrs)
    draw_depot(canvas, grid)
    return canvas.tostring()
