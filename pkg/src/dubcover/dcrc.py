"""Route clustering: cut one single-robot coverage route into k contiguous tours.

Split thresholds for tour ``i`` (1-based) are

    T_i = (c(R) - 2 * c_max) * i / k + c_max

where ``c(R)`` is the full route cost with depot legs and ``c_max`` the
largest round trip (anchor -> v_i, cover v_i and v_{i+1}, v_{i+1} -> anchor)
over consecutive route vertices. Vertices left over after tour ``k`` are
appended to it.

Two readings of the budget test are supported:

``"prefix"`` (default)
    tour ``i`` takes the next vertex, then ends at the last vertex whose cost
    travelled along the parent route (depot leg included) is within ``T_i``,
    as in Frederickson-style tour splitting;
``"per_tour"``
    tour ``i`` absorbs the next vertex while its own cost is still within
    ``T_i``. Later tours get ever larger budgets, so the route is often
    exhausted before every robot receives work.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .dcs import DirectedPassNode, Route, dcs, travel
from .decompose import bcd
from .dubins import DubinsPath
from .gridmap import OccupancyGrid, Point
from .passes import generate_passes

SplitMode = Literal["prefix", "per_tour"]
Anchor = Literal["first", "depot"]


@dataclass
class Tour:
    robot_id: int
    nodes: list[DirectedPassNode]
    transitions: list[DubinsPath]
    depot: Point

    def __post_init__(self):
        if len(self.transitions) != max(len(self.nodes) - 1, 0):
            raise ValueError("a tour needs exactly one transition between consecutive passes")

    @property
    def empty(self) -> bool:
        return not self.nodes

    @property
    def pass_ids(self) -> list[int]:
        return [n.pass_id for n in self.nodes]

    @property
    def interior_cost(self) -> float:
        return sum(n.length for n in self.nodes) + sum(t.total_length for t in self.transitions)

    @property
    def cost(self) -> float:
        if not self.nodes:
            return 0.0
        return (travel(self.depot, self.nodes[0].midpoint) + self.interior_cost
                + travel(self.nodes[-1].midpoint, self.depot))

    @classmethod
    def from_route(cls, route: Route, robot_id: int, depot, start: int = 0, stop: int | None = None):
        stop = len(route.nodes) if stop is None else stop
        nodes = route.nodes[start:stop]
        trans = route.transitions[start:max(stop - 1, start)]
        return cls(robot_id, list(nodes), list(trans), Point(*depot))


@dataclass
class Split:
    """Vertex ranges ``[start, stop)`` per tour plus the quantities that drove them."""

    bounds: list[tuple[int, int]]
    route_cost: float
    c_max: float
    thresholds: list[float] = field(default_factory=list)


def split_sequence(midpoints: Sequence[tuple[float, float]], node_costs: Sequence[float],
                   edge_costs: Sequence[float], depot, k: int,
                   mode: SplitMode = "prefix", anchor: Anchor = "first") -> Split:
    """Split a route given as raw costs.

    ``node_costs[j]`` is the cost of covering vertex ``j``; ``edge_costs[j]``
    the transition from vertex ``j`` to ``j + 1``; depot legs are straight
    lines to vertex midpoints.
    """
    n = len(midpoints)
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    if n == 0:
        raise ValueError("cannot split an empty route")
    if len(node_costs) != n or len(edge_costs) != n - 1:
        raise ValueError("inconsistent route cost arrays")
    if mode not in ("prefix", "per_tour"):
        raise ValueError(f"unknown split mode {mode!r}")

    def tour_cost(a: int, b: int) -> float:
        if a == b:
            return 0.0
        return (travel(depot, midpoints[a]) + sum(node_costs[a:b]) + sum(edge_costs[a:b - 1])
                + travel(midpoints[b - 1], depot))

    total = tour_cost(0, n)
    ref = midpoints[0] if anchor == "first" else depot
    if n == 1:
        c_max = 2 * travel(ref, midpoints[0]) + node_costs[0]
    else:
        c_max = max(travel(ref, midpoints[i]) + node_costs[i] + edge_costs[i] + node_costs[i + 1]
                    + travel(midpoints[i + 1], ref) for i in range(n - 1))
    thresholds = [(total - 2 * c_max) * i / k + c_max for i in range(1, k + 1)]

    # prefix[m]: depot leg plus everything up to the end of vertex m - 1
    prefix = [0.0]
    for j in range(n):
        step = node_costs[j] + (edge_costs[j - 1] if j else travel(depot, midpoints[0]))
        prefix.append(prefix[-1] + step)

    bounds = []
    nxt = 0
    for i in range(k):
        start = nxt
        if mode == "prefix":
            # like an empty tour under the per-tour reading, every tour takes
            # the next vertex, then extends to the last vertex whose
            # cumulative cost stays within the threshold
            if nxt < n:
                nxt += 1
            while nxt < n and prefix[nxt + 1] <= thresholds[i]:
                nxt += 1
        else:
            while nxt < n and tour_cost(start, nxt) <= thresholds[i]:
                nxt += 1
        bounds.append((start, nxt))
    if nxt < n:
        s, _ = bounds[-1]
        bounds[-1] = (s, n)
    return Split(bounds, total, c_max, thresholds)


def split_route(route: Route, k: int, v_s, mode: SplitMode = "prefix",
                anchor: Anchor = "first") -> list[Tour]:
    if not route.nodes:
        raise ValueError("cannot split an empty route")
    split = split_sequence([n.midpoint for n in route.nodes], [n.length for n in route.nodes],
                           [t.total_length for t in route.transitions], v_s, k, mode, anchor)
    return [Tour.from_route(route, i, v_s, a, b) for i, (a, b) in enumerate(split.bounds)]


def dcrc(k: int, grid: OccupancyGrid, r: float, s: float, solver="heuristic", seed: int = 0,
         mode: SplitMode = "prefix", anchor: Anchor = "first") -> list[Tour]:
    """Plan k tours by splitting the single-robot route over the whole map."""
    if k < 1:
        raise ValueError(f"need at least one robot, got k={k}")
    passes = generate_passes(bcd(grid), s)
    if not passes:
        raise ValueError("map has no free space to cover")
    route = dcs(passes, r, solver, seed)
    return split_route(route, k, grid.depot, mode, anchor)


def threshold_monotone(split: Split) -> bool:
    """Thresholds never decrease with the tour index when c(R) >= 2 c_max."""
    return all(b >= a - 1e-9 * max(1.0, abs(a)) for a, b in zip(split.thresholds, split.thresholds[1:]))


def tours_concatenate(tours: Sequence[Tour], route: Route) -> bool:
    """Tours, joined in robot order, reproduce the parent route node for node."""
    return [n for t in tours for n in t.nodes] == list(route.nodes)
