"""Per-robot waypoint programs: tours flattened into continuous line and arc
elements, with JSON (de)serialization and cost recomputation."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .dcrc import Tour
from .dcs import travel
from .dubins import DubinsPath

SCHEMA_VERSION = 1
MIN_ELEMENT = 1e-12  # drop degenerate zero-length segments


class MissionError(ValueError):
    pass


@dataclass
class Element:
    kind: str  # "line" or "arc"
    role: str  # "depot", "pass" or "transition"
    start: tuple[float, float]
    end: tuple[float, float]
    heading: float  # at the start, radians
    covering: bool = False
    pass_id: int | None = None
    center: tuple[float, float] | None = None
    direction: str | None = None  # "ccw" / "cw" for arcs
    sweep: float | None = None  # unsigned arc angle, radians
    radius: float | None = None

    @property
    def length(self) -> float:
        if self.kind == "arc":
            return self.radius * self.sweep
        return travel(self.start, self.end)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "Element":
        try:
            kind = d["kind"]
            if kind not in ("line", "arc"):
                raise MissionError(f"unknown element kind {kind!r}")
            el = cls(kind, d["role"], tuple(d["start"]), tuple(d["end"]), float(d["heading"]),
                     bool(d.get("covering", False)), d.get("pass_id"),
                     tuple(d["center"]) if "center" in d else None, d.get("direction"),
                     d.get("sweep"), d.get("radius"))
        except (KeyError, TypeError) as exc:
            raise MissionError(f"malformed mission element: {exc}") from None
        if kind == "arc" and None in (el.center, el.direction, el.sweep, el.radius):
            raise MissionError("arc element lacks center, direction, sweep or radius")
        return el


@dataclass
class RobotProgram:
    robot_id: int
    cost: float
    passes: list[dict]  # id, direction, midpoint, length
    elements: list[Element] = field(default_factory=list)

    @property
    def pass_ids(self) -> list[int]:
        return [p["id"] for p in self.passes]

    def to_dict(self) -> dict:
        return {"robot_id": self.robot_id, "cost": self.cost, "passes": self.passes,
                "elements": [e.to_dict() for e in self.elements]}


@dataclass
class MissionFile:
    params: dict
    depot: tuple[float, float]
    robots: list[RobotProgram]
    single_route_cost: float | None = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "params": self.params,
                "depot": list(self.depot), "single_route_cost": self.single_route_cost,
                "robots": [r.to_dict() for r in self.robots]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())


def _line(role, a, b, heading, covering=False, pass_id=None) -> Element:
    return Element("line", role, (float(a[0]), float(a[1])), (float(b[0]), float(b[1])),
                   float(heading), covering, pass_id)


def transition_elements(path: DubinsPath) -> list[Element]:
    out = []
    for seg in path.segments():
        if seg.length <= MIN_ELEMENT:
            continue
        a, b = (seg.start.x, seg.start.y), (seg.end.x, seg.end.y)
        if seg.kind == "S":
            out.append(_line("transition", a, b, seg.start.theta))
        else:
            out.append(Element("arc", "transition", a, b, float(seg.start.theta), False, None,
                               seg.center, "ccw" if seg.kind == "L" else "cw",
                               seg.length / path.radius, path.radius))
    return out


def tour_elements(tour: Tour) -> list[Element]:
    """Depot leg to the first pass entry, passes joined by transitions, leg home."""
    if tour.empty:
        return []
    depot = tour.depot
    els = []
    first = tour.nodes[0].entry
    if travel(depot, first[:2]) > MIN_ELEMENT:
        els.append(_line("depot", depot, first[:2], math.atan2(first.y - depot.y, first.x - depot.x)))
    for i, node in enumerate(tour.nodes):
        if node.length > MIN_ELEMENT:
            els.append(_line("pass", node.entry[:2], node.exit[:2], node.entry.theta, True, node.pass_id))
        if i < len(tour.transitions):
            els.extend(transition_elements(tour.transitions[i]))
    last = tour.nodes[-1].exit
    if travel(last[:2], depot) > MIN_ELEMENT:
        els.append(_line("depot", last[:2], depot, math.atan2(depot.y - last.y, depot.x - last.x)))
    return els


def build_mission(tours: list[Tour], params: dict, single_route_cost: float | None = None) -> MissionFile:
    if not tours:
        raise MissionError("a mission needs at least one tour")
    robots = []
    for t in tours:
        passes = [{"id": n.pass_id, "direction": n.direction_name,
                   "midpoint": list(n.midpoint), "length": n.length} for n in t.nodes]
        robots.append(RobotProgram(t.robot_id, t.cost, passes, tour_elements(t)))
    depot = tours[0].depot
    return MissionFile(dict(params), (depot.x, depot.y), robots, single_route_cost)


def load_mission(source) -> MissionFile:
    """Read a mission from a path or a JSON string already in memory."""
    try:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else source
        d = json.loads(text)
    except OSError as exc:
        raise MissionError(f"cannot read mission: {exc}") from None
    except json.JSONDecodeError as exc:
        raise MissionError(f"mission is not valid JSON: {exc}") from None
    if d.get("schema_version") != SCHEMA_VERSION:
        raise MissionError(f"unsupported mission schema version {d.get('schema_version')!r}")
    try:
        robots = [RobotProgram(int(r["robot_id"]), float(r["cost"]), list(r["passes"]),
                               [Element.from_dict(e) for e in r["elements"]]) for r in d["robots"]]
        return MissionFile(dict(d["params"]), tuple(d["depot"]), robots, d.get("single_route_cost"))
    except (KeyError, TypeError, ValueError) as exc:
        raise MissionError(f"malformed mission: {exc}") from None


def recompute_cost(robot: RobotProgram, depot) -> float:
    """Tour cost from the stored program: Euclidean legs between the depot and
    the first/last pass midpoints plus every pass and transition element."""
    if not robot.passes:
        return 0.0
    interior = sum(e.length for e in robot.elements if e.role != "depot")
    return (travel(depot, robot.passes[0]["midpoint"]) + interior
            + travel(robot.passes[-1]["midpoint"], depot))


def continuity_gaps(robot: RobotProgram) -> list[float]:
    """Distance between each element's end and the next element's start."""
    return [travel(a.end, b.start) for a, b in zip(robot.elements, robot.elements[1:])]


def covered_segments(mission: MissionFile) -> list[tuple[float, float, float]]:
    """``(x, y_low, y_high)`` for every pass a robot traverses."""
    out = []
    for r in mission.robots:
        for p in r.passes:
            (x, y), half = p["midpoint"], 0.5 * p["length"]
            out.append((x, y - half, y + half))
    return out
