"""One entry point for both multi-robot planners plus the shared bookkeeping
(passes, single-robot reference route, metric report)."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Literal

from .dcac import Cluster, bfs_clustering, tours_from_clusters
from .dcrc import Tour, split_route
from .dcs import Route, dcs, route_cost
from .decompose import Cell, bcd
from .gridmap import OccupancyGrid
from .metrics import PlanReport, make_report
from .passes import Pass, generate_passes, pass_graph

Algorithm = Literal["dcrc", "dcac"]


@dataclass
class PlanConfig:
    k: int = 2
    radius: float = 5.0
    footprint: float = 4.5
    algorithm: Algorithm = "dcrc"
    solver: str = "heuristic"
    seed: int = 0
    split_mode: str = "prefix"  # dcrc only
    line4_depot: bool = False  # dcrc only: measure c_max from the depot

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"need at least one robot, got k={self.k}")
        if not self.radius > 0:
            raise ValueError(f"turning radius must be positive, got {self.radius}")
        if not self.footprint > 0:
            raise ValueError(f"sensor footprint must be positive, got {self.footprint}")
        if self.algorithm not in ("dcrc", "dcac"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.solver not in ("exact", "heuristic"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.split_mode not in ("prefix", "per_tour"):
            raise ValueError(f"unknown split mode {self.split_mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Plan:
    config: PlanConfig
    cells: list[Cell]
    passes: list[Pass]
    route: Route  # single-robot reference route over every pass
    tours: list[Tour]
    report: PlanReport
    clusters: list[Cluster] = field(default_factory=list)

    @property
    def single_route_cost(self) -> float:
        return self.report.single_route_cost


def plan(grid: OccupancyGrid, config: PlanConfig) -> Plan:
    cells = bcd(grid)
    passes = generate_passes(cells, config.footprint)
    if not passes:
        raise ValueError("map has no free space to cover")
    route = dcs(passes, config.radius, config.solver, config.seed)
    single = route_cost(route, grid.depot)
    clusters: list[Cluster] = []
    if config.algorithm == "dcrc":
        anchor = "depot" if config.line4_depot else "first"
        tours = split_route(route, config.k, grid.depot, config.split_mode, anchor)
    else:
        clusters = bfs_clustering(pass_graph(passes, cells), config.k, grid.depot)
        tours = tours_from_clusters(clusters, passes, config.radius, grid.depot,
                                    config.solver, config.seed)
    report = make_report(tours, single, grid, config.footprint)
    return Plan(config, cells, passes, route, tours, report, clusters)
