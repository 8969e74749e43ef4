"""Multi-robot complete-coverage planning for Dubins vehicles.

Two planners share a single-robot core: ``dcrc`` splits one coverage route
into k tours, ``dcac`` clusters the passes into k connected groups and routes
each group separately.
"""
from .dcac import bfs_clustering, dcac
from .dcrc import Tour, dcrc, split_route
from .dcs import Route, dcs, route_cost
from .decompose import Cell, bcd
from .dubins import Configuration, DubinsPath, dubins_shortest
from .gridmap import GridMeta, OccupancyGrid, Point, load_grid, read_grid
from .metrics import coverage_fraction, ideal_cost, make_report, utilization
from .passes import Pass, PassGraph, gen_passes, generate_passes, pass_graph
from .planner import Plan, PlanConfig, plan

__version__ = "0.1.0"

__all__ = [
    "Cell", "Configuration", "DubinsPath", "GridMeta", "OccupancyGrid", "Pass", "PassGraph",
    "Plan", "PlanConfig", "Point", "Route", "Tour", "bcd", "bfs_clustering", "coverage_fraction",
    "dcac", "dcrc", "dcs", "dubins_shortest", "gen_passes", "generate_passes", "ideal_cost",
    "load_grid", "make_report", "pass_graph", "plan", "read_grid", "route_cost", "split_route",
    "utilization",
]
