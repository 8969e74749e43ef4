"""Command-line front-end: ``decompose``, ``plan`` and ``stats``.

Every failure (bad flags, unreadable files, planner preconditions) exits
non-zero with a single line on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decompose import bcd
from .gridmap import GridError, read_grid
from .metrics import covered_mask, ideal_cost
from .mission import MissionError, build_mission, covered_segments, load_mission, recompute_cost
from .passes import generate_passes, pass_graph
from .planner import PlanConfig, plan
from .render import render_decomposition, render_mission


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dubcover", description="Multi-robot Dubins coverage planning.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="cell decomposition and passes of a map")
    d.add_argument("--map", required=True)
    d.add_argument("--meta", required=True)
    d.add_argument("--out", default=".")
    d.add_argument("--passes", action="store_true", help="also dump passes and the pass graph")
    d.add_argument("--footprint", type=_positive_float, default=4.5)
    d.add_argument("--svg", action="store_true")

    q = sub.add_parser("plan", help="plan k coverage tours")
    q.add_argument("--map", required=True)
    q.add_argument("--meta", required=True)
    q.add_argument("--robots", type=_positive_int, required=True)
    q.add_argument("--radius", type=_positive_float, default=5.0)
    q.add_argument("--footprint", type=_positive_float, default=4.5)
    q.add_argument("--algorithm", choices=("dcrc", "dcac"), default="dcrc")
    q.add_argument("--solver", choices=("exact", "heuristic"), default="heuristic")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--split-mode", choices=("prefix", "per_tour"), default="prefix")
    q.add_argument("--line4-depot", action="store_true",
                   help="measure the split balance term from the depot instead of the first pass")
    q.add_argument("--out", default=".")
    q.add_argument("--svg", action="store_true")

    s = sub.add_parser("stats", help="report on an existing mission")
    s.add_argument("--mission", required=True)
    s.add_argument("--map")
    s.add_argument("--meta")
    return p


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_decompose(args) -> dict:
    grid = read_grid(args.map, args.meta)
    cells = bcd(grid)
    out = Path(args.out)
    _write(out / "cells.json", json.dumps({"cells": [c.to_dict() for c in cells]}, indent=1))
    passes = []
    if args.passes:
        passes = generate_passes(cells, args.footprint)
        doc = {"footprint": args.footprint, "passes": [p.to_dict() for p in passes],
               "graph": pass_graph(passes, cells).to_dict()}
        _write(out / "passes.json", json.dumps(doc, indent=1))
    if args.svg:
        _write(out / "cells.svg", render_decomposition(grid, cells, passes))
    return {"cells": len(cells), "passes": len(passes) if args.passes else None}


def cmd_plan(args) -> dict:
    grid = read_grid(args.map, args.meta)
    cfg = PlanConfig(k=args.robots, radius=args.radius, footprint=args.footprint,
                     algorithm=args.algorithm, solver=args.solver, seed=args.seed,
                     split_mode=args.split_mode, line4_depot=args.line4_depot)
    result = plan(grid, cfg)
    mission = build_mission(result.tours, cfg.to_dict(), result.single_route_cost)
    out = Path(args.out)
    _write(out / "mission.json", mission.dumps())
    report = result.report.to_dict()
    _write(out / "report.json", json.dumps(report, indent=1))
    if args.svg:
        _write(out / "mission.svg", render_mission(mission, grid, cfg.footprint))
    return report


def mission_report(mission, grid=None) -> dict:
    stored = [r.cost for r in mission.robots]
    recomputed = [recompute_cost(r, mission.depot) for r in mission.robots]
    k = len(mission.robots)
    rep = {
        "robots": k,
        "tour_costs": recomputed,
        "stored_costs": stored,
        "max_abs_cost_error": max(abs(a - b) for a, b in zip(stored, recomputed)),
        "total_cost": sum(recomputed),
        "max_cost": max(recomputed),
        "utilization": sum(1 for r in mission.robots if r.passes) / k,
    }
    if mission.single_route_cost is not None:
        rep["single_route_cost"] = mission.single_route_cost
        rep["ideal_cost"] = ideal_cost(mission.single_route_cost, k)
        rep["max_over_ideal"] = rep["max_cost"] / rep["ideal_cost"]
    if grid is not None:
        s = float(mission.params["footprint"])
        mask = covered_mask(covered_segments(mission), grid, s)
        rep["coverage_fraction"] = float((mask & grid.free).sum() / max(grid.free_count(), 1))
    return rep


def cmd_stats(args) -> dict:
    mission = load_mission(args.mission)
    grid = None
    if args.map or args.meta:
        if not (args.map and args.meta):
            raise UsageError("stats needs both --map and --meta to report coverage")
        grid = read_grid(args.map, args.meta)
    return mission_report(mission, grid)


COMMANDS = {"decompose": cmd_decompose, "plan": cmd_plan, "stats": cmd_stats}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dubcover: usage error: {exc}", file=sys.stderr)
        return 2
    except (GridError, MissionError, OSError, ValueError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"dubcover: error: {msg}", file=sys.stderr)
        return 1
    print(json.dumps(result))
    return 0


def main() -> None:
    sys.exit(run())
