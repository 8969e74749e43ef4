"""Ideal per-robot cost (single-route cost shared evenly) for a given
single-robot route cost, next to the max tour cost the route splitter reaches
on a fixture map.

    python3 scripts/ideal_table.py [--cost 6863] [--map lake]
"""
import argparse

from dubcover.metrics import ideal_cost
from dubcover.planner import PlanConfig, plan
from dubcover.synthetic import FIXTURES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cost", type=float, default=6863.0)
    ap.add_argument("--map", choices=sorted(FIXTURES), default="lake")
    ap.add_argument("--max-k", type=int, default=3)
    args = ap.parse_args()

    print(f"single-route cost {args.cost:g}")
    for k in range(1, args.max_k + 1):
        print(f"  k={k}: ideal {ideal_cost(args.cost, k):.1f}")

    grid = FIXTURES[args.map]()
    print(f"\nfixture '{args.map}'")
    for k in range(1, args.max_k + 1):
        r = plan(grid, PlanConfig(k=k)).report
        print(f"  k={k}: single {r.single_route_cost:.1f}  ideal {r.ideal_cost:.1f}  "
              f"dcrc max {r.max_cost:.1f}  ({r.max_over_ideal:.3f} x ideal)")


if __name__ == "__main__":
    main()
