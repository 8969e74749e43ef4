"""Max tour cost of the route-splitting and area-clustering planners on the
synthetic fixtures, for several team sizes. The best of a few seeds is shown.

    python3 scripts/compare_fixtures.py [--radius 5] [--footprint 4.5] [--seeds 3]
"""
import argparse
import time

from dubcover.planner import PlanConfig, plan
from dubcover.synthetic import FIXTURES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=float, default=5.0)
    ap.add_argument("--footprint", type=float, default=4.5)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--robots", type=int, nargs="+", default=[1, 2, 5, 10])
    args = ap.parse_args()

    print(f"{'map':8s} {'k':>3s} {'alg':5s} {'passes':>6s} {'single':>9s} {'ideal':>9s} "
          f"{'max':>9s} {'max/ideal':>9s} {'util':>5s} {'cov':>6s} {'t[s]':>6s}")
    for name, make in FIXTURES.items():
        grid = make()
        for k in args.robots:
            for alg in ("dcrc", "dcac"):
                t0 = time.perf_counter()
                plans = [plan(grid, PlanConfig(k=k, radius=args.radius, footprint=args.footprint,
                                               algorithm=alg, seed=sd)) for sd in range(args.seeds)]
                dt = (time.perf_counter() - t0) / args.seeds
                best = min(plans, key=lambda p: p.report.max_cost)
                r = best.report
                print(f"{name:8s} {k:3d} {alg:5s} {len(best.passes):6d} {r.single_route_cost:9.1f} "
                      f"{r.ideal_cost:9.1f} {r.max_cost:9.1f} {r.max_over_ideal:9.3f} "
                      f"{r.utilization:5.2f} {r.coverage_fraction:6.4f} {dt:6.2f}")


if __name__ == "__main__":
    main()
