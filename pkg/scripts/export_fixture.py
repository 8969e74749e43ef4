"""Write a synthetic fixture as a PGM raster plus JSON sidecar for the CLI.

    python3 scripts/export_fixture.py lake out/   ->  out/lake.pgm, out/lake.json
"""
import argparse
import json
from pathlib import Path

from dubcover.synthetic import FIXTURES


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("name", choices=sorted(FIXTURES))
    ap.add_argument("out", nargs="?", default=".")
    args = ap.parse_args()
    grid = FIXTURES[args.name]()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{args.name}.pgm").write_bytes(grid.to_pgm())
    meta = {"resolution_m": grid.resolution, "depot": [grid.depot.x, grid.depot.y]}
    (out / f"{args.name}.json").write_text(json.dumps(meta))
    print(f"{out / args.name}.pgm  {grid.width}x{grid.height} px @ {grid.resolution} m")


if __name__ == "__main__":
    main()
