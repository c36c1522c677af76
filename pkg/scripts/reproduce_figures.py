"""Run every shipped recipe and write plot-ready tables to an output directory."""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from irrcorr import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures_data")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--only", nargs="*", help="recipe names to run (default: all)")
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = args.only or cli.recipe_names()
    status = 0
    for name in names:
        command = cli.load_config(name)["command"]
        target = out_dir / f"{name}.{args.format}"
        t0 = time.perf_counter()
        code = cli.main(
            [command, "--config", name, "--out", str(target), "--format", args.format, "--workers", str(args.workers)]
        )
        print(f"{name:>20s}  {command:<10s} exit {code}  {time.perf_counter() - t0:6.1f} s  -> {target}")
        status = status or code
    return status


if __name__ == "__main__":
    sys.exit(main())
