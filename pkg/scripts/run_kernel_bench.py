#!/usr/bin/env python3
"""Kernel cost-scaling report.

Times batched walk-row computation across a clique-expansion degree grid
and fits the log-log slope (expected to track the maximum walk length K),
plus per-divergence timings and a whole-method runtime comparison.

    python scripts/run_kernel_bench.py --out results/bench
"""

import argparse
import sys

from hyperwalk.cli import main as cli_main


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--vertices", type=int, default=32768)
    p.add_argument("--degrees", default="16,32,64")
    p.add_argument("--k", default="2,3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    args = p.parse_args()
    argv = [
        "bench",
        "--bench-vertices", str(args.vertices),
        "--bench-degrees", args.degrees,
        "--bench-k", args.k,
        "--seed", str(args.seed),
    ]
    if args.out:
        argv += ["--out", args.out]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
