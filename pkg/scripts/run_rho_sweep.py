#!/usr/bin/env python3
"""Observed-fraction sweep on one dataset at fixed alpha.

Writes plot-ready long-format CSV (rho, method, metric, mean), covering
rho from 0.2 to 0.9 by default. Dense datasets work best; sparse ones
fragment at low rho (the run logs a warning per disconnected trial).

    python scripts/run_rho_sweep.py data/enron-email.txt --out results/sweep
"""

import argparse
import sys

from hyperwalk.cli import main as cli_main


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("dataset")
    p.add_argument("--alpha", default="0.5")
    p.add_argument("--rho", default="0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results/sweep")
    p.add_argument("--threads", type=int, default=0)
    args = p.parse_args()
    return cli_main(
        [
            "sweep",
            "--dataset", args.dataset,
            "--alpha", args.alpha,
            "--rho", args.rho,
            "--trials", str(args.trials),
            "--seed", str(args.seed),
            "--out", args.out,
            "--threads", str(args.threads),
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
