#!/usr/bin/env python3
"""Full evaluation over several datasets and alpha values.

Produces the aggregate AUROC / F1 table (JSON + CSV under --out) for all
six methods, ten trials each, at the default 4:1 observed/missing split.

    python scripts/run_full_eval.py data/*.txt --out results/full
"""

import argparse
import sys

from hyperwalk.cli import main as cli_main


def parse_args():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("datasets", nargs="+", help="hyperedge-list files")
    p.add_argument("--alpha", default="0.2,0.5,0.8")
    p.add_argument("--lambda", dest="lam", type=int, default=3)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results/full")
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--min-cardinality", type=int, default=2)
    return p.parse_args()


def main() -> int:
    args = parse_args()
    argv = ["run"]
    for d in args.datasets:
        argv += ["--dataset", d]
    argv += [
        "--alpha", args.alpha,
        "--lambda", str(args.lam),
        "--trials", str(args.trials),
        "--seed", str(args.seed),
        "--out", args.out,
        "--threads", str(args.threads),
        "--min-cardinality", str(args.min_cardinality),
    ]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
