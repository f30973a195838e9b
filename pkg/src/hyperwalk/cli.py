"""Command-line front end.

Subcommands: stats (dataset summaries), run (full evaluation, JSON + CSV
output), sweep (observed-fraction grid, plot-ready CSV), bench (kernel
timing and cost-scaling report), cv (cross-validation choices only).
Every config-file key has a matching flag; flags win over the file.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__, bench, experiment, hypergraph
from . import config as config_mod
from .config import RunConfig
from .errors import HyperwalkError, ParameterError
from .scoring import ALL_KINDS, HKATZ, WALK_KINDS, MethodSpec


def _dataset_name(path: str) -> str:
    return Path(path).stem


def _dataset_checksum(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _prepare(path: str, cfg: RunConfig) -> hypergraph.Hypergraph:
    """Load, filter, deduplicate, and restrict to the largest component."""
    g = hypergraph.load(path, cfg.label_mode, cfg.min_cardinality)
    return hypergraph.largest_component(g)


def _print_table(header: list[str], rows: list[list[str]]) -> None:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))


def cmd_stats(cfg: RunConfig) -> int:
    cfg.validate()
    rows = []
    for path in cfg.dataset:
        g = _prepare(path, cfg)
        s = hypergraph.stats(g)
        rows.append(
            [_dataset_name(path), str(s.n), str(s.m), f"{s.mean_degree:.2f}", f"{s.mean_cardinality:.2f}"]
        )
    _print_table(["dataset", "vertices", "hyperedges", "mean_degree", "mean_size"], rows)
    return 0


def _provenance(cfg: RunConfig) -> dict:
    return {
        "version": __version__,
        "config_hash": config_mod.config_hash(cfg),
        "seed": cfg.seed,
        "datasets": {_dataset_name(p): _dataset_checksum(p) for p in cfg.dataset},
    }


def _write_json(obj: dict, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def _write_csv(header: list[str], rows: list[list], path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def cmd_run(cfg: RunConfig) -> int:
    cfg.validate()
    if len(cfg.rho) != 1:
        raise ParameterError("run takes a single rho; use the sweep subcommand for grids")
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    runs = []
    csv_rows = []
    table_rows = []
    for path in cfg.dataset:
        g = _prepare(path, cfg)
        for alpha in cfg.alpha:
            result = experiment.run_experiment(
                g,
                experiment.SplitSpec(cfg.rho[0], cfg.trials, cfg.seed),
                experiment.SamplingSpec(alpha, cfg.fakes_per_missing),
                list(cfg.methods),
                folds=cfg.folds,
                k_grid=cfg.k_grid,
                beta_grid=cfg.beta_grid,
                threads=cfg.threads,
            )
            runs.append({"dataset": _dataset_name(path), **result.to_json_dict()})
            for kind in result.method_kinds:
                mode = result.param_mode(kind)
                csv_rows.append(
                    [
                        _dataset_name(path),
                        _fmt(alpha),
                        kind,
                        _fmt(result.mean_auroc(kind)),
                        _fmt(result.mean_f1(kind)),
                        "" if mode is None else _fmt(mode),
                    ]
                )
                table_rows.append(
                    [
                        _dataset_name(path),
                        f"{alpha:g}",
                        kind,
                        f"{result.mean_auroc(kind):.4f}",
                        f"{result.mean_f1(kind):.4f}",
                        "-" if mode is None else f"{mode:g}",
                    ]
                )
    payload = {"provenance": _provenance(cfg), "runs": runs}
    _write_json(payload, out_dir / "results.json")
    _write_csv(
        ["dataset", "alpha", "method", "auroc_mean", "f1_mean", "chosen_param_mode"],
        csv_rows,
        out_dir / "results.csv",
    )
    _print_table(["dataset", "alpha", "method", "auroc", "f1", "param"], table_rows)
    print(f"wrote {out_dir / 'results.json'} and {out_dir / 'results.csv'}")
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    cfg.validate()
    if len(cfg.dataset) != 1:
        raise ParameterError("sweep takes exactly one dataset")
    if len(cfg.alpha) != 1:
        raise ParameterError("sweep takes exactly one alpha")
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    g = _prepare(cfg.dataset[0], cfg)
    rows = []
    for rho in sorted(cfg.rho):
        result = experiment.run_experiment(
            g,
            experiment.SplitSpec(rho, cfg.trials, cfg.seed),
            experiment.SamplingSpec(cfg.alpha[0], cfg.fakes_per_missing),
            list(cfg.methods),
            folds=cfg.folds,
            k_grid=cfg.k_grid,
            beta_grid=cfg.beta_grid,
            threads=cfg.threads,
        )
        for kind in result.method_kinds:
            rows.append([_fmt(rho), kind, "auroc", _fmt(result.mean_auroc(kind))])
            rows.append([_fmt(rho), kind, "f1", _fmt(result.mean_f1(kind))])
    _write_csv(["rho", "method", "metric", "mean"], rows, out_dir / "sweep.csv")
    _print_table(["rho", "method", "metric", "mean"], [[c if i != 3 else f"{float(c):.4f}" for i, c in enumerate(r)] for r in rows])
    print(f"wrote {out_dir / 'sweep.csv'}")
    return 0


def cmd_cv(cfg: RunConfig) -> int:
    cfg.validate()
    tunable = [k for k in cfg.methods if k in WALK_KINDS or k == HKATZ]
    if not tunable:
        raise ParameterError("cv needs at least one method with a tunable parameter")
    if len(cfg.rho) != 1:
        raise ParameterError("cv takes a single rho")
    rows = []
    for path in cfg.dataset:
        g = _prepare(path, cfg)
        for alpha in cfg.alpha:
            split_spec = experiment.SplitSpec(cfg.rho[0], cfg.trials, cfg.seed)
            sampling = experiment.SamplingSpec(alpha, cfg.fakes_per_missing)
            specs = [MethodSpec(k) for k in tunable]
            for trial in range(cfg.trials):
                observed, cand = experiment.trial_candidates(g, split_spec, sampling, trial)
                chosen = experiment.select_parameters(
                    g, observed, cand.edges, specs, cfg.seed, trial,
                    cfg.folds, cfg.k_grid, cfg.beta_grid,
                )
                for kind in tunable:
                    rows.append(
                        [_dataset_name(path), f"{alpha:g}", str(trial), kind, f"{chosen[kind]:g}"]
                    )
    _print_table(["dataset", "alpha", "trial", "method", "chosen"], rows)
    return 0


def cmd_bench(args) -> int:
    header = ["k", "degree", "row_seconds", "js_seconds", "gjs_seconds"]
    rows = []
    csv_rows = []
    for k in args.bench_k:
        points = bench.walk_cost_curve(
            n=args.bench_vertices,
            degree_grid=args.bench_degrees,
            k=k,
            cardinality=args.bench_cardinality,
            batch_rows=args.bench_rows,
            seed=args.seed or 0,
        )
        for p in points:
            rows.append(
                [str(k), f"{p.mean_degree:.1f}", f"{p.seconds_row:.3e}", f"{p.seconds_js:.3e}", f"{p.seconds_gjs:.3e}"]
            )
            csv_rows.append([k, p.mean_degree, p.seconds_row, p.seconds_js, p.seconds_gjs])
        degs = [p.mean_degree for p in points]
        print(
            f"K={k}: row-cost log-log slope vs degree = "
            f"{bench.row_cost_slope(points):.2f} (degree^K predicts {k}); "
            f"js slope = {bench.loglog_slope(degs, [p.seconds_js for p in points]):.2f}; "
            f"gjs slope = {bench.loglog_slope(degs, [p.seconds_gjs for p in points]):.2f}"
        )
    _print_table(header, rows)
    runtimes = bench.method_runtimes(seed=args.seed or 0)
    for kind, secs in runtimes.items():
        print(f"total {kind}: {secs:.3f}s")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(header, csv_rows, out_dir / "bench.csv")
        print(f"wrote {out_dir / 'bench.csv'}")
    return 0


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--dataset", action="append", help="hyperedge-list file (repeatable)")
    p.add_argument("--methods", help="comma list from: " + ",".join(ALL_KINDS))
    p.add_argument("--alpha", help="comma list of kept-vertex fractions in (0,1)")
    p.add_argument("--lambda", dest="lam", type=int, help="fake hyperedges per missing one")
    p.add_argument("--rho", help="comma list of observed fractions in (0,1)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--k-grid", help="comma list of walk lengths")
    p.add_argument("--beta-grid", help="comma list of Katz damping factors")
    p.add_argument("--folds", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--threads", type=int, help="worker processes (default: all cores)")
    p.add_argument("--min-cardinality", type=int)
    p.add_argument("--label-mode", action="store_true", default=None,
                   help="treat vertex tokens as opaque strings")


def _config_from_args(args) -> RunConfig:
    cfg = config_mod.load_config(args.config) if args.config else RunConfig()
    overrides = {
        "dataset": tuple(args.dataset) if args.dataset else None,
        "methods": tuple(p.strip() for p in args.methods.split(",")) if args.methods else None,
        "alpha": tuple(float(p) for p in args.alpha.split(",")) if args.alpha else None,
        "fakes_per_missing": args.lam,
        "rho": tuple(float(p) for p in args.rho.split(",")) if args.rho else None,
        "trials": args.trials,
        "seed": args.seed,
        "k_grid": tuple(int(p) for p in args.k_grid.split(",")) if args.k_grid else None,
        "beta_grid": tuple(float(p) for p in args.beta_grid.split(",")) if args.beta_grid else None,
        "folds": args.folds,
        "out": args.out,
        "threads": args.threads,
        "min_cardinality": args.min_cardinality,
        "label_mode": args.label_mode,
    }
    return config_mod.apply_overrides(cfg, overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwalk",
        description="Hyperlink prediction on hypergraphs: local-random-walk "
        "indices, divergence variants, classical baselines, and a "
        "negative-sampling evaluation harness.",
    )
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("stats", "dataset summaries after preprocessing"),
        ("run", "full evaluation: splits, sampling, CV, scoring, metrics"),
        ("sweep", "repeat the evaluation over a grid of observed fractions"),
        ("cv", "report cross-validated parameter choices per trial"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_config_flags(p)

    p = sub.add_parser("bench", help="kernel timings and cost-scaling slopes")
    p.add_argument("--bench-vertices", type=int, default=8192)
    p.add_argument("--bench-degrees", type=lambda s: [float(x) for x in s.split(",")],
                   default=[8.0, 16.0, 32.0])
    p.add_argument("--bench-k", type=lambda s: [int(x) for x in s.split(",")], default=[2])
    p.add_argument("--bench-cardinality", type=int, default=3)
    p.add_argument("--bench-rows", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output directory for bench.csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "bench":
            return cmd_bench(args)
        cfg = _config_from_args(args)
        if cfg.threads == 0:
            cfg = config_mod.apply_overrides(cfg, {"threads": os.cpu_count() or 1})
        if args.command == "stats":
            return cmd_stats(cfg)
        if args.command == "run":
            return cmd_run(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "cv":
            return cmd_cv(cfg)
        raise ParameterError(f"unknown command {args.command!r}")
    except HyperwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
