"""Timing harness for the walk and divergence kernels.

The walk-row cost should scale like d^K in the mean clique-expansion degree
d: each propagation step touches roughly (support size) * d transition
entries, and the support grows by a factor d per step until it saturates.
The harness times batched row computation across a degree grid at fixed K
and reports the log-log slope, plus per-phase timings for pairwise and
generalized divergences and a whole-method runtime comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
import numpy as np

from . import divergence, localwalk, projection, scoring, synthetic
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class BenchPoint:
    mean_degree: float  # measured clique-expansion degree
    seconds_row: float  # per walk row
    seconds_js: float  # per pairwise divergence
    seconds_gjs: float  # per generalized divergence (triples)


def _measured_degree(g: Hypergraph) -> float:
    a = projection.adjacency(g)
    return float(a.nnz) / g.n


def _time(fn, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def walk_cost_curve(
    n: int,
    degree_grid,
    k: int,
    cardinality: int = 3,
    batch_rows: int = 512,
    pairs: int = 200,
    repeats: int = 3,
    seed: int = 0,
) -> list[BenchPoint]:
    """Per-row, per-JS and per-GJS seconds across a degree grid at fixed K."""
    points = []
    for d in degree_grid:
        rng = np.random.default_rng([seed, int(d * 1000), k])
        g = synthetic.regular_cardinality_hypergraph(n, cardinality, d, rng)
        p = projection.transition(g)
        sources = rng.choice(g.n, size=min(batch_rows, g.n), replace=False).tolist()

        secs_batch = _time(lambda: localwalk.walk_matrix_rows(p, sources, k), repeats)
        rows = localwalk.walk_matrix_rows(p, sources, k)

        pair_idx = [
            tuple(rng.choice(len(sources), size=2, replace=False).tolist())
            for _ in range(pairs)
        ]
        pair_rows = [(rows[sources[i]], rows[sources[j]]) for i, j in pair_idx]
        secs_js = _time(lambda: [divergence.js(a, b) for a, b in pair_rows], repeats)

        triple_idx = [
            rng.choice(len(sources), size=3, replace=False).tolist()
            for _ in range(pairs)
        ]
        triple_rows = [[rows[sources[i]] for i in t] for t in triple_idx]
        secs_gjs = _time(
            lambda: [divergence.js_generalized(t) for t in triple_rows], repeats
        )

        points.append(
            BenchPoint(
                mean_degree=_measured_degree(g),
                seconds_row=secs_batch / len(sources),
                seconds_js=secs_js / pairs,
                seconds_gjs=secs_gjs / pairs,
            )
        )
    return points


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(np.asarray(xs)), np.log(np.asarray(ys)), 1)[0])


def row_cost_slope(points) -> float:
    """Fitted exponent of per-row seconds versus mean degree."""
    return loglog_slope([p.mean_degree for p in points], [p.seconds_row for p in points])


def method_runtimes(
    n: int = 2000,
    mean_degree: float = 12.0,
    k: int = 3,
    candidates: int = 400,
    cardinality: int = 4,
    seed: int = 0,
) -> dict[str, float]:
    """Wall-clock of score_candidates per method on one shared workload."""
    rng = np.random.default_rng(seed)
    g = synthetic.regular_cardinality_hypergraph(n, cardinality, mean_degree, rng)
    cand = [
        tuple(sorted(rng.choice(g.n, size=cardinality, replace=False).tolist()))
        for _ in range(candidates)
    ]
    out = {}
    for kind in (scoring.LRW, scoring.LRW_JS, scoring.LRW_GJS):
        spec = scoring.MethodSpec(kind, k=k)
        t0 = time.perf_counter()
        scoring.score_candidates(spec, g, cand)
        out[kind] = time.perf_counter() - t0
    return out
