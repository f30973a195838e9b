"""End-to-end evaluation protocol.

A run repeats, per trial: randomly split hyperedges into observed and
missing sets, sample fake hyperedges for each missing one, pick each
method's hyperparameter by k-fold cross-validation on the observed set,
score the candidate set, and measure AUROC plus F1 at cutoff |missing|.
All randomness derives from the master seed through fixed spawn keys, so a
run is reproducible regardless of worker count.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from . import localwalk, projection, scoring
from .errors import (
    HyperwalkError,
    KatzDivergenceError,
    MetricUndefinedError,
    ParameterError,
    SamplingError,
    TrialDegenerateError,
)
from .hypergraph import Edge, Hypergraph
from .scoring import HKATZ, WALK_KINDS, MethodSpec, ScoredEdge

logger = logging.getLogger(__name__)

DEFAULT_K_GRID = (2, 3, 4, 5)
DEFAULT_BETA_GRID = (0.001, 0.005, 0.01, 0.05, 0.1)

# spawn_key tags for deriving per-trial generators from the master seed
_SPLIT, _NEGATIVES, _CV_WALK, _CV_KATZ = 0, 1, 2, 3


@dataclass(frozen=True)
class SplitSpec:
    observed_fraction: float = 0.8
    trials: int = 10
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.observed_fraction < 1.0:
            raise ParameterError("observed_fraction must lie strictly between 0 and 1")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")


@dataclass(frozen=True)
class SamplingSpec:
    alpha: float = 0.5
    fakes_per_missing: int = 3

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError("alpha must lie strictly between 0 and 1")
        if self.fakes_per_missing < 1:
            raise ParameterError("fakes_per_missing must be >= 1")


@dataclass(frozen=True)
class CandidateSet:
    """Missing hyperedges plus sampled fakes, with ground-truth labels."""

    positives: tuple[Edge, ...]
    negatives: tuple[Edge, ...]
    collisions: int = 0  # fakes accepted despite duplicating a known set

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.positives + self.negatives

    @property
    def labels(self) -> np.ndarray:
        return np.concatenate(
            [np.ones(len(self.positives), dtype=np.int64),
             np.zeros(len(self.negatives), dtype=np.int64)]
        )


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _observed_degrees(n: int, edges: Sequence[Edge]) -> np.ndarray:
    deg = np.zeros(n, dtype=np.int64)
    for e in edges:
        deg[list(e)] += 1
    return deg


def _connected_components(n: int, edges: Sequence[Edge]) -> int:
    """Components of the clique expansion, ignoring isolated vertices."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for e in edges:
        touched.update(e)
        r = find(e[0])
        for v in e[1:]:
            parent[find(v)] = r
    return len({find(v) for v in touched})


def split(g: Hypergraph, spec: SplitSpec, trial: int) -> tuple[tuple[Edge, ...], tuple[Edge, ...]]:
    """Partition hyperedges into ceil(rho*m) observed plus the pruned rest.

    Missing edges touching a vertex with zero observed degree are dropped.
    A split whose missing set prunes to nothing is retried with a fresh
    derived seed, up to 100 attempts.
    """
    n_obs = math.ceil(spec.observed_fraction * g.m - 1e-9)
    if n_obs >= g.m:
        raise TrialDegenerateError(
            f"observed fraction {spec.observed_fraction} leaves no missing edges (m={g.m})"
        )
    for attempt in range(100):
        rng = _rng(spec.seed, _SPLIT, trial, attempt)
        perm = rng.permutation(g.m)
        observed = tuple(g.edges[i] for i in sorted(perm[:n_obs]))
        missing = tuple(g.edges[i] for i in sorted(perm[n_obs:]))
        deg = _observed_degrees(g.n, observed)
        pruned = tuple(e for e in missing if all(deg[v] > 0 for v in e))
        if pruned:
            if attempt:
                logger.info("trial %d: split usable after %d retries", trial, attempt)
            parts = _connected_components(g.n, observed)
            if parts > 1:
                logger.warning(
                    "trial %d: observed hypergraph splits into %d components", trial, parts
                )
            return observed, pruned
    raise TrialDegenerateError(f"trial {trial}: no usable split in 100 attempts")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def replacement_count(edge_size: int, alpha: float) -> int:
    """Vertices to swap out of a true edge: round-half-up((1-alpha)*|e|),
    clamped so at least one and at most |e|-1 are replaced."""
    return min(max(_round_half_up((1.0 - alpha) * edge_size), 1), edge_size - 1)


def sample_negatives(
    edge: Edge,
    g: Hypergraph,
    observed: Sequence[Edge],
    spec: SamplingSpec,
    rng: np.random.Generator,
    forbidden: set[Edge] | None = None,
    observed_degrees: np.ndarray | None = None,
) -> tuple[list[Edge], int]:
    """Fake hyperedges for one missing edge, by replacing vertices.

    Replacements are drawn from vertices outside the edge that are not
    isolated in the observed set.  A fake equal (as a set) to an observed,
    missing, or previously sampled edge is resampled up to 100 times, then
    accepted with the collision counted.  Returns (fakes, collisions).
    """
    if forbidden is None:
        forbidden = set(observed)
    if observed_degrees is None:
        observed_degrees = _observed_degrees(g.n, observed)
    size = len(edge)
    r = replacement_count(size, spec.alpha)
    in_edge = np.zeros(g.n, dtype=bool)
    in_edge[list(edge)] = True
    eligible = np.flatnonzero((observed_degrees > 0) & ~in_edge)
    if len(eligible) < r:
        raise SamplingError(
            f"edge {edge}: need {r} replacement vertices, only {len(eligible)} eligible"
        )
    edge_arr = np.asarray(edge)
    fakes: list[Edge] = []
    collisions = 0
    for _ in range(spec.fakes_per_missing):
        fake: Edge = ()
        for attempt in range(100):
            drop = rng.choice(size, size=r, replace=False)
            keep = np.delete(edge_arr, drop)
            repl = rng.choice(eligible, size=r, replace=False)
            fake = tuple(sorted(np.concatenate([keep, repl]).tolist()))
            if fake not in forbidden:
                break
        else:
            collisions += 1
            logger.warning("edge %s: accepted colliding fake %s after 100 attempts", edge, fake)
        forbidden.add(fake)
        fakes.append(fake)
    return fakes, collisions


def build_candidates(
    g: Hypergraph,
    observed: Sequence[Edge],
    missing: Sequence[Edge],
    spec: SamplingSpec,
    rng: np.random.Generator,
) -> CandidateSet:
    """Candidate set: the missing edges plus fakes_per_missing fakes each."""
    forbidden: set[Edge] = set(observed) | set(missing)
    deg = _observed_degrees(g.n, observed)
    negatives: list[Edge] = []
    collisions = 0
    for e in missing:
        fakes, c = sample_negatives(e, g, observed, spec, rng, forbidden, deg)
        negatives.extend(fakes)
        collisions += c
    return CandidateSet(tuple(missing), tuple(negatives), collisions)


def _scores_array(scored) -> np.ndarray:
    if len(scored) and isinstance(scored[0], ScoredEdge):
        return np.array([s.score for s in scored], dtype=np.float64)
    return np.asarray(scored, dtype=np.float64)


def auroc(scored, labels) -> float:
    """Probability a random positive outscores a random negative (ties 0.5)."""
    scores = _scores_array(scored)
    labels = np.asarray(labels)
    pos = labels == 1
    n_pos = int(pos.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise MetricUndefinedError("AUROC needs at least one positive and one negative")
    ranks = rankdata(scores, method="average")
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def select_top(edges: Sequence[Edge], scores, cutoff: int) -> list[int]:
    """Indices of the cutoff best candidates: score descending, then
    canonical edge encoding ascending."""
    scores = _scores_array(scores)
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], edges[i]))
    return order[:cutoff]


def f1_at_cutoff(scored: Sequence[ScoredEdge], labels, cutoff: int) -> float:
    """F1 of predicting the top-cutoff candidates as missing hyperedges.

    When cutoff equals the number of positives, precision, recall, and F1
    all collapse to TP / cutoff.
    """
    labels = np.asarray(labels)
    if not 1 <= cutoff <= len(labels):
        raise ParameterError(f"cutoff {cutoff} outside 1..{len(labels)}")
    edges = [s.edge for s in scored]
    top = select_top(edges, scored, cutoff)
    tp = int(labels[top].sum())
    n_pos = int((labels == 1).sum())
    if tp == 0:
        return 0.0
    # 2PR/(P+R) with P = tp/cutoff, R = tp/n_pos simplifies to an integer
    # ratio, which keeps the cutoff == n_pos case exactly equal to TP/n_pos.
    return 2.0 * tp / (cutoff + n_pos)


def _fold_parts(n_items: int, folds: int, rng: np.random.Generator) -> list[np.ndarray]:
    perm = rng.permutation(n_items)
    return np.array_split(perm, folds)


def cross_validate(
    methods: Sequence[MethodSpec],
    g: Hypergraph,
    observed: Sequence[Edge],
    candidates: Sequence[Edge],
    folds: int,
    grid: Sequence,
    rng: np.random.Generator,
) -> dict[str, object]:
    """Pick each method's parameter by k-fold CV on the observed edges.

    Each fold once serves as the validation missing set; the full candidate
    set acts as negatives in every fold.  Candidates or validation edges
    touching a vertex isolated in a fold's training edges are excluded from
    that fold.  Returns the grid value with the highest mean validation
    AUROC per method; ties go to the smaller value.  Walk methods share one
    propagation sweep per fold across the whole grid.
    """
    if folds < 2:
        raise ParameterError("cross-validation needs at least 2 folds")
    if len(observed) < folds:
        raise ParameterError(f"{len(observed)} observed edges cannot fill {folds} folds")
    kinds = [m.kind for m in methods]
    walk = [k for k in kinds if k in WALK_KINDS]
    if walk and len(walk) != len(kinds):
        raise ParameterError("cross_validate mixes walk methods with other kinds")
    if not walk and kinds != [HKATZ]:
        raise ParameterError(f"no tunable parameter for method kinds {kinds}")
    grid = sorted(set(grid))
    if len(grid) == 1:
        return {k: grid[0] for k in kinds}

    totals = {k: np.zeros(len(grid)) for k in kinds}
    valid = {k: np.ones(len(grid), dtype=bool) for k in kinds}
    if not walk:
        # The chosen beta must also converge when scoring on the full
        # observed structure; fold training graphs have entrywise-smaller
        # adjacency, hence no larger spectral radius, so this one check
        # covers the folds too.
        spec0 = methods[0]
        mode = spec0.katz_mode
        if mode == "auto":
            mode = "closed" if g.n <= scoring.KATZ_CLOSED_MAX_N else "truncated"
        if mode == "closed":
            rho = scoring.spectral_radius(projection.adjacency(g.with_edges(observed)).astype(np.float64))
            for gi, beta in enumerate(grid):
                if beta * rho >= 1.0:
                    valid[HKATZ][gi] = False
            if not valid[HKATZ].any():
                raise KatzDivergenceError(
                    f"no damping factor in {grid} converges on the observed structure "
                    f"(spectral radius {rho:.3g})"
                )
    used_folds = 0
    observed = list(observed)
    for part in _fold_parts(len(observed), folds, rng):
        part_set = set(part.tolist())
        train = [e for i, e in enumerate(observed) if i not in part_set]
        deg = _observed_degrees(g.n, train)
        val_pos = [observed[i] for i in sorted(part_set) if all(deg[v] > 0 for v in observed[i])]
        val_neg = [e for e in candidates if all(deg[v] > 0 for v in e)]
        if not val_pos or not val_neg:
            logger.warning("cross-validation fold skipped: no usable positives or negatives")
            continue
        used_folds += 1
        fold_edges = val_pos + val_neg
        labels = np.concatenate([np.ones(len(val_pos)), np.zeros(len(val_neg))])
        train_g = g.with_edges(train)
        needed = sorted({v for e in fold_edges for v in e})
        if walk:
            p = projection.transition(train_g, allow_isolated=True)
            rows_by_k = localwalk.walk_matrix_rows_multi(p, needed, grid)
            for gi, k in enumerate(grid):
                rows = rows_by_k[k]
                js_cache: dict = {}
                for kind in walk:
                    vals = scoring.score_edges_from_rows(kind, fold_edges, rows, js_cache)
                    totals[kind][gi] += auroc(vals, labels)
        else:
            a = projection.adjacency(train_g).astype(np.float64)
            for gi, beta in enumerate(grid):
                if not valid[HKATZ][gi]:
                    continue
                spec = methods[0].with_param(beta)
                try:
                    table = scoring.katz_pair_table(
                        a, beta, needed, spec.katz_mode, spec.katz_lmax
                    )
                except KatzDivergenceError:
                    valid[HKATZ][gi] = False
                    continue
                vals = [scoring.score_hkatz(e, table) for e in fold_edges]
                totals[HKATZ][gi] += auroc(vals, labels)
    if used_folds == 0:
        raise TrialDegenerateError("cross-validation had no usable folds")

    chosen: dict[str, object] = {}
    for kind in kinds:
        ok = valid[kind]
        if not ok.any():
            raise KatzDivergenceError("no grid value converges on this training structure")
        means = np.where(ok, totals[kind] / used_folds, -np.inf)
        chosen[kind] = grid[int(np.argmax(means))]  # argmax takes first max: smaller value
    return chosen


@dataclass(frozen=True)
class MethodOutcome:
    kind: str
    param: object
    auroc: float
    f1: float
    seconds: float


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    n_observed: int
    n_missing: int
    n_negatives: int
    collisions: int
    outcomes: tuple[MethodOutcome, ...]


@dataclass(frozen=True)
class ExperimentResult:
    rho: float
    alpha: float
    fakes_per_missing: int
    trials: int
    seed: int
    method_kinds: tuple[str, ...]
    records: tuple[TrialRecord, ...]

    def mean_auroc(self, kind: str) -> float:
        return float(np.mean([o.auroc for r in self.records for o in r.outcomes if o.kind == kind]))

    def mean_f1(self, kind: str) -> float:
        return float(np.mean([o.f1 for r in self.records for o in r.outcomes if o.kind == kind]))

    def param_mode(self, kind: str):
        """Most frequently chosen parameter; ties go to the smaller value."""
        params = [o.param for r in self.records for o in r.outcomes if o.kind == kind]
        if not params or params[0] is None:
            return None
        uniq = sorted(set(params))
        return max(uniq, key=lambda v: (params.count(v), -uniq.index(v)))

    def mean_missing(self) -> float:
        return float(np.mean([r.n_missing for r in self.records]))

    def to_json_dict(self, include_timings: bool = False) -> dict:
        """Deterministic JSON form: per-trial records plus an aggregate block."""
        per_trial = []
        for r in self.records:
            methods = {}
            for o in r.outcomes:
                entry = {"param": o.param, "auroc": o.auroc, "f1": o.f1}
                if include_timings:
                    entry["seconds"] = o.seconds
                methods[o.kind] = entry
            per_trial.append(
                {
                    "trial": r.trial,
                    "observed": r.n_observed,
                    "missing": r.n_missing,
                    "negatives": r.n_negatives,
                    "collisions": r.collisions,
                    "methods": methods,
                }
            )
        aggregate = {
            kind: {
                "auroc_mean": self.mean_auroc(kind),
                "f1_mean": self.mean_f1(kind),
                "chosen_param_mode": self.param_mode(kind),
            }
            for kind in self.method_kinds
        }
        return {
            "config": {
                "rho": self.rho,
                "alpha": self.alpha,
                "lambda": self.fakes_per_missing,
                "trials": self.trials,
                "seed": self.seed,
                "methods": list(self.method_kinds),
            },
            "trials": per_trial,
            "aggregate": aggregate,
        }


def _resolve_methods(methods) -> list[MethodSpec]:
    out = []
    for m in methods:
        out.append(m if isinstance(m, MethodSpec) else MethodSpec(kind=str(m)))
    if len({m.kind for m in out}) != len(out):
        raise ParameterError("duplicate method kinds in one run")
    return out


def trial_candidates(
    g: Hypergraph, split_spec: SplitSpec, sampling_spec: SamplingSpec, trial: int
) -> tuple[tuple[Edge, ...], CandidateSet]:
    """Observed edges and candidate set for one trial (derived seeds)."""
    observed, missing = split(g, split_spec, trial)
    rng_neg = _rng(split_spec.seed, _NEGATIVES, trial)
    return observed, build_candidates(g, observed, missing, sampling_spec, rng_neg)


def select_parameters(
    g: Hypergraph,
    observed: Sequence[Edge],
    candidates: Sequence[Edge],
    methods: Sequence[MethodSpec],
    seed: int,
    trial: int,
    folds: int = 5,
    k_grid: Sequence[int] = DEFAULT_K_GRID,
    beta_grid: Sequence[float] = DEFAULT_BETA_GRID,
) -> dict[str, object]:
    """Cross-validated parameter per method that still needs one."""
    chosen: dict[str, object] = {}
    walk_todo = [m for m in methods if m.kind in WALK_KINDS and m.k is None]
    if walk_todo:
        chosen.update(
            cross_validate(
                walk_todo, g, observed, candidates, folds, k_grid,
                _rng(seed, _CV_WALK, trial),
            )
        )
    katz_todo = [m for m in methods if m.kind == HKATZ and m.beta is None]
    if katz_todo:
        chosen.update(
            cross_validate(
                katz_todo, g, observed, candidates, folds, beta_grid,
                _rng(seed, _CV_KATZ, trial),
            )
        )
    return chosen


def run_trial(
    g: Hypergraph,
    split_spec: SplitSpec,
    sampling_spec: SamplingSpec,
    methods: Sequence[MethodSpec],
    trial: int,
    folds: int = 5,
    k_grid: Sequence[int] = DEFAULT_K_GRID,
    beta_grid: Sequence[float] = DEFAULT_BETA_GRID,
) -> TrialRecord:
    """One full trial: split, sample, cross-validate, score, measure."""
    methods = _resolve_methods(methods)
    observed, missing = split(g, split_spec, trial)  # raises with trial context
    try:
        rng_neg = _rng(split_spec.seed, _NEGATIVES, trial)
        cand = build_candidates(g, observed, missing, sampling_spec, rng_neg)
        observed_g = g.with_edges(observed)
        chosen = select_parameters(
            g, observed, cand.edges, methods, split_spec.seed, trial, folds, k_grid, beta_grid
        )

        outcomes = []
        labels = cand.labels
        for m in methods:
            spec_m = m.with_param(chosen[m.kind]) if m.kind in chosen else m
            t0 = time.perf_counter()
            scored = scoring.score_candidates(spec_m, observed_g, cand.edges)
            res_auroc = auroc(scored, labels)
            res_f1 = f1_at_cutoff(scored, labels, cutoff=len(cand.positives))
            outcomes.append(
                MethodOutcome(m.kind, spec_m.param, res_auroc, res_f1, time.perf_counter() - t0)
            )
    except HyperwalkError as exc:
        exc.args = (f"trial {trial}: {exc}",) + exc.args[1:]
        raise
    return TrialRecord(
        trial=trial,
        n_observed=len(observed),
        n_missing=len(cand.positives),
        n_negatives=len(cand.negatives),
        collisions=cand.collisions,
        outcomes=tuple(outcomes),
    )


def _trial_worker(args) -> TrialRecord:
    return run_trial(*args)


def run_experiment(
    g: Hypergraph,
    split_spec: SplitSpec,
    sampling_spec: SamplingSpec,
    methods,
    folds: int = 5,
    k_grid: Sequence[int] = DEFAULT_K_GRID,
    beta_grid: Sequence[float] = DEFAULT_BETA_GRID,
    threads: int = 1,
) -> ExperimentResult:
    """All trials of one (rho, alpha, lambda) configuration.

    Trials are independent and may run in parallel processes; records come
    back in trial order either way, so the result does not depend on the
    worker count.
    """
    methods = _resolve_methods(methods)
    args = [
        (g, split_spec, sampling_spec, methods, t, folds, tuple(k_grid), tuple(beta_grid))
        for t in range(split_spec.trials)
    ]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_trial_worker, args))
    else:
        records = [run_trial(*a) for a in args]
    return ExperimentResult(
        rho=split_spec.observed_fraction,
        alpha=sampling_spec.alpha,
        fakes_per_missing=sampling_spec.fakes_per_missing,
        trials=split_spec.trials,
        seed=split_spec.seed,
        method_kinds=tuple(m.kind for m in methods),
        records=tuple(records),
    )
