"""Candidate-hyperedge scoring under the six similarity methods.

Pairwise similarity indices (walk mass, 1 - JS, common neighbors, Katz,
resource allocation) are averaged over all unordered vertex pairs of a
candidate edge; the generalized-divergence index scores the edge's vertex
set directly.  Every scorer sorts the candidate's vertices first, so scores
are identical under any reordering of the input edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh, splu

from . import divergence, localwalk, projection
from .errors import CandidateError, ContractViolation, KatzDivergenceError, ParameterError
from .hypergraph import Edge, Hypergraph

LRW = "lrw"
LRW_JS = "lrw-js"
LRW_GJS = "lrw-gjs"
HCN = "hcn"
HKATZ = "hkatz"
HPRA = "hpra"

WALK_KINDS = (LRW, LRW_JS, LRW_GJS)
ALL_KINDS = (HCN, HKATZ, HPRA, LRW, LRW_JS, LRW_GJS)

# Above this size, closed-form Katz solves give way to a truncated series.
KATZ_CLOSED_MAX_N = 20_000


@dataclass(frozen=True)
class MethodSpec:
    """A scoring method plus its hyperparameters.

    ``k`` is the maximum walk length for the three walk methods; ``beta``
    the Katz damping factor.  ``katz_mode`` is "auto" (closed form up to
    KATZ_CLOSED_MAX_N vertices, truncated beyond), "closed", or
    "truncated"; ``katz_lmax`` bounds the truncated series.
    """

    kind: str
    k: int | None = None
    beta: float | None = None
    katz_mode: str = "auto"
    katz_lmax: int = 8

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ParameterError(f"unknown method kind {self.kind!r}")
        if self.k is not None and self.k < 1:
            raise ParameterError("walk length k must be >= 1")
        if self.beta is not None and self.beta <= 0:
            raise ParameterError("katz damping beta must be positive")
        if self.katz_mode not in ("auto", "closed", "truncated"):
            raise ParameterError(f"unknown katz_mode {self.katz_mode!r}")

    def with_param(self, value) -> "MethodSpec":
        """Copy with the method's tunable parameter set."""
        if self.kind in WALK_KINDS:
            return replace(self, k=int(value))
        if self.kind == HKATZ:
            return replace(self, beta=float(value))
        return self

    @property
    def param(self):
        if self.kind in WALK_KINDS:
            return self.k
        if self.kind == HKATZ:
            return self.beta
        return None


@dataclass(frozen=True)
class ScoredEdge:
    edge: Edge
    score: float
    method: MethodSpec


def _pair_mean(edge: Edge, pair_score) -> float:
    verts = sorted(edge)
    t = len(verts)
    total = 0.0
    for i, j in combinations(verts, 2):
        total += pair_score(i, j)
    return total * 2.0 / (t * (t - 1))


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def score_lrw(edge: Edge, rows) -> float:
    """Mean symmetrized walk mass s_ij + s_ji over the edge's vertex pairs."""
    try:
        return _pair_mean(edge, lambda i, j: rows[i].mass_at(j) + rows[j].mass_at(i))
    except KeyError as exc:
        raise ContractViolation(f"missing walk row for vertex {exc.args[0]}") from None


def score_lrw_js(edge: Edge, rows, js_cache: dict | None = None) -> float:
    """1 minus the mean pairwise Jensen-Shannon divergence of the walk rows."""
    cache = js_cache if js_cache is not None else {}

    def pair_js(i: int, j: int) -> float:
        if (i, j) not in cache:
            cache[(i, j)] = divergence.js(rows[i], rows[j])
        return cache[(i, j)]

    try:
        val = 1.0 - _pair_mean(edge, pair_js)
    except KeyError as exc:
        raise ContractViolation(f"missing walk row for vertex {exc.args[0]}") from None
    return _clamp01(val)


def score_lrw_gjs(edge: Edge, rows) -> float:
    """1 minus the uniform-weight generalized divergence, normalized by log2 t."""
    verts = sorted(edge)
    try:
        dists = [rows[v] for v in verts]
    except KeyError as exc:
        raise ContractViolation(f"missing walk row for vertex {exc.args[0]}") from None
    return _clamp01(1.0 - divergence.js_generalized(dists) / math.log2(len(verts)))


def score_edges_from_rows(kind: str, edges, rows, js_cache: dict | None = None) -> list[float]:
    """Score many edges under one walk method from precomputed walk rows.

    ``js_cache`` memoizes pairwise divergences across edges that share
    vertex pairs.
    """
    if kind == LRW:
        return [score_lrw(e, rows) for e in edges]
    if kind == LRW_JS:
        cache = js_cache if js_cache is not None else {}
        return [score_lrw_js(e, rows, cache) for e in edges]
    if kind == LRW_GJS:
        return [score_lrw_gjs(e, rows) for e in edges]
    raise ParameterError(f"{kind!r} is not a walk method")


def score_hcn(edge: Edge, neighbor_sets) -> float:
    """Mean number of common clique-expansion neighbors over vertex pairs."""
    return _pair_mean(edge, lambda i, j: float(len(neighbor_sets[i] & neighbor_sets[j])))


def neighbor_sets(g: Hypergraph, vertices=None) -> dict[int, frozenset[int]]:
    """Clique-expansion neighborhoods, for the given vertices (default all)."""
    a = projection.adjacency(g)
    verts = range(g.n) if vertices is None else sorted(set(vertices))
    return {
        v: frozenset(a.indices[a.indptr[v] : a.indptr[v + 1]].tolist()) for v in verts
    }


def spectral_radius(a: sparse.csr_matrix) -> float:
    """Largest eigenvalue of a symmetric nonnegative matrix."""
    n = a.shape[0]
    if n <= 200:
        return float(np.linalg.eigvalsh(a.toarray())[-1])
    v0 = np.ones(n) / math.sqrt(n)
    vals = eigsh(a.astype(np.float64), k=1, which="LA", v0=v0, return_eigenvectors=False)
    return float(vals[0])


def katz_pair_table(
    a: sparse.csr_matrix,
    beta: float,
    vertices,
    mode: str = "auto",
    l_max: int = 8,
) -> dict[int, np.ndarray]:
    """Katz similarity columns sum_{l>=1} beta^l (A^l)[:, j] for each j.

    Closed form solves (I - beta A) x = e_j and subtracts e_j; it requires
    beta below the reciprocal spectral radius.  The truncated form sums the
    first ``l_max`` powers.
    """
    n = a.shape[0]
    verts = sorted(set(int(v) for v in vertices))
    if mode == "auto":
        mode = "closed" if n <= KATZ_CLOSED_MAX_N else "truncated"
    if mode == "closed":
        rho = spectral_radius(a)
        if beta * rho >= 1.0:
            raise KatzDivergenceError(
                f"beta={beta} >= 1/spectral_radius={1.0 / rho if rho else math.inf:.6g}; "
                "Katz series diverges in closed form"
            )
        system = sparse.identity(n, format="csc") - beta * a.tocsc()
        factor = splu(system)
        cols: dict[int, np.ndarray] = {}
        for start in range(0, len(verts), 256):
            block = verts[start : start + 256]
            rhs = np.zeros((n, len(block)))
            rhs[block, np.arange(len(block))] = 1.0
            sol = factor.solve(rhs)
            sol[block, np.arange(len(block))] -= 1.0
            for c, v in enumerate(block):
                cols[v] = sol[:, c].copy()
        return cols
    if l_max < 1:
        raise ParameterError("truncated Katz needs l_max >= 1")
    damped = (beta * a).tocsr()
    x = sparse.csr_matrix(
        (np.ones(len(verts)), (np.arange(len(verts)), np.array(verts))), shape=(len(verts), n)
    )
    acc = sparse.csr_matrix((len(verts), n))
    for _ in range(l_max):
        x = x @ damped
        acc = acc + x
    dense = np.asarray(acc.todense())
    return {v: dense[r] for r, v in enumerate(verts)}


def score_hkatz(edge: Edge, katz_cols) -> float:
    """Mean pairwise Katz similarity over the edge's vertex pairs."""
    return _pair_mean(edge, lambda i, j: float(katz_cols[j][i]))


def hpra_pair_table(g: Hypergraph, vertices) -> dict[int, np.ndarray]:
    """Resource-allocation similarity rows (W + W D^-1 W)[j, :] per vertex."""
    w = projection.weighted_projection(g)
    dinv = np.zeros(g.n)
    nz = g.degrees > 0
    dinv[nz] = 1.0 / g.degrees[nz]
    verts = sorted(set(int(v) for v in vertices))
    x = sparse.csr_matrix(
        (np.ones(len(verts)), (np.arange(len(verts)), np.array(verts))), shape=(len(verts), g.n)
    )
    xw = x @ w
    rows = xw + (xw @ sparse.diags(dinv)) @ w
    dense = np.asarray(rows.todense())
    return {v: dense[r] for r, v in enumerate(verts)}


def score_hpra(edge: Edge, hpra_rows) -> float:
    """Mean pairwise resource-allocation similarity over vertex pairs."""
    return _pair_mean(edge, lambda i, j: float(hpra_rows[j][i]))


def _normalize_candidates(g: Hypergraph, candidates) -> list[Edge]:
    degrees = g.degrees
    out = []
    for e in candidates:
        edge = tuple(sorted(int(v) for v in e))
        if len(edge) < 2 or len(set(edge)) != len(edge):
            raise CandidateError(f"candidate {edge} is not a set of >= 2 vertices")
        for v in edge:
            if v < 0 or v >= g.n or degrees[v] == 0:
                raise CandidateError(
                    f"candidate {edge} uses vertex {v} absent from the training hypergraph"
                )
        out.append(edge)
    return out


def score_candidates(method: MethodSpec, g: Hypergraph, candidates) -> list[ScoredEdge]:
    """Score every candidate edge; output order matches input order.

    Walk rows and pairwise similarity tables are computed once, for the
    union of all candidate vertices, and reused across candidates.
    """
    edges = _normalize_candidates(g, candidates)
    if not edges:
        return []
    needed = sorted({v for e in edges for v in e})

    if method.kind in WALK_KINDS:
        if method.k is None:
            raise ParameterError(f"{method.kind} requires the walk length k")
        p = projection.transition(g, allow_isolated=True)
        rows = localwalk.walk_matrix_rows(p, needed, method.k)
        vals = score_edges_from_rows(method.kind, edges, rows)
        return [ScoredEdge(e, v, method) for e, v in zip(edges, vals)]
    if method.kind == HCN:
        nbrs = neighbor_sets(g, needed)
        return [ScoredEdge(e, score_hcn(e, nbrs), method) for e in edges]
    if method.kind == HKATZ:
        if method.beta is None:
            raise ParameterError("hkatz requires the damping factor beta")
        table = katz_pair_table(
            projection.adjacency(g).astype(np.float64),
            method.beta,
            needed,
            method.katz_mode,
            method.katz_lmax,
        )
        return [ScoredEdge(e, score_hkatz(e, table), method) for e in edges]
    if method.kind == HPRA:
        table = hpra_pair_table(g, needed)
        return [ScoredEdge(e, score_hpra(e, table), method) for e in edges]
    raise ParameterError(f"unknown method kind {method.kind!r}")
