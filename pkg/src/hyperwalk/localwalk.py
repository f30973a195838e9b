"""Superposed local random walks.

The walk matrix averages the first K powers of the transition matrix P.
Row i is the stop distribution of a walker that starts at vertex i, picks a
length uniformly from 1..K, and takes that many steps.  Rows are computed
only for requested source vertices, by propagating one-hot rows through P,
so nothing of size n x n is ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ContractViolation, ParameterError

DROP_TOL = 1e-15
RENORM_TOL = 1e-10


@dataclass(frozen=True)
class WalkDistribution:
    """One row of the superposed walk matrix, as a sparse distribution."""

    source: int
    indices: np.ndarray  # sorted vertex ids with positive mass
    values: np.ndarray
    n: int
    max_step: int

    def mass_at(self, j: int) -> float:
        """Probability of stopping at vertex j (0.0 off support)."""
        k = np.searchsorted(self.indices, j)
        if k < len(self.indices) and self.indices[k] == j:
            return float(self.values[k])
        return 0.0

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.n)
        out[self.indices] = self.values
        return out

    @property
    def support(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.indices)


def from_dense(values, source: int = -1, max_step: int = 0) -> WalkDistribution:
    """Wrap a dense probability vector as a sparse distribution."""
    arr = np.asarray(values, dtype=np.float64)
    idx = np.flatnonzero(arr)
    return WalkDistribution(source, idx, arr[idx], len(arr), max_step)


def _extract_rows(
    mat: sparse.csr_matrix,
    sources: list[int],
    scale: float,
    n: int,
    max_step: int,
    drop_tol: float,
    renorm_tol: float,
) -> dict[int, WalkDistribution]:
    """Scale, prune, renormalize and slice a whole snapshot at once.

    All numeric work is vectorized over the full matrix; each row then
    becomes a pair of array views, so the per-row cost is independent of
    support size.
    """
    mat.sort_indices()
    vals = mat.data * scale
    keep = vals > drop_tol
    counts = np.diff(mat.indptr)
    row_of = np.repeat(np.arange(len(sources)), counts)[keep]
    idx = mat.indices[keep].astype(np.int64)
    vals = vals[keep]
    sums = np.bincount(row_of, weights=vals, minlength=len(sources))
    needs_fix = np.abs(sums - 1.0) > renorm_tol
    if needs_fix.any():
        factor = np.where(needs_fix & (sums > 0), 1.0 / np.where(sums > 0, sums, 1.0), 1.0)
        vals = vals * factor[row_of]
    indptr = np.concatenate(([0], np.cumsum(np.bincount(row_of, minlength=len(sources)))))
    return {
        s: WalkDistribution(s, idx[indptr[r] : indptr[r + 1]], vals[indptr[r] : indptr[r + 1]], n, max_step)
        for r, s in enumerate(sources)
    }


def walk_matrix_rows(
    P: sparse.csr_matrix,
    sources,
    K: int,
    drop_tol: float = DROP_TOL,
    renorm_tol: float = RENORM_TOL,
) -> dict[int, WalkDistribution]:
    """Rows of (1/K) * (P + P^2 + ... + P^K) for the given source vertices."""
    return walk_matrix_rows_multi(P, sources, [K], drop_tol, renorm_tol)[K]


def walk_matrix_rows_multi(
    P: sparse.csr_matrix,
    sources,
    ks,
    drop_tol: float = DROP_TOL,
    renorm_tol: float = RENORM_TOL,
) -> dict[int, dict[int, WalkDistribution]]:
    """Walk rows for several maximum lengths in one propagation pass.

    Returns ``{K: {source: row}}`` for each K in ``ks``.  The running sum of
    propagated rows is snapshotted at every requested K, so the cost is a
    single sweep up to max(ks).
    """
    ks = sorted(set(int(k) for k in ks))
    if not ks or ks[0] < 1:
        raise ParameterError("walk length K must be a positive integer")
    src = sorted(set(int(s) for s in sources))
    n = P.shape[0]
    if src and (src[0] < 0 or src[-1] >= n):
        raise ParameterError("walk sources must be valid vertex ids")
    row_sums = np.asarray(P.sum(axis=1)).ravel()
    for s in src:
        if row_sums[s] == 0.0:
            raise ContractViolation(f"vertex {s} has no outgoing transitions")
    out: dict[int, dict[int, WalkDistribution]] = {k: {} for k in ks}
    if not src:
        return out
    one = np.ones(len(src))
    x = sparse.csr_matrix(
        (one, (np.arange(len(src)), np.array(src))), shape=(len(src), n)
    )
    acc = sparse.csr_matrix((len(src), n))
    want = set(ks)
    for k in range(1, ks[-1] + 1):
        x = x @ P
        acc = acc + x
        if k in want:
            out[k] = _extract_rows(acc.tocsr(), src, 1.0 / k, n, k, drop_tol, renorm_tol)
    return out


