"""Jensen-Shannon divergence between sparse probability distributions.

All logarithms are base 2, so the pairwise divergence lies in [0, 1] and the
generalized divergence over t distributions lies in [0, log2 t].  Terms with
zero probability contribute nothing (0 * log 0 := 0), and the mixture is
never zero where any compared distribution has mass, because the mixture
includes that distribution with positive weight.

Evaluation walks the union of the sparse supports, so the cost scales with
support size, not with the size of the vertex universe.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .localwalk import WalkDistribution, from_dense

WEIGHT_TOL = 1e-12


def _as_sparse(p) -> WalkDistribution:
    if isinstance(p, WalkDistribution):
        return p
    return from_dense(p)


def stack_on_union(dists) -> np.ndarray:
    """Dense (t, u) matrix of the distributions over their support union."""
    ds = [_as_sparse(p) for p in dists]
    union = ds[0].indices
    for d in ds[1:]:
        union = np.union1d(union, d.indices)
    mat = np.zeros((len(ds), len(union)))
    for r, d in enumerate(ds):
        mat[r, np.searchsorted(union, d.indices)] = d.values
    return mat


def _rel_entropy_rows(mat: np.ndarray, mix: np.ndarray) -> np.ndarray:
    """Row-wise sum of p * log2(p / mix), with 0 * log(0) = 0."""
    terms = np.zeros_like(mat)
    pos = mat > 0.0
    terms[pos] = mat[pos] * np.log2(mat[pos] / np.broadcast_to(mix, mat.shape)[pos])
    return terms.sum(axis=1)


def js(p, q) -> float:
    """Pairwise Jensen-Shannon divergence, symmetric and in [0, 1]."""
    mat = stack_on_union([p, q])
    mix = 0.5 * mat[0] + 0.5 * mat[1]
    halves = _rel_entropy_rows(mat, mix)
    return float(0.5 * halves[0] + 0.5 * halves[1])


def validate_weights(weights, t: int) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (t,):
        raise ParameterError(f"expected {t} weights, got shape {w.shape}")
    if np.any(w < 0.0):
        raise ParameterError("mixture weights must be nonnegative")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise ParameterError("mixture weights must sum to 1")
    return w


def js_generalized(dists, weights=None) -> float:
    """Generalized Jensen-Shannon divergence of t >= 2 weighted distributions.

    With uniform weights (the default) the t = 2 case reduces exactly to
    :func:`js`.  The result is bounded above by log2(t).
    """
    dists = list(dists)
    t = len(dists)
    if t < 2:
        raise ParameterError("generalized divergence needs at least two distributions")
    if weights is None:
        w = np.full(t, 1.0 / t)
    else:
        w = validate_weights(weights, t)
    mat = stack_on_union(dists)
    mix = w @ mat
    active = w > 0.0  # zero-weight rows contribute 0 even off-mixture-support
    halves = _rel_entropy_rows(mat[active], mix)
    return float(w[active] @ halves)
