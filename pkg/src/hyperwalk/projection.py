"""Clique-expansion matrices of a hypergraph.

Three sparse n x n matrices are derived from the hyperedge list:

* adjacency ``A``: a_ij = number of hyperedges containing both i and j,
* weighted projection ``W``: w_ij = sum over shared edges of 1/(|e|-1),
* transition ``P``: p_ij = w_ij / d_i, the vertex -> incident-edge ->
  other-vertex random walk.

All diagonals are zero.  Row sums of W equal the vertex hyperdegrees, so P
is row stochastic.  Everything is built by accumulating per-edge vertex
pairs into COO triplets (cost proportional to the sum of squared edge
cardinalities) and converting to CSR.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import ContractViolation
from .hypergraph import Hypergraph


def _pair_triplets(g: Hypergraph, row_scale: np.ndarray | None):
    """COO arrays with one entry per ordered vertex pair per edge.

    The value of pair (i, j) in an edge of cardinality c is 1/(c-1), further
    divided by ``row_scale[i]`` when given.  Fully vectorized: each edge of
    cardinality c contributes a c*c index block from which the diagonal is
    masked out.
    """
    sizes = g.cardinalities
    flat = np.fromiter((v for e in g.edges for v in e), dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    blocks = sizes * sizes
    total = int(blocks.sum())
    block_starts = np.concatenate(([0], np.cumsum(blocks)[:-1]))
    edge_of = np.repeat(np.arange(g.m, dtype=np.int64), blocks)
    pos = np.arange(total, dtype=np.int64) - block_starts[edge_of]
    c = sizes[edge_of]
    base = starts[edge_of]
    rows = flat[base + pos // c]
    cols = flat[base + pos % c]
    off = rows != cols
    rows, cols, c = rows[off], cols[off], c[off]
    vals = 1.0 / (c - 1)
    if row_scale is not None:
        vals /= row_scale[rows]
    return rows, cols, vals


def adjacency(g: Hypergraph) -> sparse.csr_matrix:
    """Shared-hyperedge counts between vertex pairs; zero diagonal."""
    rows, cols, vals = _pair_triplets(g, None)
    a = sparse.csr_matrix(
        (np.ones_like(vals), (rows, cols)), shape=(g.n, g.n)
    )
    a.sum_duplicates()
    a.sort_indices()
    return a


def weighted_projection(g: Hypergraph) -> sparse.csr_matrix:
    """Projection with pair weight 1/(|e|-1); row sums equal hyperdegrees."""
    rows, cols, vals = _pair_triplets(g, None)
    w = sparse.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))
    w.sum_duplicates()
    w.sort_indices()
    return w


def transition(g: Hypergraph, allow_isolated: bool = False) -> sparse.csr_matrix:
    """Row-stochastic walk matrix p_ij = (1/d_i) * sum_e 1/(|e|-1) over
    shared edges.

    With ``allow_isolated`` the rows of zero-degree vertices are left empty
    (their walk is undefined but never consulted); otherwise an isolated
    vertex is a contract violation.
    """
    degrees = g.degrees
    if not allow_isolated and np.any(degrees == 0):
        bad = int(np.argmax(degrees == 0))
        raise ContractViolation(f"vertex {g.labels[bad]} is isolated; no walk is defined")
    scale = degrees.astype(np.float64)
    scale[scale == 0] = 1.0  # keeps empty rows empty without dividing by zero
    rows, cols, vals = _pair_triplets(g, scale)
    p = sparse.csr_matrix((vals, (rows, cols)), shape=(g.n, g.n))
    p.sum_duplicates()
    p.sort_indices()
    return p


def dump_coo(matrix: sparse.spmatrix, path) -> None:
    """Debug dump: one 'row col value' line per stored entry."""
    coo = matrix.tocoo()
    lines = [f"{r} {c} {float(v)!r}" for r, c, v in zip(coo.row, coo.col, coo.data)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
