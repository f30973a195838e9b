"""Shared fixtures, hypothesis strategies, and independent oracles.

The oracles here deliberately avoid the library's own code paths: dense
matrix powers for walk rows, pair enumeration for metrics, and scalar
formulas for divergences, so tests compare two independent routes.
"""

from __future__ import annotations

import math
import os
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from hyperwalk.hypergraph import Hypergraph, from_label_edges, largest_component

DATA_DIR = Path(os.environ.get("HYPERWALK_DATA", Path(__file__).parent.parent / "data"))


@pytest.fixture
def t1() -> Hypergraph:
    """The worked micro-example: edges {1,2,3} and {3,4}."""
    return from_label_edges([[1, 2, 3], [3, 4]])


@st.composite
def hypergraphs(draw, max_n: int = 12, max_m: int = 10, connected: bool = False):
    n = draw(st.integers(4, max_n))
    m = draw(st.integers(1, max_m))
    edges = []
    for _ in range(m):
        size = draw(st.integers(2, min(4, n)))
        edges.append(sorted(draw(st.sets(st.integers(0, n - 1), min_size=size, max_size=size))))
    g = from_label_edges(edges)
    return largest_component(g) if connected else g


@st.composite
def distributions(draw, max_support: int = 12, universe: int = 20):
    support = sorted(draw(st.sets(st.integers(0, universe - 1), min_size=1, max_size=max_support)))
    raw = [draw(st.floats(1e-3, 1.0, allow_nan=False)) for _ in support]
    total = sum(raw)
    dense = np.zeros(universe)
    dense[support] = np.array(raw) / total
    return dense


def dense_walk_oracle(p_dense: np.ndarray, k: int) -> np.ndarray:
    """(1/K) * sum of the first K dense matrix powers."""
    acc = np.zeros_like(p_dense)
    power = np.eye(p_dense.shape[0])
    for _ in range(k):
        power = power @ p_dense
        acc += power
    return acc / k


def transition_oracle(g: Hypergraph) -> np.ndarray:
    """Walk probabilities from the two-step choice process: pick an incident
    hyperedge uniformly, then a different member uniformly."""
    p = np.zeros((g.n, g.n))
    for e in g.edges:
        for i in e:
            for j in e:
                if i != j:
                    p[i, j] += (1.0 / g.degrees[i]) * (1.0 / (len(e) - 1))
    return p


def adjacency_oracle(g: Hypergraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for e in g.edges:
        for i, j in combinations(e, 2):
            a[i, j] += 1
            a[j, i] += 1
    return a


def js_scalar_oracle(p, q) -> float:
    """Direct scalar evaluation of the base-2 pairwise divergence."""
    total = 0.0
    for pi, qi in zip(p, q):
        r = (pi + qi) / 2.0
        if pi > 0:
            total += 0.5 * pi * math.log2(pi / r)
        if qi > 0:
            total += 0.5 * qi * math.log2(qi / r)
    return total


def auroc_pairs_oracle(scores, labels) -> float:
    """All positive-negative pairs; wins count 1, ties 0.5."""
    pos = [s for s, l in zip(scores, labels) if l == 1]
    neg = [s for s, l in zip(scores, labels) if l == 0]
    total = 0.0
    for a in pos:
        for b in neg:
            if a > b:
                total += 1.0
            elif a == b:
                total += 0.5
    return total / (len(pos) * len(neg))


def f1_set_oracle(edges, scores, labels, cutoff: int) -> float:
    """Top-set enumeration with the (score desc, edge asc) order.

    The harmonic mean is evaluated in exact rational arithmetic so the
    oracle is correct to the last float bit.
    """
    from fractions import Fraction

    order = sorted(range(len(scores)), key=lambda i: (-scores[i], edges[i]))
    tp = sum(labels[i] for i in order[:cutoff])
    n_pos = sum(labels)
    if tp == 0:
        return 0.0
    precision = Fraction(tp, cutoff)
    recall = Fraction(tp, n_pos)
    return float(2 * precision * recall / (precision + recall))


def report(criterion: int, message: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS: {message}")
