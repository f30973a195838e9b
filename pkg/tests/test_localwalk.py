import numpy as np
import pytest
from hypothesis import given, settings

from hyperwalk.errors import ParameterError
from hyperwalk.localwalk import from_dense, walk_matrix_rows, walk_matrix_rows_multi
from hyperwalk.projection import transition

from conftest import dense_walk_oracle, hypergraphs


def test_k1_reduces_to_transition_row(t1):
    p = transition(t1)
    rows = walk_matrix_rows(p, [0], 1)
    np.testing.assert_allclose(rows[0].to_dense(), [0, 0.5, 0.5, 0], atol=0)


def test_toy_k2_row(t1):
    p = transition(t1)
    row = walk_matrix_rows(p, [0], 2)[0]
    np.testing.assert_allclose(
        row.to_dense(), [3 / 16, 5 / 16, 3 / 8, 1 / 8], atol=1e-12
    )
    oracle = dense_walk_oracle(p.toarray(), 2)
    np.testing.assert_allclose(row.to_dense(), oracle[0], atol=1e-12)


def test_rejects_k_zero(t1):
    with pytest.raises(ParameterError):
        walk_matrix_rows(transition(t1), [0], 0)


def test_rejects_bad_source(t1):
    with pytest.raises(ParameterError):
        walk_matrix_rows(transition(t1), [99], 2)


def test_only_requested_rows_returned(t1):
    rows = walk_matrix_rows(transition(t1), [1, 3], 3)
    assert sorted(rows) == [1, 3]


@given(hypergraphs(connected=True))
@settings(max_examples=40, deadline=None)
def test_matches_dense_power_oracle(g):
    p = transition(g)
    dense = p.toarray()
    sources = list(range(g.n))
    for k in range(1, 6):
        oracle = dense_walk_oracle(dense, k)
        rows = walk_matrix_rows(p, sources, k)
        for s in sources:
            np.testing.assert_allclose(rows[s].to_dense(), oracle[s], atol=1e-10)


@given(hypergraphs(connected=True))
@settings(max_examples=40, deadline=None)
def test_rows_sum_to_one_and_support_grows(g):
    p = transition(g)
    by_k = walk_matrix_rows_multi(p, range(g.n), [1, 2, 3, 4, 5])
    for s in range(g.n):
        previous = frozenset()
        for k in (1, 2, 3, 4, 5):
            row = by_k[k][s]
            assert abs(row.values.sum() - 1.0) <= 1e-10
            assert (row.values > 0).all()
            assert row.support >= previous
            previous = row.support


def test_multi_k_matches_single_runs(t1):
    p = transition(t1)
    multi = walk_matrix_rows_multi(p, [0, 2], [1, 3])
    for k in (1, 3):
        single = walk_matrix_rows(p, [0, 2], k)
        for s in (0, 2):
            np.testing.assert_array_equal(multi[k][s].to_dense(), single[s].to_dense())


def test_support_contained_in_k_hop_ball(t1):
    p = transition(t1)
    rows = walk_matrix_rows(p, [3], 1)
    assert rows[3].support == {2}  # vertex 4's only neighbor is vertex 3


@given(g=hypergraphs(connected=True))
@settings(max_examples=30, deadline=None)
def test_support_within_bfs_ball(g):
    from hyperwalk.projection import adjacency

    a = adjacency(g)
    neighbors = {
        v: set(a.indices[a.indptr[v] : a.indptr[v + 1]].tolist()) for v in range(g.n)
    }
    p = transition(g)
    for k in (1, 2, 3):
        rows = walk_matrix_rows(p, range(g.n), k)
        for s in range(g.n):
            ball = {s}
            frontier = {s}
            for _ in range(k):
                frontier = set().union(*(neighbors[v] for v in frontier)) - set()
                ball |= frontier
            assert rows[s].support <= ball


def test_from_dense_roundtrip():
    d = from_dense([0.0, 0.25, 0.75])
    assert d.indices.tolist() == [1, 2]
    np.testing.assert_array_equal(d.to_dense(), [0.0, 0.25, 0.75])
    assert d.mass_at(0) == 0.0
    assert d.mass_at(2) == 0.75
