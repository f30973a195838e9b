import math

import numpy as np
import pytest
from hypothesis import given, settings

from hyperwalk.divergence import js, js_generalized, validate_weights
from hyperwalk.errors import ParameterError
from hyperwalk.localwalk import from_dense

from conftest import distributions, js_scalar_oracle


def test_identical_distributions():
    assert js([0.2, 0.3, 0.5], [0.2, 0.3, 0.5]) == 0.0


def test_disjoint_supports_hit_upper_bound():
    assert js([1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0, abs=1e-15)


def test_half_vs_point_mass():
    # Independent scalar evaluation frozen: 1/4*(1 - log2(3/2)) + 1/4*log2(4/3) + 1/4
    expected = js_scalar_oracle([0.5, 0.5], [1.0, 0.0])
    assert expected == pytest.approx(0.31127812445913283, abs=1e-15)
    assert js([0.5, 0.5], [1.0, 0.0]) == pytest.approx(expected, abs=1e-14)


@given(p=distributions(), q=distributions())
def test_symmetry_is_exact(p, q):
    assert js(p, q) == js(q, p)


@given(p=distributions(), q=distributions())
def test_bounds_and_scalar_oracle(p, q):
    val = js(p, q)
    assert -1e-12 <= val <= 1.0 + 1e-12
    assert val == pytest.approx(js_scalar_oracle(p, q), abs=1e-12)


@given(p=distributions(), q=distributions())
def test_sparse_equals_dense_evaluation(p, q):
    sparse_val = js(from_dense(p), from_dense(q))
    dense_val = js_scalar_oracle(p, q)
    assert sparse_val == pytest.approx(dense_val, abs=1e-12)


def test_generalized_identical_is_zero():
    d = [0.25, 0.25, 0.5]
    assert js_generalized([d, d, d]) == pytest.approx(0.0, abs=1e-15)


@given(p=distributions(), q=distributions())
def test_generalized_t2_uniform_reduces_to_pairwise(p, q):
    assert abs(js_generalized([p, q]) - js(p, q)) <= 1e-12


def test_generalized_disjoint_point_masses_hit_log2_t():
    for t in (2, 3, 4, 8):
        dists = [np.eye(t)[i] for i in range(t)]
        assert js_generalized(dists) == pytest.approx(math.log2(t), abs=1e-12)


@given(p=distributions(), q=distributions(), r=distributions())
@settings(max_examples=50)
def test_generalized_bound_and_permutation_invariance(p, q, r):
    base = js_generalized([p, q, r])
    assert -1e-12 <= base <= math.log2(3) + 1e-12
    assert js_generalized([r, p, q]) == pytest.approx(base, abs=1e-12)
    # weights permute together with the distributions
    w = [0.5, 0.3, 0.2]
    assert js_generalized([p, q, r], w) == pytest.approx(
        js_generalized([q, r, p], [0.3, 0.2, 0.5]), abs=1e-12
    )


def test_zero_weight_distribution_is_ignored():
    p = [1.0, 0.0]
    q = [0.0, 1.0]
    val = js_generalized([p, q], [1.0, 0.0])
    assert math.isfinite(val)
    assert val == pytest.approx(0.0, abs=1e-15)  # mixture equals p itself


def test_parameter_errors():
    with pytest.raises(ParameterError):
        js_generalized([[1.0, 0.0]])
    with pytest.raises(ParameterError):
        js_generalized([[1.0, 0.0]] * 2, [0.9, 0.2])
    with pytest.raises(ParameterError):
        js_generalized([[1.0, 0.0]] * 2, [1.2, -0.2])
    with pytest.raises(ParameterError):
        validate_weights([0.5], 2)
