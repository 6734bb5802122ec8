from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from santalo.errors import InvalidInputError
from santalo.poly import SparsePoly

N = 3
exps = st.tuples(*[st.integers(0, 3)] * N)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda t: SparsePoly(N, t))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=5)] * N)


@settings(max_examples=80, deadline=None)
@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - p) == SparsePoly.zero(N)


@settings(max_examples=60, deadline=None)
@given(polys, points)
def test_compiled_matches_exact(p, x):
    xf = np.array([float(v) for v in x])
    assert float(p.compiled.value(xf)) == pytest.approx(float(p(x)), rel=1e-9, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(polys, points)
def test_gradient_and_hessian_match_symbolic_derivatives(p, x):
    xf = np.array([float(v) for v in x])
    val, g, H = p.compiled.value_grad_hess(xf)
    for i in range(N):
        assert g[i] == pytest.approx(float(p.diff(i)(x)), rel=1e-9, abs=1e-9)
        for j in range(N):
            assert H[i, j] == pytest.approx(float(p.diff(i).diff(j)(x)), rel=1e-9, abs=1e-8)


def test_zero_coordinates_use_the_product_path():
    p = SparsePoly(2, {(2, 1): 3, (0, 2): 1, (1, 0): -2})
    val, g, H = p.compiled.value_grad_hess(np.array([0.0, 2.0]))
    assert val == 4.0
    assert g.tolist() == [-2.0, 4.0]
    assert H.tolist() == [[12.0, 0.0], [0.0, 2.0]]


def test_complex_evaluation():
    p = SparsePoly(2, {(1, 1): 1, (0, 0): 1})
    assert p.compiled.value(np.array([1j, 1j])) == 0


@settings(max_examples=40, deadline=None)
@given(polys)
def test_json_round_trip(p):
    assert SparsePoly.from_json(p.to_json()) == p


def test_structure():
    p = SparsePoly.linear([1, 2], 3) * SparsePoly.variable(2, 0)
    assert p.degree == 2 and not p.is_homogeneous()
    assert SparsePoly.monomial(3, [0, 2, 2]).terms == {(1, 0, 2): 1}
    assert str(SparsePoly(2, {(1, 1): Fraction(1, 2), (0, 0): 1})) == "1/2*x1*x2 + 1"
    assert SparsePoly.zero(4).degree == -1


def test_bad_exponents():
    with pytest.raises(InvalidInputError):
        SparsePoly(2, {(1,): 1})
    with pytest.raises(InvalidInputError):
        SparsePoly(2, {(1, -1): 1})
