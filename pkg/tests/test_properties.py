"""Invariants checked on generated inputs."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from santalo.chamber import enumerate_cells
from santalo.dual_volume import (
    WachspressModel, dual_volume_for_cell, dual_volume_y, eval_log_V, volume_scale,
)
from santalo.exact import kernel_basis
from santalo.newton import santalo_point_hrep
from santalo.polytope import hrep_to_fiber, random_polygon

from conftest import load

CELLS = [c for name in ("pentagon_A.txt", "quadrilateral_A.txt", "segment_A.txt")
         for c in enumerate_cells(load(name))]
positive_fraction = st.fractions(min_value=Fraction(1, 50), max_value=50, max_denominator=60)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CELLS), st.lists(positive_fraction, min_size=5, max_size=5), positive_fraction)
def test_dual_volume_is_homogeneous_of_degree_d_minus_n(cell, xs, t):
    dv = dual_volume_for_cell(cell)
    x = xs[:dv.n]
    d, n = cell.A.rows, cell.A.cols
    assert dv([t * v for v in x]) == t ** (d - n) * dv(x)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CELLS), st.integers(0, 2 ** 32 - 1))
def test_log_derivatives_match_central_differences(cell, seed):
    dv = dual_volume_for_cell(cell)
    x = np.random.default_rng(seed).uniform(0.2, 3.0, dv.n)
    _, g, H = eval_log_V(dv, x)
    h = 1e-6
    for i in range(dv.n):
        e = np.zeros(dv.n)
        e[i] = h * x[i]
        fp, gp, _ = eval_log_V(dv, x + e)
        fm, gm, _ = eval_log_V(dv, x - e)
        assert (fp - fm) / (2 * e[i]) == pytest.approx(g[i], rel=1e-6, abs=1e-6)
        assert (gp - gm) / (2 * e[i]) == pytest.approx(H[:, i], rel=1e-5, abs=1e-5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CELLS), st.integers(0, 2 ** 32 - 1))
def test_log_volume_is_convex_on_the_fiber(cell, seed):
    # the Hessian restricted to ker A is positive definite
    dv = dual_volume_for_cell(cell)
    B = kernel_basis(cell.A).to_numpy()
    x = np.random.default_rng(seed).uniform(0.2, 3.0, dv.n)
    H = eval_log_V(dv, x)[2]
    assert np.linalg.eigvalsh(B.T @ H @ B).min() > 0


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2 ** 32 - 1), st.lists(st.integers(1, 20), min_size=7, max_size=7))
def test_wachspress_coordinates_are_a_probability_vector(k, seed, weights):
    h = random_polygon(k, np.random.default_rng(seed))
    model = WachspressModel(h)
    w = [Fraction(v) for v in weights[:k]]
    y = tuple(sum(wi * v[i] for wi, v in zip(w, model.vertices)) / sum(w) for i in range(2))
    p = model(y)
    assert sum(p) == 1 and all(v > 0 for v in p)


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2 ** 32 - 1))
def test_santalo_point_minimizes_the_dual_area_locally(k, seed):
    h = random_polygon(k, np.random.default_rng(seed))
    y = santalo_point_hrep(h).y_star
    base = float(dual_volume_y(h, list(y)))
    rng = np.random.default_rng(seed)
    for _ in range(8):
        step = rng.standard_normal(2) * 1e-2
        assert float(dual_volume_y(h, list(y + step))) >= base


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 6), st.integers(0, 2 ** 32 - 1))
def test_volume_scale_is_positive_and_exact(k, seed):
    fp = hrep_to_fiber(random_polygon(k, np.random.default_rng(seed))).fiber
    s = volume_scale(fp)
    assert isinstance(s, Fraction) and s > 0
