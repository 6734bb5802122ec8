from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from santalo.errors import InvalidInputError
from santalo.exact import (
    ExactMatrix, affine_dimension, det, feasible_nonneg, in_cone, inverse, kernel_basis,
    minor_det, parse_rational, parse_vector, primitive, rank, solve_exact,
)

small_int = st.integers(-6, 6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small_int, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


class TestParsing:
    def test_integers_and_fractions(self):
        assert parse_rational("3") == 3
        assert parse_rational(" -4/6 ") == Fraction(-2, 3)
        assert parse_vector("1, 4/5,4/5") == (1, Fraction(4, 5), Fraction(4, 5))

    @pytest.mark.parametrize("bad", ["0.5", "1e3", "a", "1/0", "", "1//2", "nan"])
    def test_rejects(self, bad):
        with pytest.raises(InvalidInputError):
            parse_rational(bad)

    def test_empty_vector(self):
        with pytest.raises(InvalidInputError):
            parse_vector(" , ")

    def test_matrix_text_round_trip(self):
        M = ExactMatrix.from_rows([[1, Fraction(-2, 3)], [0, 5]])
        assert ExactMatrix.from_text(M.to_text()) == M

    def test_matrix_text_comments_and_ragged_rows(self):
        assert ExactMatrix.from_text("# header\n1 2\n3 4 # tail\n").shape == (2, 2)
        with pytest.raises(InvalidInputError):
            ExactMatrix.from_text("1 2\n3\n")
        with pytest.raises(InvalidInputError):
            ExactMatrix.from_text("# nothing\n")


class TestElimination:
    @settings(max_examples=60, deadline=None)
    @given(int_matrix(4, 4))
    def test_det_matches_numpy(self, rows):
        assert float(det(ExactMatrix.from_rows(rows))) == pytest.approx(np.linalg.det(np.array(rows)), abs=1e-6)

    @settings(max_examples=60, deadline=None)
    @given(int_matrix(3, 5))
    def test_rank_and_kernel(self, rows):
        A = ExactMatrix.from_rows(rows)
        r = rank(A)
        assert r == np.linalg.matrix_rank(np.array(rows, dtype=float))
        if r < 3:
            with pytest.raises(InvalidInputError):
                kernel_basis(A)
        K = kernel_basis(A, expected_rank=r)
        assert K.shape == (5, 5 - r)
        assert (A @ K).is_zero() if K.cols else True
        if K.cols:
            assert rank(K) == K.cols

    @settings(max_examples=40, deadline=None)
    @given(int_matrix(3, 3), st.lists(small_int, min_size=3, max_size=3))
    def test_solve_and_inverse(self, rows, rhs):
        M = ExactMatrix.from_rows(rows)
        if det(M) == 0:
            with pytest.raises(InvalidInputError):
                inverse(M)
            return
        x = solve_exact(M, rhs)
        assert M @ x == tuple(Fraction(v) for v in rhs)
        assert M @ inverse(M) == ExactMatrix.identity(3)

    def test_minor(self):
        A = ExactMatrix.from_rows([[1, 1, 1, 1, 1], [2, 1, 0, 1, 0], [1, 2, 0, 0, 1]])
        assert minor_det(A, range(3), [0, 1, 2]) == det(A.submatrix(None, [0, 1, 2])) == 3

    def test_primitive(self):
        assert primitive([Fraction(2, 3), Fraction(-4, 3), 0]) == (1, -2, 0)
        assert primitive([0, 0]) == (0, 0)


class TestFeasibility:
    def test_feasible_solution_is_valid(self):
        M = ExactMatrix.from_rows([[1, 1, 1], [1, -1, 0]])
        x = feasible_nonneg(M, [2, 0])
        assert x is not None and all(v >= 0 for v in x) and M @ x == (2, 0)

    def test_infeasible(self):
        M = ExactMatrix.from_rows([[1, 1]])
        assert feasible_nonneg(M, [-1]) is None

    def test_degenerate_cycling_guard(self):
        # a classic degenerate system; Bland's rule must terminate
        M = ExactMatrix.from_rows([[1, -1, 1, 0], [1, 1, 0, 1], [2, 0, 1, 1]])
        assert feasible_nonneg(M, [0, 0, 0]) is not None

    def test_in_cone(self):
        gens = [(1, 0), (1, 1)]
        assert in_cone(gens, (2, 1))
        assert not in_cone(gens, (0, 1))
        assert in_cone([], (0, 0)) and not in_cone([], (1, 0))

    @settings(max_examples=40, deadline=None)
    @given(int_matrix(2, 4), st.lists(st.integers(0, 5), min_size=4, max_size=4))
    def test_constructed_feasible_points_are_found(self, rows, x0):
        M = ExactMatrix.from_rows(rows)
        x = feasible_nonneg(M, M @ x0)
        assert x is not None and all(v >= 0 for v in x) and M @ x == M @ x0


def test_affine_dimension():
    assert affine_dimension([]) == -1
    assert affine_dimension([(1, 2)]) == 0
    pts = [tuple(map(Fraction, p)) for p in [(0, 0, 0), (1, 1, 1), (2, 2, 2)]]
    assert affine_dimension(pts) == 1
