from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from santalo.chamber import cell_of, enumerate_cells, same_cell
from santalo.errors import InvalidInputError, WallError
from santalo.exact import ExactMatrix

from conftest import load

PENTAGON_CELLS = enumerate_cells(load("pentagon_A.txt"))


def test_quadrilateral_cells(quad_A):
    got = {(frozenset(c.facet_support), frozenset(c.vertex_family)): c for c in enumerate_cells(quad_A)}
    fam = lambda *sets: frozenset(frozenset(i - 1 for i in s) for s in sets)  # noqa: E731
    expected = {
        (frozenset({1, 2, 3}), fam({2, 3}, {2, 4}, {3, 4})),
        (frozenset({0, 1, 2, 3}), fam({1, 3}, {1, 4}, {2, 3}, {2, 4})),
        (frozenset({0, 1, 2}), fam({1, 2}, {1, 3}, {2, 3})),
    }
    assert set(got) == expected
    C2 = got[(frozenset({0, 1, 2, 3}), fam({1, 3}, {1, 4}, {2, 3}, {2, 4}))]
    # C2 = {b1 <= b2, 2 b1 >= b2}
    assert C2.inequalities.to_rows() == [[-1, 1], [2, -1]]


def test_pentagon_profile(pentagon_A):
    cells = enumerate_cells(pentagon_A)
    assert [c.n_facets for c in cells] == [5] + [4] * 5 + [3] * 5
    assert len({c.generators for c in cells}) == 11
    for c in cells:
        assert cell_of(pentagon_A, c.witness) == c
        assert c.contains(c.witness)


def test_segment_cells(segment_A):
    cells = enumerate_cells(segment_A)
    assert len(cells) == 2
    C1 = cell_of(segment_A, (1, 2))
    assert C1.facet_support == {0, 1}
    assert C1.vertex_family == {frozenset({0}), frozenset({1})}


def test_wall_points_raise_with_the_normal(pentagon_A, segment_A):
    with pytest.raises(WallError) as err:
        cell_of(segment_A, (1, 1))
    assert tuple(abs(e) for e in err.value.normal) == (1, 1)
    with pytest.raises(WallError):
        cell_of(pentagon_A, (1, 1, Fraction(4, 5)))


def test_closed_cell_membership_across_a_wall(pentagon_A):
    b0 = (1, Fraction(4, 5), Fraction(4, 5))
    assert same_cell(pentagon_A, b0, (1, 1, Fraction(4, 5)))   # on the boundary
    assert same_cell(pentagon_A, b0, (2, Fraction(8, 5), Fraction(8, 5)))
    assert not same_cell(pentagon_A, b0, (1, Fraction(3, 2), Fraction(1, 5)))


def test_enumeration_guard():
    A = ExactMatrix.from_rows([[1] * 6])
    with pytest.raises(InvalidInputError):
        enumerate_cells(A)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=5, max_size=5))
def test_generic_points_land_in_an_enumerated_cell(pentagon_A, weights):
    # b = A x for x > 0 is interior to cone(A); off walls it lies in exactly one cell
    b = pentagon_A @ weights
    try:
        cell = cell_of(pentagon_A, b)
    except WallError:
        return
    assert cell in PENTAGON_CELLS
    assert sum(c.contains(b) for c in PENTAGON_CELLS) == 1
