import numpy as np
import pytest

from santalo.chamber import cell_of
from santalo.continuation import (
    ParametricSystem, SolutionSet, TrackerOptions, bezout_bound, conjectured_ml_degree,
    default_seed, homotopy_to_one, ml_degree, monodromy_solve, numerical_patch_degree,
    q_null_dimension, santalo_point_homotopy, santalo_system, seed_start_pair, track,
    track_santalo_path, _likelihood_run,
)
from santalo.errors import InvalidInputError, NumericalError
from santalo.newton import santalo_point
from santalo.polytope import FiberProblem, hrep_from_rows, hrep_to_fiber, random_polygon

from conftest import PENTAGON_B0, PENTAGON_B1, PERMUTAHEDRON_B, load

TRIANGLE = hrep_from_rows([[1, 0], [0, 1], [-1, -1]], [1, 1, 1])


def polygon_fiber(k, seed):
    return hrep_to_fiber(random_polygon(k, np.random.default_rng(seed))).fiber


class TestOptions:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            TrackerOptions(min_step=0)
        with pytest.raises(InvalidInputError):
            TrackerOptions(stall_loops=0)
        with pytest.raises(InvalidInputError):
            TrackerOptions(seed=-1)

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.delenv("SANTALO_SEED", raising=False)
        assert default_seed() == 0
        monkeypatch.setenv("SANTALO_SEED", "42")
        assert default_seed() == 42
        monkeypatch.setenv("SANTALO_SEED", "x")
        with pytest.raises(InvalidInputError):
            default_seed()


def test_jacobians_match_finite_differences(pentagon):
    cell = cell_of(pentagon.A, pentagon.b)
    ps = santalo_system(pentagon, cell)
    rng = np.random.default_rng(3)
    x = rng.uniform(0.5, 1.5, 5) + 0.1j * rng.standard_normal(5)
    p = rng.standard_normal(ps.num_params) + 1j * rng.standard_normal(ps.num_params)
    _, Jx, Jp = ps.evaluate(x, p)
    h = 1e-6
    for i in range(5):
        e = np.zeros(5, complex)
        e[i] = h
        fd = (ps.evaluate(x + e, p, False) - ps.evaluate(x - e, p, False)) / (2 * h)
        assert np.allclose(fd, Jx[:, i], atol=1e-6)
    for j in range(ps.num_params):
        e = np.zeros(ps.num_params, complex)
        e[j] = h
        fd = (ps.evaluate(x, p + e, False) - ps.evaluate(x, p - e, False)) / (2 * h)
        assert np.allclose(fd, Jp[:, j], atol=1e-6)


class TestRealPaths:
    def test_sampled_path_ends_at_the_direct_solve(self, pentagon):
        start = santalo_point(pentagon)
        samples = []
        x1 = track_santalo_path(pentagon, start.cell, PENTAGON_B0, start.x_star, PENTAGON_B1,
                                samples=samples)
        direct = santalo_point(pentagon.with_b(PENTAGON_B1), cell=start.cell).x_star
        assert np.abs(x1 - direct).max() < 1e-10
        ts = [t for t, _ in samples]
        assert ts[0] == 0.0 and ts[-1] == 1.0 and ts == sorted(ts) and len(ts) == 21
        A = pentagon.A.to_numpy()
        for t, x in samples:
            b = (1 - t) * np.array([1, .8, .8]) + t * np.array([1, 1, .8])
            assert np.allclose(A @ x, b, atol=1e-9) and (x > 0).all()

    def test_target_outside_the_cell(self, pentagon):
        start = santalo_point(pentagon)
        with pytest.raises(InvalidInputError, match="closed cell"):
            track_santalo_path(pentagon, start.cell, PENTAGON_B0, start.x_star, (1, 2, 1))

    def test_bad_start_point(self, pentagon):
        start = santalo_point(pentagon)
        with pytest.raises(InvalidInputError):
            track_santalo_path(pentagon, start.cell, PENTAGON_B0, [0.2] * 5, PENTAGON_B1)


class TestMonodromy:
    def test_start_pair_is_a_solution(self):
        fp = polygon_fiber(5, 11)
        cell = cell_of(fp.A, fp.b)
        ps = ParametricSystem.for_cell(cell, B=fp.B, L=fp.A.to_numpy())
        x0, q0 = seed_start_pair(ps, fp.b, 7)
        p0 = ps.params(q0, np.array([complex(v) for v in fp.b]))
        assert ps.cleared_residual(x0, p0) <= 1e-12
        assert np.allclose(fp.A.to_numpy() @ x0, [float(v) for v in fp.b])
        assert q_null_dimension(ps, x0) == ps.nq - ps.m

    def test_triangle_has_one_critical_point(self):
        fp = hrep_to_fiber(TRIANGLE).fiber
        assert ml_degree(fp, TrackerOptions(stall_loops=3)) == 1

    def test_deterministic_given_the_seed(self):
        fp = polygon_fiber(4, 5)
        cell = cell_of(fp.A, fp.b)
        opts = TrackerOptions(seed=9)
        _, a = _likelihood_run(fp, cell, opts)
        _, b = _likelihood_run(fp, cell, opts)
        assert len(a) == len(b) == 4
        for x, y in zip(a.solutions, b.solutions):
            assert np.allclose(x, y, rtol=1e-9)
        meta = a.to_json_obj()["metadata"]
        assert meta["count"] == 4 and meta["seed"] == 9 and meta["residual_max"] < 1e-10

    def test_target_count_stops_early(self):
        fp = polygon_fiber(5, 3)
        cell = cell_of(fp.A, fp.b)
        _, sols = _likelihood_run(fp, cell, TrackerOptions(seed=1), target_count=3)
        assert len(sols) == 3

    def test_rejects_a_non_solution(self):
        fp = polygon_fiber(4, 5)
        ps = santalo_system(fp, cell_of(fp.A, fp.b))
        p0 = ps.params(np.ones(ps.nq), np.array([complex(v) for v in fp.b]))
        with pytest.raises(NumericalError):
            monodromy_solve(ps, p0, np.ones(ps.n, complex))

    def test_homotopy_to_one_matches_newton(self, pentagon):
        res = santalo_point_homotopy(pentagon, TrackerOptions(seed=4), target_count=11)
        assert np.abs(res.x_star - santalo_point(pentagon).x_star).max() < 1e-10
        assert res.y_star == pytest.approx([-0.00311069] * 2, abs=1e-8)

    def test_incomplete_start_set_is_reported(self):
        fp = polygon_fiber(5, 21)
        ps = santalo_system(fp, cell_of(fp.A, fp.b))
        _, q0 = seed_start_pair(ps, fp.b, 2)
        # an empty start set has no path to the positive point
        partial = SolutionSet(ps.params(q0, np.array([complex(v) for v in fp.b])), [])
        with pytest.raises(NumericalError, match="positive endpoint"):
            homotopy_to_one(ps, fp, partial)

    def test_quadrilateral_patch_degree(self):
        fp = polygon_fiber(4, 8)
        assert numerical_patch_degree(cell_of(fp.A, fp.b), TrackerOptions(seed=0)) == 4


def test_bounds_and_formula():
    assert [conjectured_ml_degree(n) for n in range(3, 12)] == [1, 4, 11, 22, 37, 56, 79, 106, 137]
    cell = cell_of(load("pentagon_A.txt"), PENTAGON_B0)
    # (2 * 5 - 5 + 3 - 1)^(5 - 3)
    assert bezout_bound(cell) == 49


@pytest.mark.extended
@pytest.mark.parametrize("n", [7, 8, 9, 10, 11])
def test_ml_degree_table_extended(n):
    fp = hrep_to_fiber(random_polygon(n, np.random.default_rng(1000 + n))).fiber
    assert ml_degree(fp, TrackerOptions(seed=0)) == conjectured_ml_degree(n)


@pytest.mark.extended
def test_permutahedron_ml_degree_extended():
    fp = FiberProblem(load("permutahedron_A.txt"), PERMUTAHEDRON_B)
    assert ml_degree(fp, TrackerOptions(seed=0), cross_check=False) == 569
