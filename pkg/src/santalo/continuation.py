"""Homotopy continuation for the critical-point systems of log-dual-volume.

For a cell C with facet support F and kernel matrix B the square system in
x in C^n is

    F(x; q, l) = ( N_F^T (u0 d_i alpha / alpha - u_i / x_i)_{i in F} ;  L x - l ),

with q = (u0, u_F), N_F the rows of B indexed by F, and (L, l) an affine
slice of codimension d.  With L = A and l = b this is the likelihood system
whose generic solution count is the ML degree; moving l with a random
complex L counts points of the patch variety instead; and with q = 1 and
l = b(t) real, tracking one path follows the Santaló point.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .chamber import Cell, cell_of
from .dual_volume import DualVolume, dual_volume_for_cell
from .errors import InvalidInputError, NumericalError
from .exact import kernel_basis, to_vector
from .newton import SantaloResult, minimize_log_volume
from .polytope import FiberProblem

logger = logging.getLogger(__name__)

DEDUP_TOL = 1e-8
# loop radii cycle through these multiples of the parameter scale: small
# loops alone can keep swapping the same few solutions
LOOP_RADII = (1.0, 3.0, 10.0)
POLISH_TOL = 1e-13
# how far polishing may move a user-supplied start point
START_TOL = 1e-6
# offset of the independent cross-check seed (golden-ratio increment)
SECOND_SEED_OFFSET = 0x9E3779B97F4A7C15


def default_seed() -> int:
    """Seed from SANTALO_SEED, or 0."""
    raw = os.environ.get("SANTALO_SEED")
    if raw is None or raw == "":
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise InvalidInputError(f"SANTALO_SEED must be a decimal integer, got {raw!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise InvalidInputError("SANTALO_SEED must fit in 64 unsigned bits")
    return seed


@dataclass(frozen=True)
class TrackerOptions:
    initial_step: float = 0.05
    max_step: float = 0.25
    min_step: float = 1e-14
    corrector_tol: float = 1e-10
    max_corrector_iters: int = 3
    seed: int = 0
    stall_loops: int = 10
    max_loops: int = 10_000
    divergence_bound: float = 1e8
    loop_scale: float = 1.0

    def __post_init__(self):
        if not self.min_step > 0:
            raise InvalidInputError("min_step must be positive")
        if not (self.corrector_tol > 0 and self.initial_step > 0 and self.max_step > 0):
            raise InvalidInputError("step sizes and tolerances must be positive")
        if self.max_corrector_iters < 1 or self.stall_loops < 1:
            raise InvalidInputError("iteration counts must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidInputError("seed must fit in 64 unsigned bits")


class ParametricSystem:
    """F(x; p) for one cell, with parameters p = (u0, u_F, l)."""

    def __init__(self, dv: DualVolume, L: np.ndarray, B: np.ndarray):
        self.dv = dv
        self.facets = np.array(sorted(dv.facet_support))
        self.n = dv.n
        self.L = np.asarray(L)
        self.d = self.L.shape[0]
        self.m = self.n - self.d
        B = np.asarray(B, dtype=float)
        if B.shape != (self.n, self.m):
            raise InvalidInputError(f"kernel matrix must be {self.n}x{self.m}")
        self.NF = B[self.facets, :]
        self.nq = 1 + len(self.facets)
        self.num_params = self.nq + self.d
        self._poly = dv.numerator.compiled

    @classmethod
    def for_cell(cls, cell: Cell, B=None, L=None) -> "ParametricSystem":
        dv = dual_volume_for_cell(cell)
        Bm = (B if B is not None else kernel_basis(cell.A)).to_numpy()
        return cls(dv, cell.A.to_numpy() if L is None else L, Bm)

    def params(self, q, ell) -> np.ndarray:
        return np.concatenate([np.asarray(q), np.asarray(ell)])

    def split(self, p):
        return p[:self.nq], p[self.nq:]

    def q_matrix(self, x) -> np.ndarray:
        """G(x) with first block of F equal to G(x) q; F is linear in q."""
        a, g, _ = self._poly.value_grad_hess(x)
        F = self.facets
        cols = np.concatenate([(g[F] / a)[:, None], -np.diag(1 / x[F])], axis=1)
        return self.NF.T @ cols

    def _core(self, x, p):
        q, ell = self.split(p)
        u0, u = q[0], q[1:]
        F = self.facets
        a, g, H = self._poly.value_grad_hess(x)
        xf = x[F]
        gF = g[F] / a
        val = np.concatenate([self.NF.T @ (u0 * gF - u / xf), self.L @ x - ell])
        return val, a, g, H, gF, xf, u0, u

    def _jx(self, x, a, g, H, gF, xf, u0, u):
        F = self.facets
        dr = u0 * (H[F, :] / a - np.outer(gF, g) / a)
        dr[np.arange(len(F)), F] += u / xf ** 2
        return np.concatenate([self.NF.T @ dr, self.L])

    def evaluate(self, x, p, jacobian: bool = True):
        """F(x; p) and optionally dF/dx (n x n) and dF/dp (n x num_params)."""
        val, *parts = self._core(x, p)
        if not jacobian:
            return val
        Jx = self._jx(x, *parts)
        gF, xf = parts[3], parts[4]
        Jp = np.zeros((self.n, self.num_params), dtype=np.result_type(x, p, float))
        Jp[:self.m, 0] = self.NF.T @ gF
        Jp[:self.m, 1:self.nq] = -self.NF.T / xf
        Jp[self.m:, self.nq:] = -np.eye(self.d)
        return val, Jx, Jp

    def value_and_jx(self, x, p):
        """F(x; p) and dF/dx, skipping the parameter Jacobian."""
        val, *parts = self._core(x, p)
        return val, self._jx(x, *parts)

    def jx_and_directional(self, x, p, dp):
        """dF/dx and (dF/dp) dp."""
        _, *parts = self._core(x, p)
        Jx = self._jx(x, *parts)
        gF, xf = parts[3], parts[4]
        dq, dl = self.split(dp)
        Jdp = np.concatenate([self.NF.T @ (dq[0] * gF - dq[1:] / xf), -dl])
        return Jx, Jdp

    def cleared_residual(self, x, p) -> float:
        """Relative residual of the polynomial system obtained by clearing alpha * x_F."""
        q, ell = self.split(p)
        u0, u = q[0], q[1:]
        F = self.facets
        a, g, _ = self._poly.value_grad_hess(x)
        xf = x[F]
        others = np.array([np.prod(np.delete(xf, i)) for i in range(len(F))])
        terms = (u0 * g[F] * xf - u * a) * others
        scale = (np.abs(u0 * g[F] * xf) + np.abs(u * a)) * np.abs(others)
        top = np.abs(self.NF.T @ terms) / np.maximum(np.abs(self.NF.T) @ scale, 1e-300)
        lin = np.abs(self.L @ x - ell) / (np.abs(self.L) @ np.abs(x) + np.abs(ell) + 1e-300)
        return float(max(top.max(initial=0.0), lin.max(initial=0.0)))

    def off_divisor(self, x, tol: float = 1e-12) -> bool:
        c = self._poly
        mons = c._powers(x)[c.exps, np.arange(self.n)].prod(axis=1)
        a = c.coeffs @ mons
        xf = np.abs(x[self.facets])
        scale = max(1.0, float(np.max(np.abs(x))))
        return abs(a) > tol * (np.abs(c.coeffs) @ np.abs(mons)) and xf.min() > tol * scale

    def smallest_singular_value(self, x, p) -> float:
        _, Jx = self.value_and_jx(x, p)
        return float(np.linalg.svd(Jx, compute_uv=False)[-1])


# --- path tracking --------------------------------------------------------------

def _newton(ps: ParametricSystem, x, p, tol, max_iter):
    """Newton corrector; returns (x, converged, first correction norm)."""
    first = None
    for _ in range(max_iter):
        val, Jx = ps.value_and_jx(x, p)
        try:
            dx = np.linalg.solve(Jx, -val)
        except np.linalg.LinAlgError:
            return x, False, first
        if not np.all(np.isfinite(dx)):
            return x, False, first
        x = x + dx
        nd = float(np.linalg.norm(dx))
        first = nd if first is None else first
        if nd <= tol * (1 + float(np.linalg.norm(x))):
            return x, True, first
    return x, False, first


def polish(ps: ParametricSystem, x, p, tol: float = POLISH_TOL, max_iter: int = 8):
    x, ok, _ = _newton(ps, np.asarray(x), p, tol, max_iter)
    return x, ok


def track(ps: ParametricSystem, x, pa, pb, opts: TrackerOptions,
          accept: Callable[[np.ndarray], bool] | None = None):
    """Follow the solution x of F(.; pa) = 0 to F(.; pb) = 0 along the segment.

    RK4 predictor on dx/dt = -Jx^{-1} Jp (pb - pa), Newton corrector,
    step doubled after three easy steps and halved on failure.  Returns the
    endpoint or None if the step underflowed, the path diverged, or
    ``accept`` rejected an iterate.
    """
    dp = pb - pa
    x = np.array(x)
    t, h, easy = 0.0, opts.initial_step, 0

    def velocity(xv, tv):
        Jx, Jdp = ps.jx_and_directional(xv, pa + tv * dp, dp)
        return np.linalg.solve(Jx, -Jdp)

    while t < 1.0:
        h = min(h, 1.0 - t)
        try:
            k1 = velocity(x, t)
            k2 = velocity(x + 0.5 * h * k1, t + 0.5 * h)
            k3 = velocity(x + 0.5 * h * k2, t + 0.5 * h)
            k4 = velocity(x + h * k3, t + h)
            pred = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            ok = bool(np.all(np.isfinite(pred)))
        except np.linalg.LinAlgError:
            ok = False
        if ok:
            xn, ok, first = _newton(ps, pred, pa + (t + h) * dp, opts.corrector_tol,
                                    opts.max_corrector_iters)
            # a large first correction means the predictor left the path's basin
            ok = ok and (first is None or first <= 0.1 * (1 + float(np.linalg.norm(xn))))
            ok = ok and (accept is None or accept(xn))
        if ok:
            x, t = xn, t + h
            easy += 1
            if easy >= 3:
                h, easy = min(2 * h, opts.max_step), 0
            if np.linalg.norm(x) > opts.divergence_bound:
                return None
        else:
            h, easy = h / 2, 0
            if h < opts.min_step:
                return None
    return x


# --- real Santaló paths --------------------------------------------------------------

def santalo_system(fp: FiberProblem, cell: Cell) -> ParametricSystem:
    return ParametricSystem(dual_volume_for_cell(cell), fp.A.to_numpy(), fp.B.to_numpy())


def track_santalo_path(fp: FiberProblem, cell: Cell, b0: Sequence, x0: Sequence, b1: Sequence,
                       opts: TrackerOptions | None = None, samples: list | None = None) -> np.ndarray:
    """x*(b1) from x*(b0) by following the Santaló patch of ``cell`` over b(t) = (1-t) b0 + t b1.

    All arithmetic is real.  If ``samples`` is a list, (t, x(t)) pairs of
    accepted steps are appended to it.
    """
    opts = opts or TrackerOptions()
    b0v, b1v = to_vector(b0), to_vector(b1)
    if not cell.contains(b1v):
        raise InvalidInputError("b1 is not in the closed cell of b0; restart with `santalo` at b1")
    if not cell.contains(b0v):
        raise InvalidInputError("b0 is not in the closed cell supplied")
    ps = santalo_system(fp, cell)
    ones = np.ones(ps.nq)
    pa = ps.params(ones, np.array([float(v) for v in b0v]))
    pb = ps.params(ones, np.array([float(v) for v in b1v]))
    x = np.asarray(x0, dtype=float)
    if samples is not None:
        samples.append((0.0, x.copy()))
    if np.array_equal(pa, pb):
        return x
    x, ok = polish(ps, x0 := x, pa, tol=opts.corrector_tol)
    if not ok or np.linalg.norm(x - x0) > START_TOL * (1 + np.linalg.norm(x0)):
        raise InvalidInputError("x0 is not a solution of the patch equations at b0")

    F = ps.facets

    def positive(xv):
        return bool(np.all(xv[F] > 0))

    # sampling splits the path into equal sub-segments, each tracked adaptively
    n_seg = 1 if samples is None else 20
    for s in range(n_seg):
        qa = pa + (pb - pa) * (s / n_seg)
        qb = pa + (pb - pa) * ((s + 1) / n_seg)
        xn = track(ps, x, qa, qb, opts, accept=positive)
        if xn is None:
            raise NumericalError(
                f"real path tracking failed near t = {s / n_seg:.3f}: step underflow "
                "(the path met a singularity; this indicates a bug or b outside the cell)")
        x = xn
        if samples is not None:
            samples.append(((s + 1) / n_seg, x.copy()))
    x, _ = polish(ps, x, pb)
    return x


# --- monodromy -------------------------------------------------------------------------

@dataclass
class SolutionSet:
    parameter_value: np.ndarray
    solutions: list[np.ndarray]
    regularity: list[float] = field(default_factory=list)
    seed: int = 0
    loops_tracked: int = 0
    residual_max: float = 0.0

    def __len__(self):
        return len(self.solutions)

    def canonical(self) -> "SolutionSet":
        order = sorted(range(len(self.solutions)),
                       key=lambda k: tuple(np.round(np.concatenate(
                           [self.solutions[k].real, self.solutions[k].imag]), 10)))
        return SolutionSet(self.parameter_value, [self.solutions[k] for k in order],
                           [self.regularity[k] for k in order] if self.regularity else [],
                           self.seed, self.loops_tracked, self.residual_max)

    def to_json_obj(self) -> dict:
        return {"solutions": [{"re": s.real.tolist(), "im": s.imag.tolist()} for s in self.solutions],
                "metadata": {"count": len(self.solutions), "seed": self.seed,
                             "loops_tracked": self.loops_tracked,
                             "residual_max": self.residual_max}}


def _is_new(x, sols) -> bool:
    for s in sols:
        if np.max(np.abs(x - s) / np.maximum(1.0, np.abs(s))) <= DEDUP_TOL:
            return False
    return True


def _complex_gauss(rng, size):
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def seed_start_pair(ps: ParametricSystem, b: Sequence, seed: int | np.random.Generator = 0,
                    max_tries: int = 20):
    """A random complex x0 with L x0 = b and parameters q0 making it a solution.

    F is linear in q, so q0 is a random combination of a null-space basis
    of G(x0).  Returns (x0, q0).
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    ell = np.asarray([complex(v) for v in b])
    L = ps.L
    base = np.linalg.lstsq(L.astype(complex), ell, rcond=None)[0]
    _, s, Vh = np.linalg.svd(L)
    null = Vh[np.sum(s > 1e-12 * s[0]):].conj().T
    scale = max(1.0, float(np.linalg.norm(base)) / np.sqrt(ps.n))
    for _ in range(max_tries):
        x0 = base + null @ _complex_gauss(rng, null.shape[1]) * scale
        if np.any(np.abs(x0[ps.facets]) < 1e-6 * scale):
            continue
        G = ps.q_matrix(x0)
        if not np.all(np.isfinite(G)):
            continue
        _, sg, Vg = np.linalg.svd(G)
        r = int(np.sum(sg > 1e-10 * sg[0]))
        if r < ps.m:
            continue
        K = Vg[r:].conj().T
        q0 = K @ _complex_gauss(rng, K.shape[1])
        q0 = q0 / np.linalg.norm(q0) * np.sqrt(ps.nq)
        p0 = ps.params(q0, ell)
        if ps.cleared_residual(x0, p0) <= 1e-12:
            return x0, q0
    raise NumericalError("could not draw a nondegenerate start pair")


def q_null_dimension(ps: ParametricSystem, x0) -> int:
    sg = np.linalg.svd(ps.q_matrix(x0), compute_uv=False)
    return ps.nq - int(np.sum(sg > 1e-10 * sg[0]))


def monodromy_solve(ps: ParametricSystem, p0: np.ndarray, x0: np.ndarray,
                    opts: TrackerOptions | None = None, target_count: int | None = None,
                    moving: np.ndarray | None = None, rng: np.random.Generator | None = None) -> SolutionSet:
    """All regular solutions of F(.; p0) = 0 reachable from x0 by monodromy.

    Loops are triangles p0 -> p0 + d1 -> p0 + d2 -> p0 in the coordinates
    selected by ``moving`` (default: all of q and l), with complex Gaussian
    offsets scaled blockwise to the size of q and of l, times a radius
    factor cycling through ``LOOP_RADII``.  Moving l as well
    as q mixes the solutions far faster; loops still return to p0, so the
    count is that of the fiber over p0.  Stops at ``target_count`` or after
    ``opts.stall_loops`` consecutive loops without a new solution.
    """
    opts = opts or TrackerOptions()
    rng = rng or np.random.default_rng(opts.seed)
    if moving is None:
        moving = np.ones(ps.num_params, dtype=bool)
    x0, ok = polish(ps, np.asarray(x0, dtype=complex), p0)
    if not ok or not ps.off_divisor(x0):
        raise NumericalError("the start point is not a regular solution")
    sols = [x0]
    loops = stall = failures = 0
    # each parameter block (q, then l) moves on the scale of its own magnitude
    scale = np.zeros(ps.num_params)
    for block in (slice(0, ps.nq), slice(ps.nq, ps.num_params)):
        vals = p0[block]
        if vals.size:
            scale[block] = np.linalg.norm(vals) / np.sqrt(vals.size)
    scale = opts.loop_scale * scale[moving]
    while True:
        if target_count is not None and len(sols) >= target_count:
            break
        if stall >= opts.stall_loops:
            break
        if loops >= opts.max_loops:
            raise NumericalError(f"loop budget of {opts.max_loops} exhausted with {len(sols)} solutions")
        radius = scale * LOOP_RADII[loops % len(LOOP_RADII)]
        p1, p2 = p0.copy(), p0.copy()
        p1[moving] += radius * _complex_gauss(rng, moving.sum())
        p2[moving] += radius * _complex_gauss(rng, moving.sum())
        found = 0
        for x in list(sols):
            y = x
            for a, b in ((p0, p1), (p1, p2), (p2, p0)):
                y = track(ps, y, a, b, opts)
                if y is None:
                    break
            if y is None:
                failures += 1
                continue
            y, ok = polish(ps, y, p0)
            if ok and ps.off_divisor(y) and _is_new(y, sols):
                sols.append(y)
                found += 1
                if target_count is not None and len(sols) >= target_count:
                    break
        loops += 1
        stall = 0 if found else stall + 1
        logger.debug("loop %d: %d new, %d total", loops, found, len(sols))
    if target_count is not None and len(sols) > target_count:
        raise NumericalError(f"found {len(sols)} solutions, more than the expected {target_count}")
    res = [ps.cleared_residual(x, p0) for x in sols]
    reg = [ps.smallest_singular_value(x, p0) for x in sols]
    logger.info("monodromy: %d solutions after %d loops (%d failed paths)", len(sols), loops, failures)
    return SolutionSet(p0, sols, reg, opts.seed, loops, float(max(res))).canonical()


def homotopy_to_one(ps: ParametricSystem, fp: FiberProblem, sols: SolutionSet,
                    opts: TrackerOptions | None = None) -> SantaloResult:
    """Track every solution from q0 to q = 1 and return the unique positive endpoint."""
    opts = opts or TrackerOptions()
    p0 = sols.parameter_value
    q0, ell = ps.split(p0)
    p1 = ps.params(np.ones(ps.nq, dtype=complex), ell)
    positive = []
    for x in sols.solutions:
        y = track(ps, x, p0, p1, opts)
        if y is None:
            continue
        y, ok = polish(ps, y, p1)
        if not ok:
            continue
        scale = max(1.0, float(np.max(np.abs(y))))
        if np.max(np.abs(y.imag)) < 1e-8 * scale and np.all(y.real > 0) and _is_new(y, positive):
            positive.append(y)
    if len(positive) != 1:
        raise NumericalError(
            f"expected exactly one positive endpoint at u = 1, found {len(positive)}; "
            "the start solution set may be incomplete")
    x = positive[0].real
    A = fp.A.to_numpy()
    b = np.array([float(v) for v in fp.b])
    B = fp.B.to_numpy()
    x, f, gnorm, it = minimize_log_volume(ps.dv, A, b, B, x, tol=1e-12, max_iter=20)
    origin = np.array([float(v) for v in fp.origin]) if fp.origin else np.zeros(fp.n)
    return SantaloResult(x, B.T @ (x - origin), f, gnorm, it, ps.dv.cell)


def _likelihood_run(fp: FiberProblem, cell: Cell, opts: TrackerOptions, target_count=None):
    ps = ParametricSystem(dual_volume_for_cell(cell), fp.A.to_numpy(), fp.B.to_numpy())
    rng = np.random.default_rng(opts.seed)
    x0, q0 = seed_start_pair(ps, fp.b, rng)
    p0 = ps.params(q0, np.array([complex(v) for v in fp.b]))
    return ps, monodromy_solve(ps, p0, x0, opts, target_count, rng=rng)


def santalo_point_homotopy(fp: FiberProblem, opts: TrackerOptions | None = None,
                           cell: Cell | None = None, target_count: int | None = None) -> SantaloResult:
    """Santaló point by monodromy at random q0 followed by the homotopy to u = 1."""
    opts = opts or TrackerOptions()
    cell = cell or cell_of(fp.A, fp.b)
    ps, sols = _likelihood_run(fp, cell, opts, target_count)
    return homotopy_to_one(ps, fp, sols, opts)


def _second_seed(opts: TrackerOptions) -> TrackerOptions:
    return TrackerOptions(**{**opts.__dict__, "seed": (opts.seed + SECOND_SEED_OFFSET) % 2 ** 64})


def _cross_checked(count_for, opts: TrackerOptions, cross_check: bool, what: str) -> int:
    # monodromy counts are lower bounds, so disagreeing runs resolve to the larger one
    count = count_for(opts)
    if cross_check:
        other = _second_seed(opts)
        count2 = count_for(other)
        if count2 != count:
            logger.warning("%s runs disagree: %d (seed %d) vs %d (seed %d)",
                           what, count, opts.seed, count2, other.seed)
            count = max(count, count2)
    return count


def ml_degree(fp: FiberProblem, opts: TrackerOptions | None = None, target_count: int | None = None,
              cross_check: bool = True) -> int:
    """ML degree of the Wachspress model of Q_b: the solution count at generic q.

    A second run with an independent seed cross-checks the count; on
    disagreement the larger count is returned and a warning is logged.
    """
    opts = opts or TrackerOptions()
    cell = cell_of(fp.A, fp.b)
    return _cross_checked(lambda o: len(_likelihood_run(fp, cell, o, target_count)[1]),
                          opts, cross_check, "ML degree")


def numerical_patch_degree(cell: Cell, opts: TrackerOptions | None = None,
                           target_count: int | None = None, cross_check: bool = True) -> int:
    """Degree of the patch variety at a generic u, as a witness-set count.

    The slice A x = b is replaced by a random complex L x = l of the same
    codimension.  The count is taken in the fiber over the start parameters
    (q0, l0); monodromy loops move both blocks.  As for :func:`ml_degree`,
    a second seed cross-checks the count.
    """
    opts = opts or TrackerOptions()
    return _cross_checked(lambda o: _patch_witness_count(cell, o, target_count),
                          opts, cross_check, "patch degree")


def _patch_witness_count(cell: Cell, opts: TrackerOptions, target_count: int | None) -> int:
    rng = np.random.default_rng(opts.seed)
    A = cell.A.to_numpy()
    d, n = A.shape
    L = _complex_gauss(rng, (d, n))
    ps = ParametricSystem(dual_volume_for_cell(cell), L, kernel_basis(cell.A).to_numpy())
    x0 = _complex_gauss(rng, n)
    G = ps.q_matrix(x0)
    _, sg, Vg = np.linalg.svd(G)
    r = int(np.sum(sg > 1e-10 * sg[0]))
    K = Vg[r:].conj().T
    q0 = K @ _complex_gauss(rng, K.shape[1])
    q0 = q0 / np.linalg.norm(q0) * np.sqrt(ps.nq)
    p0 = ps.params(q0, L @ x0)
    return len(monodromy_solve(ps, p0, x0, opts, target_count, rng=rng))


def bezout_bound(cell: Cell) -> int:
    """(2 n_C - n + d - 1)^(n - d), an upper bound on the likelihood solution count."""
    n, d = cell.A.cols, cell.A.rows
    return (2 * cell.n_facets - n + d - 1) ** (n - d)


def conjectured_ml_degree(n: int) -> int:
    """(n-1)(n-2) + (n-3)(n-5) - 1 for generic n-gons."""
    return (n - 1) * (n - 2) + (n - 3) * (n - 5) - 1
