"""Santaló points by damped Newton minimization of log V_C on {Ax = b}.

The iterate is x = x0 + B z with x0 the vertex barycenter of P_b, so the
affine constraint holds throughout and only positivity needs guarding.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .chamber import Cell, cell_of
from .dual_volume import DualVolume, _log_V_derivatives, dual_volume_for_cell
from .errors import InvalidInputError, NumericalError
from .exact import ExactMatrix, kernel_basis
from .polytope import FiberProblem, HRep, hrep_to_fiber

logger = logging.getLogger(__name__)

BOUNDARY_FRACTION = 0.95
ARMIJO = 1e-4
# Newton decrement below which the full step is taken without a descent test
# (function differences are then below double precision resolution).
QUADRATIC_REGIME = 1e-12


@dataclass(frozen=True)
class SantaloResult:
    x_star: np.ndarray
    y_star: np.ndarray
    objective: float
    gradient_norm: float
    iterations: int
    cell: Cell | None = field(default=None, repr=False, compare=False)

    def to_json_obj(self) -> dict:
        return {"x_star": [float(v) for v in self.x_star],
                "y_star": [float(v) for v in self.y_star],
                "objective": float(self.objective),
                "gradient_norm": float(self.gradient_norm),
                "iterations": int(self.iterations)}


def _resolve_dual_volume(fp: FiberProblem, cell: Cell | None) -> DualVolume:
    if cell is None:
        cell = cell_of(fp.A, fp.b)
    elif cell.A != fp.A:
        raise InvalidInputError("the supplied cell belongs to a different matrix A")
    elif not cell.contains(fp.b):
        raise InvalidInputError("b is not in the closed cell supplied")
    return dual_volume_for_cell(cell)


def _barycenter(fp: FiberProblem) -> np.ndarray:
    vd = fp.vertex_data
    if not vd.full_dimensional:
        raise InvalidInputError("b is on the boundary of cone(A); P_b has empty interior")
    total = [sum((v[i] for v in vd.vertices), Fraction(0)) for i in range(fp.n)]
    return np.array([float(t / len(vd)) for t in total])


def minimize_log_volume(dv: DualVolume, A: np.ndarray, b: np.ndarray, B: np.ndarray,
                        x0: np.ndarray, tol: float = 1e-12, max_iter: int = 200):
    """Damped Newton on z -> log V(x0 + B z).  Returns (x, f, grad_norm, iterations)."""
    x = np.array(x0, dtype=float)
    if np.any(x <= 0):
        raise InvalidInputError("the starting point is not strictly positive")
    for it in range(max_iter + 1):
        f, g, H = _log_V_derivatives(dv, x)
        gz = B.T @ g
        gnorm = float(np.linalg.norm(gz))
        if gnorm <= tol:
            break
        if it == max_iter:
            raise NumericalError(
                f"no convergence after {max_iter} Newton steps (projected gradient {gnorm:.3e}) "
                f"at x = {x.tolist()}")
        Hz = B.T @ H @ B
        try:
            dz = -np.linalg.solve(Hz, gz)
        except np.linalg.LinAlgError:
            dz = -gz
        slope = float(gz @ dz)
        if not slope < 0:
            dz, slope = -gz, -float(gz @ gz)
        dx = B @ dz
        shrinking = dx < 0
        step = 1.0
        if shrinking.any():
            step = min(1.0, BOUNDARY_FRACTION * float(np.min(x[shrinking] / -dx[shrinking])))
        if -slope < QUADRATIC_REGIME:
            x = x + step * dx
            continue
        while True:
            xn = x + step * dx
            if np.all(xn > 0):
                fn = _log_V_derivatives(dv, xn)[0]
                if np.isfinite(fn) and fn <= f + ARMIJO * step * slope:
                    break
            step *= 0.5
            if step < 1e-14:
                raise NumericalError(
                    f"line search failed at Newton step {it} (projected gradient {gnorm:.3e}) "
                    f"at x = {x.tolist()}")
        x = xn
    # remove the drift off {Ax = b} accumulated in floating point
    x = x - np.linalg.lstsq(A, A @ x - b, rcond=None)[0]
    return x, float(f), gnorm, it


def santalo_point(fp: FiberProblem, tol: float = 1e-12, cell: Cell | None = None,
                  max_iter: int = 200) -> SantaloResult:
    """The Santaló point of P_b in fiber and kernel coordinates.

    ``cell`` selects the closed chamber whose dual-volume formula is used;
    it is required when b lies on a wall.  y* = B^T (x* - origin).
    """
    dv = _resolve_dual_volume(fp, cell)
    A = fp.A.to_numpy()
    b = np.array([float(v) for v in fp.b])
    B = fp.B.to_numpy()
    x, f, gnorm, it = minimize_log_volume(dv, A, b, B, _barycenter(fp), tol, max_iter)
    origin = np.array([float(v) for v in fp.origin]) if fp.origin else np.zeros(fp.n)
    y = B.T @ (x - origin)
    logger.debug("Santaló point after %d Newton steps, |B^T grad| = %.3e", it, gnorm)
    return SantaloResult(x, y, f, gnorm, it, dv.cell)


def patch_residual(cell: Cell | DualVolume, x: Sequence[float], B: ExactMatrix | None = None) -> np.ndarray:
    """B^T (d_i alpha_C / alpha_C - 1 / x_i)_i, zero exactly on the Santaló patch of the cell."""
    dv = cell if isinstance(cell, DualVolume) else dual_volume_for_cell(cell)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise InvalidInputError("x must be strictly positive")
    if B is None:
        B = kernel_basis(dv.cell.A)
    return B.to_numpy().T @ _log_V_derivatives(dv, x)[1]


def santalo_point_hrep(h: HRep, tol: float = 1e-12) -> SantaloResult:
    """Santaló point of Q = {W y + c >= 0}, with y* in the coordinates of ``h``."""
    hf = hrep_to_fiber(h)
    res = santalo_point(hf.fiber, tol)
    # the fiber uses B = W (W^T W)^{-1} and origin c, so its y* is already W^+ (x* - c)
    return res
