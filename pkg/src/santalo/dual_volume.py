"""Adjoint polynomials and dual-volume functions.

Two coordinate systems are used.  In kernel coordinates y the polytope is
Q = {W y + c >= 0} and the volume of the polar dual is

    vol (Q - y)° = alpha_Q(y) / (m! * prod_i l_i(y)),

with alpha_Q the vertex sum over |det W_I(v)| times the forms not incident
to v.  In fiber coordinates x the same quantity (up to the constant
1 / |det(A over B^T)|, and again m!) is alpha_C(x) / x_F, where alpha_C
sums |det A_{[n] minus I(v)}| x_{F minus I(v)} over the vertices.  The x form
is what the optimizers use, with the scale constant dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .chamber import Cell, _cell_from_fiber
from .errors import InvalidInputError, NonSimpleError
from .exact import ExactMatrix, minor_det, to_vector
from .polytope import FiberProblem, HRep, facet_support, is_simple
from .poly import SparsePoly

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class DualVolume:
    """V_C(x) = alpha_C(x) / prod_{i in F} x_i on the cell C (scale gamma = 1)."""

    cell: Cell = field(repr=False)
    numerator: SparsePoly
    facet_support: frozenset[int]

    @property
    def n(self) -> int:
        return self.numerator.num_vars

    @property
    def degree(self) -> int:
        return self.numerator.degree - len(self.facet_support)

    def denominator(self) -> SparsePoly:
        return SparsePoly.monomial(self.n, sorted(self.facet_support))

    def __call__(self, x: Sequence):
        num = self.numerator(x)
        den = 1
        for i in self.facet_support:
            den = den * x[i]
        return num / den

    def display(self) -> str:
        def mono(exp):
            return "".join(f"x{str(i + 1).translate(_SUB)}" for i, k in enumerate(exp) for _ in range(k))

        num = " + ".join((str(c) if c != 1 else "") + mono(e) for e, c in self.numerator.sorted_terms())
        den = "".join(f"x{str(i + 1).translate(_SUB)}" for i in sorted(self.facet_support))
        return f"({num})/({den})"

    def to_json_obj(self) -> dict:
        return {"numerator": self.numerator.to_json_obj(),
                "denominator_support": [i + 1 for i in sorted(self.facet_support)],
                "degree": self.degree,
                "display": self.display()}


# --- fiber coordinates ------------------------------------------------------------

def _checked_fiber(A: ExactMatrix, b: Sequence) -> FiberProblem:
    fp = FiberProblem(A, to_vector(b))
    vd = fp.vertex_data
    if not vd.full_dimensional:
        raise InvalidInputError("b lies on the boundary of cone(A); P_b is lower-dimensional")
    if not is_simple(vd, fp.n, fp.d):
        bad = next(sorted(i + 1 for i in I) for I in vd.incidences if len(I) != fp.m)
        raise NonSimpleError(
            f"P_b is not simple: a vertex has zero coordinates {bad}, expected {fp.m} of them")
    return fp


def _adjoint_from_fiber(fp: FiberProblem, F: Sequence[int]) -> SparsePoly:
    n = fp.n
    Fset = set(F)
    terms: dict = {}
    for I in fp.vertex_data.incidences:
        comp = [j for j in range(n) if j not in I]
        coeff = abs(minor_det(fp.A, range(fp.d), comp))
        exp = tuple(int(i in Fset and i not in I) for i in range(n))
        terms[exp] = terms.get(exp, Fraction(0)) + coeff
    return SparsePoly(n, terms)


def adjoint_x(A: ExactMatrix, b: Sequence) -> SparsePoly:
    """Adjoint alpha_C(x) of the cell containing b, in fiber coordinates.

    Raises :class:`NonSimpleError` when some vertex of P_b has more than
    n - d zero coordinates.
    """
    fp = _checked_fiber(A, b)
    return _adjoint_from_fiber(fp, facet_support(fp))


def dual_volume_fn(A: ExactMatrix, b: Sequence) -> DualVolume:
    """The rational function V_C = alpha_C / x_F for the cell of b."""
    fp = _checked_fiber(A, b)
    F = facet_support(fp)
    cell = _cell_from_fiber(fp)
    return DualVolume(cell, _adjoint_from_fiber(fp, F), frozenset(F))


@lru_cache(maxsize=256)
def dual_volume_for_cell(cell: Cell) -> DualVolume:
    """V_C built from the cell's interior witness; usable for any b in the closed cell."""
    return dual_volume_fn(cell.A, cell.witness)


def volume_scale(fp: FiberProblem) -> Fraction:
    """Constant s with alpha_Q / prod l = s * alpha_C / x_F for the kernel matrix of ``fp``."""
    from .exact import det
    return 1 / abs(det(fp.A.vstack(fp.B.T)))


def eval_log_V(dv: DualVolume, x: Sequence[float]):
    """log V_C(x), its gradient and Hessian in all n coordinates.

    With alpha = alpha_C, for i, j in F:
      d_i log V = alpha_i / alpha - 1 / x_i
      d_ij log V = alpha_ij / alpha - alpha_i alpha_j / alpha^2 + delta_ij / x_i^2
    and zero in coordinates outside F.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (dv.n,):
        raise InvalidInputError(f"x must have length {dv.n}")
    if np.any(x <= 0):
        raise InvalidInputError("x must be strictly positive")
    return _log_V_derivatives(dv, x)


def _log_V_derivatives(dv: DualVolume, x: np.ndarray):
    """Unchecked log-derivatives; also valid for complex x off the poles."""
    F = np.array(sorted(dv.facet_support))
    a, g, H = dv.numerator.compiled.value_grad_hess(x)
    mask = np.zeros(dv.n, dtype=bool)
    mask[F] = True
    grad = np.where(mask, g / a, 0)
    grad[F] -= 1 / x[F]
    hess = H / a - np.outer(g, g) / a ** 2
    hess[~mask, :] = 0
    hess[:, ~mask] = 0
    hess[F, F] += 1 / x[F] ** 2
    value = np.log(a) - np.sum(np.log(x[F]))
    return value, grad, hess


# --- kernel coordinates ---------------------------------------------------------

def _require_simple(h: HRep):
    if not h.vertices:
        raise InvalidInputError("the H-representation defines an empty polytope")
    if not h.is_simple():
        raise NonSimpleError("Q is not simple")


def _vertex_weights(h: HRep) -> list[tuple[tuple, frozenset[int], Fraction]]:
    return [(v, I, abs(minor_det(h.W, sorted(I), range(h.m)))) for v, I in h.vertices]


def adjoint_y(h: HRep) -> SparsePoly:
    """alpha_Q(y) = sum_v |det W_I(v)| prod_{i not in I(v)} l_i(y), of degree at most k - m - 1."""
    _require_simple(h)
    m = h.m
    forms = [SparsePoly.linear(h.W.row(i), h.c[i]) for i in range(h.k)]
    total = SparsePoly.zero(m)
    for _, I, wdet in _vertex_weights(h):
        term = SparsePoly.constant(m, wdet)
        for i in range(h.k):
            if i not in I:
                term = term * forms[i]
        total = total + term
    return total


def _interior_forms(h: HRep, y: Sequence):
    vals = h.forms(y)
    if any(v <= 0 for v in vals):
        raise InvalidInputError("y is not in the interior of Q")
    return vals


def dual_volume_y(h: HRep, y: Sequence):
    """vol_m (Q - y)° from the adjoint; exact for rational y."""
    vals = _interior_forms(h, y)
    alpha = adjoint_y_cached(h)(list(y))
    den = math.factorial(h.m)
    for v in vals:
        den = den * v
    return alpha / den


@lru_cache(maxsize=256)
def adjoint_y_cached(h: HRep) -> SparsePoly:
    return adjoint_y(h)


def dual_volume_oracle_2d(h: HRep, y: Sequence) -> Fraction:
    """Exact area of (Q - y)° from its vertex description.

    The polar of Q - y is the convex hull of w_i / l_i(y).  Its area comes
    from an exact convex hull and the shoelace formula; no adjoint involved.
    """
    if h.m != 2:
        raise InvalidInputError("the polygon oracle needs m = 2")
    y = to_vector(y)
    vals = _interior_forms(h, y)
    pts = sorted({(h.W[i, 0] / vals[i], h.W[i, 1] / vals[i]) for i in range(h.k)})
    hull = _convex_hull(pts)
    area = Fraction(0)
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        area += x0 * y1 - x1 * y0
    return abs(area) / 2


def _convex_hull(pts):
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# --- Wachspress coordinates --------------------------------------------------------

@dataclass(frozen=True)
class WachspressModel:
    """p_v(y) = |det W_I(v)| prod_{i not in I(v)} l_i(y) / alpha_Q(y), one per vertex."""

    hrep: HRep

    def __post_init__(self):
        _require_simple(self.hrep)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(v for v, _ in self.hrep.vertices)

    @cached_property
    def _weights(self):
        return _vertex_weights(self.hrep)

    @cached_property
    def numerators(self) -> tuple[SparsePoly, ...]:
        h = self.hrep
        forms = [SparsePoly.linear(h.W.row(i), h.c[i]) for i in range(h.k)]
        out = []
        for _, I, wdet in self._weights:
            term = SparsePoly.constant(h.m, wdet)
            for i in range(h.k):
                if i not in I:
                    term = term * forms[i]
            out.append(term)
        return tuple(out)

    def numerator_values(self, y: Sequence):
        """Unnormalized weights; exact for rational y."""
        vals = self.hrep.forms(y)
        out = []
        for _, I, wdet in self._weights:
            t = wdet if isinstance(vals[0], Fraction) else float(wdet)
            for i, v in enumerate(vals):
                if i not in I:
                    t = t * v
            out.append(t)
        return out

    def __call__(self, y: Sequence):
        nums = self.numerator_values(y)
        total = sum(nums)
        if total == 0:
            raise InvalidInputError("y lies on the adjoint hypersurface; coordinates undefined")
        return [p / total for p in nums]


def wachspress_coords(h: HRep, y: Sequence):
    """Wachspress coordinates of y, a probability vector indexed like ``h.vertices``.

    Rational y gives exact Fractions summing to exactly 1.  Coordinates
    are evaluated from products of forms, so y may sit on a facet (a vertex
    gives its indicator vector); only alpha_Q(y) = 0 is rejected.
    """
    return WachspressModel(h)(y)


# --- Santaló regions ----------------------------------------------------------------

def santalo_region_membership(h: HRep, y: Sequence, a: float, y_star: Sequence | None = None) -> bool:
    """True iff vol (Q - y)° - vol (Q - y*)° <= a."""
    if y_star is None:
        from .newton import santalo_point_hrep
        y_star = santalo_point_hrep(h).y_star
    y = [float(v) for v in y]
    gap = float(dual_volume_y(h, y)) - float(dual_volume_y(h, [float(v) for v in y_star]))
    return gap <= a
