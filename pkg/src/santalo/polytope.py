"""Fibers P_b = {x >= 0 : Ax = b} and their projections Q_b in kernel coordinates.

Coordinates on the kernel are ``y = B^T (x - origin)``.  The origin defaults
to zero; :func:`hrep_to_fiber` sets it to the offset ``c`` so that the
projection reproduces the original H-representation exactly.

Vertex enumeration is exhaustive over d-subsets of columns, i.e. C(n, d)
exact basic solutions.  That is fine for n up to ~15 and hopeless beyond.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInputError
from .exact import (
    ExactMatrix,
    _solve_rows,
    affine_dimension,
    feasible_nonneg,
    inverse,
    kernel_basis,
    primitive,
    rank,
    solve_exact,
    to_vector,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HRep:
    """Polytope {y : W y + c >= 0}; row i of W is the inward normal w_i.

    ``indices`` optionally records which x-coordinate each row came from.
    """

    W: ExactMatrix
    c: tuple[Fraction, ...]
    indices: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "c", to_vector(self.c))
        if len(self.c) != self.W.rows:
            raise InvalidInputError(f"W has {self.W.rows} rows but c has {len(self.c)} entries")

    @property
    def k(self) -> int:
        return self.W.rows

    @property
    def m(self) -> int:
        return self.W.cols

    def forms(self, y: Sequence) -> tuple:
        """Values of the facet forms l_i(y) = <w_i, y> + c_i (exact or float)."""
        if all(isinstance(v, (Fraction, int)) for v in y):
            return tuple(a + ci for a, ci in zip(self.W @ y, self.c))
        return tuple(sum(float(w) * v for w, v in zip(self.W.row(i), y)) + float(self.c[i])
                     for i in range(self.k))

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Rows (w_i, c_i) as primitive integer vectors, sorted lexicographically."""
        return tuple(sorted(primitive(tuple(self.W.row(i)) + (self.c[i],)) for i in range(self.k)))

    @cached_property
    def vertices(self) -> tuple[tuple[tuple[Fraction, ...], frozenset[int]], ...]:
        """Vertices of Q with their tight facet sets, sorted by coordinates."""
        found: dict[tuple[Fraction, ...], set[int]] = {}
        rows = self.W.to_rows()
        for subset in combinations(range(self.k), self.m):
            y = _solve_rows([rows[i] for i in subset], [-self.c[i] for i in subset])
            if y is None or y in found:
                continue
            vals = self.forms(y)
            if all(v >= 0 for v in vals):
                found[y] = {i for i, v in enumerate(vals) if v == 0}
        return tuple((y, frozenset(found[y])) for y in sorted(found))

    def is_simple(self) -> bool:
        return all(len(I) == self.m for _, I in self.vertices)


@dataclass(frozen=True)
class VertexData:
    """Vertices of P_b and, for each, the zero set I(v) of its coordinates."""

    vertices: tuple[tuple[Fraction, ...], ...]
    incidences: tuple[frozenset[int], ...]
    full_dimensional: bool = True

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class FiberProblem:
    """The data (A, b, B) of a fiber P_b = {x >= 0 : Ax = b}.

    ``B`` defaults to :func:`kernel_basis` of A.  Construction checks that A
    has full row rank, no zero column, bounded fibers, that A B = 0, and that
    b lies in cone(A).
    """

    A: ExactMatrix
    b: tuple[Fraction, ...]
    B: ExactMatrix | None = None
    origin: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        A = self.A
        object.__setattr__(self, "b", to_vector(self.b))
        if len(self.b) != A.rows:
            raise InvalidInputError(f"b has length {len(self.b)}, A has {A.rows} rows")
        if rank(A) != A.rows:
            raise InvalidInputError(f"A has rank {rank(A)} < d = {A.rows}")
        for j in range(A.cols):
            if all(e == 0 for e in A.col(j)):
                raise InvalidInputError(f"column {j + 1} of A is zero")
        if any(e < 0 for e in A.entries):
            # signed A: fibers are bounded iff ker A meets the orthant only at 0
            probe = A.vstack(ExactMatrix.from_rows([[1] * A.cols]))
            if feasible_nonneg(probe, [0] * A.rows + [1]) is not None:
                raise InvalidInputError("fibers of A are unbounded")
        if self.B is None:
            object.__setattr__(self, "B", kernel_basis(A))
        else:
            B = self.B
            if B.rows != A.cols or B.cols != A.cols - A.rows:
                raise InvalidInputError(f"B must be {A.cols}x{A.cols - A.rows}, got {B.shape}")
            if not (A @ B).is_zero():
                raise InvalidInputError("A B != 0: B is not a kernel matrix of A")
            if rank(B) != B.cols:
                raise InvalidInputError("columns of B are dependent")
        if self.origin is not None:
            object.__setattr__(self, "origin", to_vector(self.origin))
        if feasible_nonneg(A, self.b) is None:
            msg = f"b = ({', '.join(map(str, self.b))}) is not in cone(A): P_b is empty"
            h = separating_facet(A, self.b)
            if h is not None:
                msg += f"; it violates the facet <h, b> >= 0 of cone(A) with h = {h}"
            raise InvalidInputError(msg)

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.n - self.d

    def with_b(self, b: Sequence) -> "FiberProblem":
        return FiberProblem(self.A, to_vector(b), self.B, self.origin)

    @cached_property
    def stacked_inverse(self) -> ExactMatrix:
        """Inverse of the n x n matrix (A over B^T)."""
        return inverse(self.A.vstack(self.B.T))

    @cached_property
    def vertex_data(self) -> VertexData:
        return enumerate_vertices(self)

    def x_from_y(self, y: Sequence) -> tuple:
        """Inverse coordinate change: the point of the fiber with kernel coordinate y."""
        o = self.origin or (Fraction(0),) * self.n
        shift = self.B.T @ o
        rhs = tuple(self.b) + tuple(v + s for v, s in zip(y, shift))
        return self.stacked_inverse @ rhs


def separating_facet(A: ExactMatrix, b: Sequence) -> tuple[int, ...] | None:
    """A facet normal h of cone(A) with <h, b> < 0, searched over spans of d - 1 columns."""
    d, n = A.shape
    if d == 1:
        return (1,) if b[0] < 0 else None
    if math.comb(n, d - 1) > 20000:
        return None
    cols = [A.col(j) for j in range(n)]
    for tau in combinations(range(n), d - 1):
        sub = A.submatrix(None, tau)
        if rank(sub) != d - 1:
            continue
        h = primitive(kernel_basis(sub.T, expected_rank=d - 1).col(0))
        for sgn in (1, -1):
            hs = tuple(sgn * e for e in h)
            if all(sum(a * c for a, c in zip(hs, col)) >= 0 for col in cols) and \
                    sum(a * c for a, c in zip(hs, b)) < 0:
                return hs
    return None


# --- basic solutions ---------------------------------------------------------

def basic_solutions(A: ExactMatrix, b: Sequence[Fraction]) -> Iterator[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
    """Yield (sigma, x) for every d-subset sigma with det A_sigma != 0.

    ``x`` is the full n-vector with support in sigma.
    """
    d, n = A.rows, A.cols
    cols = [A.col(j) for j in range(n)]
    for sigma in combinations(range(n), d):
        rows = [[cols[j][i] for j in sigma] for i in range(d)]
        xs = _solve_rows(rows, b)
        if xs is None:
            continue
        x = [Fraction(0)] * n
        for j, v in zip(sigma, xs):
            x[j] = v
        yield sigma, tuple(x)


def enumerate_vertices(fp: FiberProblem) -> VertexData:
    """All vertices of P_b as exact basic feasible solutions.

    Incidences are the zero sets of the vertex coordinates.  If b lies on the
    boundary of cone(A) the fiber is lower-dimensional; that is reported via
    ``full_dimensional=False`` and a warning, not raised.
    """
    seen = set()
    for _, x in basic_solutions(fp.A, fp.b):
        if all(v >= 0 for v in x):
            seen.add(x)
    if not seen:
        raise InvalidInputError("b is not in cone(A): no basic feasible solution")
    verts = tuple(sorted(seen))
    inc = tuple(frozenset(i for i, v in enumerate(x) if v == 0) for x in verts)
    full = all(any(x[i] > 0 for x in verts) for i in range(fp.n))
    if not full:
        warnings.warn("b lies on the boundary of cone(A); P_b is not (n-d)-dimensional",
                      stacklevel=2)
    return VertexData(verts, inc, full)


def is_simple(vd: VertexData, n: int, d: int) -> bool:
    """True iff every vertex lies on exactly n - d coordinate hyperplanes."""
    return all(len(I) == n - d for I in vd.incidences)


def facet_support(fp: FiberProblem, vd: VertexData | None = None) -> tuple[int, ...]:
    """Indices i whose hyperplane x_i = 0 cuts out a facet of P_b.

    Face {x_i = 0} is a facet iff its vertices span an affine space of
    dimension n - d - 1.  Indices cutting out the same facet are collapsed
    onto the smallest one.
    """
    vd = vd or fp.vertex_data
    if not vd.full_dimensional:
        raise InvalidInputError("P_b is not full-dimensional; facets are undefined")
    out, faces = [], set()
    for i in range(fp.n):
        face = frozenset(k for k, I in enumerate(vd.incidences) if i in I)
        if face in faces or not face:
            continue
        if affine_dimension([vd.vertices[k] for k in face]) == fp.m - 1:
            faces.add(face)
            out.append(i)
    return tuple(out)


def project_Q(fp: FiberProblem) -> HRep:
    """H-representation of Q_b = B^T (P_b - origin) with one row per facet of P_b.

    Row i is read off the stacked inverse: x_i = c_i(b) + <w_i, y>.
    """
    inv = fp.stacked_inverse
    n, d = fp.n, fp.d
    o = fp.origin or (Fraction(0),) * n
    shift = fp.B.T @ o
    W_rows, c = [], []
    for i in facet_support(fp):
        row = inv.row(i)
        w = row[d:]
        ci = sum((g * bb for g, bb in zip(row[:d], fp.b)), Fraction(0)) + \
            sum((h * s for h, s in zip(w, shift)), Fraction(0))
        W_rows.append(w)
        c.append(ci)
    idx = facet_support(fp)
    return HRep(ExactMatrix.from_rows(W_rows), tuple(c), idx)


@dataclass(frozen=True)
class HRepFiber:
    """Result of :func:`hrep_to_fiber`: the fiber plus the affine map x = W y + c."""

    fiber: FiberProblem
    hrep: HRep
    pinv: ExactMatrix = field(repr=False)

    def y_from_x(self, x) -> tuple:
        """Left inverse y = W^+ (x - c)."""
        diff = [xi - ci for xi, ci in zip(x, self.hrep.c)]
        if all(isinstance(v, Fraction) for v in diff):
            return self.pinv @ diff
        P = self.pinv.to_numpy()
        return tuple(P @ np.asarray(diff, dtype=float))

    def x_from_y(self, y) -> tuple:
        return tuple(f + ci for f, ci in zip(self.hrep.W @ y, self.hrep.c)) if all(
            isinstance(v, Fraction) for v in y) else tuple(self.hrep.forms(y))


def _positive_left_kernel_vector(W: ExactMatrix) -> tuple[Fraction, ...] | None:
    """Some lambda >= 1 (entrywise) with lambda^T W = 0, if one exists.

    Writing lambda = 1 + mu with mu >= 0 turns this into a single exact
    feasibility problem whose basic solution has small denominators.
    """
    k, m = W.shape
    ones = [Fraction(1)] * k
    mu = feasible_nonneg(W.T, [-v for v in W.T @ ones])
    if mu is None:
        return None
    return tuple(1 + v for v in mu)


def hrep_to_fiber(h: HRep, nonnegative: bool = False) -> HRepFiber:
    """Represent Q = {W y + c >= 0} as the projection of a fiber P_b.

    A spans the left kernel of W (A W = 0), so d = k - m and b = A c.  By
    default A is the integer kernel basis, which may have signed entries;
    bounded Q makes every fiber bounded regardless.  ``nonnegative=True``
    replaces one row by a positive left-kernel vector lambda and shifts the
    others by exact rational multiples of it until they are nonnegative.
    The kernel matrix is B = W (W^T W)^{-1} and the origin is c, so that
    y = B^T (x - c) = W^+ (x - c).
    """
    W, c = h.W, h.c
    k, m = W.shape
    if rank(W) != m:
        raise InvalidInputError("W does not have full column rank")
    lam = _positive_left_kernel_vector(W)
    if lam is None:
        raise InvalidInputError("the H-representation does not define a bounded polytope")
    K = kernel_basis(W.T)
    A_rows = [list(K.col(j)) for j in range(K.cols)]
    if nonnegative:
        lam = primitive(lam)
        # coordinates of lambda in the rows of A: pick a row it can replace
        G = ExactMatrix.from_rows(A_rows)
        mu = solve_exact(G @ G.T, G @ lam)
        j0 = next(j for j, v in enumerate(mu) if v != 0)
        A_rows[j0] = list(lam)
        for j, r in enumerate(A_rows):
            if j == j0:
                continue
            t = max([Fraction(0)] + [Fraction(-ri) / li for ri, li in zip(r, lam) if ri < 0])
            A_rows[j] = list(primitive([ri + t * li for ri, li in zip(r, lam)]))
    A = ExactMatrix.from_rows(A_rows)
    b = A @ c
    WtW_inv = inverse(W.T @ W)
    B = W @ WtW_inv
    pinv = WtW_inv @ W.T
    fp = FiberProblem(A, b, B, tuple(c))
    return HRepFiber(fp, h, pinv)


def hrep_from_rows(rows: Sequence[Sequence], c: Sequence) -> HRep:
    return HRep(ExactMatrix.from_rows(rows), to_vector(c))


def random_polygon(k: int, rng, radius: int = 20) -> HRep:
    """A random simple polygon with exactly k facets and integer data.

    Normals are rounded points on a circle of the given radius in angular
    order; offsets are random integers, resampled until every inequality
    is a facet and the origin is interior.
    """
    if k < 3:
        raise InvalidInputError("a polygon needs at least 3 facets")
    for _ in range(1000):
        angles = np.sort(rng.uniform(0, 2 * np.pi, k))
        gaps = np.diff(np.concatenate([angles, angles[:1] + 2 * np.pi]))
        if gaps.max() >= np.pi * 0.95:
            continue
        W = [(int(round(radius * np.cos(a))), int(round(radius * np.sin(a)))) for a in angles]
        if len({primitive(w) for w in W}) < k:
            continue
        c = [int(v) for v in rng.integers(radius, 3 * radius, k)]
        h = hrep_from_rows(W, c)
        if len(h.vertices) == k and h.is_simple() and \
                all(any(i in I for _, I in h.vertices) for i in range(k)):
            return h
    raise InvalidInputError(f"could not sample a {k}-gon")
