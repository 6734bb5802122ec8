"""Cells of the chamber complex of A.

A cell is identified by its *generators*: the d-subsets sigma with
b in cone(A_sigma) for b in its interior.  The cell is the intersection of
those simplicial cones.  Combinatorial data (facet support and vertex
family) is read off the fiber P_b at an interior point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import InvalidInputError, WallError
from .exact import (
    ExactMatrix,
    _solve_rows,
    in_cone,
    kernel_basis,
    primitive,
    rank,
    to_vector,
)
from .polytope import FiberProblem, basic_solutions, facet_support

MAX_SUBSETS = 20000


@dataclass(frozen=True)
class Cell:
    """A full-dimensional chamber C of the chamber complex of ``A``.

    Index sets are 0-based.  ``witness`` is a point in the interior of C.
    """

    A: ExactMatrix = field(repr=False)
    facet_support: frozenset[int]
    vertex_family: frozenset[frozenset[int]]
    generators: frozenset[tuple[int, ...]] = field(repr=False)
    witness: tuple[Fraction, ...] = field(repr=False, compare=False)

    @property
    def n_facets(self) -> int:
        return len(self.facet_support)

    @cached_property
    def inequalities(self) -> ExactMatrix:
        """Irredundant inward normals N of the cell, C = {b : N b >= 0}.

        Rows are primitive integer vectors sorted lexicographically.
        """
        d = self.A.rows
        cands = set()
        for sigma in self.generators:
            cols = [self.A.col(j) for j in sigma]
            rows_sigma = [[c[i] for c in cols] for i in range(d)]
            # rows of A_sigma^{-1}: solve A_sigma^T r = e_k
            rows_t = [list(r) for r in zip(*rows_sigma)]
            for k in range(d):
                r = _solve_rows(rows_t, [Fraction(int(i == k)) for i in range(d)])
                cands.add(primitive(r))
        return ExactMatrix.from_rows(_irredundant(sorted(cands)))

    def contains(self, b: Sequence) -> bool:
        """Closed-cell membership."""
        vec = to_vector(b)
        N = self.inequalities
        return all(v >= 0 for v in N @ vec)

    def key(self):
        return (-self.n_facets, sorted(self.facet_support),
                sorted(sorted(I) for I in self.vertex_family))

    def describe(self) -> dict:
        """JSON-friendly summary with 1-based indices."""
        return {
            "facet_support": [i + 1 for i in sorted(self.facet_support)],
            "n_facets": self.n_facets,
            "vertex_family": sorted([i + 1 for i in sorted(I)] for I in self.vertex_family),
            "inequalities": [[int(e) for e in row] for row in self.inequalities.to_rows()],
            "interior_point": [str(v) for v in self.witness],
        }


def _irredundant(normals: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop normals that are nonnegative combinations of the others (exact LP)."""
    keep = list(normals)
    for v in list(normals):
        others = [u for u in keep if u != v]
        if others and in_cone(others, v):
            keep = others
    return sorted(keep)


def _wall_normal(A: ExactMatrix, support: Sequence[int]) -> tuple[int, ...]:
    """Normal of a hyperplane spanned by d-1 independent columns containing ``support``."""
    d = A.rows
    tau: list[int] = []
    for j in list(support) + [j for j in range(A.cols) if j not in support]:
        trial = tau + [j]
        if rank(A.submatrix(None, trial)) == len(trial):
            tau = trial
        if len(tau) == d - 1:
            break
    K = kernel_basis(A.submatrix(None, tau).T, expected_rank=d - 1)
    return primitive(K.col(0))


def cell_of(A: ExactMatrix, b: Sequence) -> Cell:
    """The cell of the chamber complex whose interior contains b.

    Raises :class:`WallError` when b is on a wall, i.e. some vertex of P_b has
    more than n - d zero coordinates (equivalently b is in the cone of fewer
    than d columns).
    """
    fp = FiberProblem(A, to_vector(b))
    return _cell_from_fiber(fp)


def _cell_from_fiber(fp: FiberProblem) -> Cell:
    A, b = fp.A, fp.b
    n, d = fp.n, fp.d
    vd = fp.vertex_data
    for x, I in zip(vd.vertices, vd.incidences):
        if len(I) > n - d:
            support = [i for i in range(n) if x[i] != 0]
            normal = _wall_normal(A, support)
            raise WallError(
                f"b lies on a wall of the chamber complex (hyperplane with normal {normal}); "
                "choose the adjacent cell explicitly", normal)
    gens = frozenset(sigma for sigma, x in basic_solutions(A, b) if all(v >= 0 for v in x))
    F = facet_support(fp, vd)
    return Cell(A, frozenset(F), frozenset(vd.incidences), gens, b)


def same_cell(A: ExactMatrix, b0: Sequence, b1: Sequence) -> bool:
    """True iff b1 lies in the closed cell containing b0 in its interior."""
    return cell_of(A, b0).contains(b1)


# --- enumeration ----------------------------------------------------------------

def _rays(normals: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {b : N b >= 0} by brute force."""
    found = set()
    for subset in combinations(normals, d - 1):
        M = ExactMatrix.from_rows(subset)
        if rank(M) != d - 1:
            continue
        r = kernel_basis(M, expected_rank=d - 1).col(0)
        for sgn in (1, -1):
            v = [sgn * e for e in r]
            if all(sum(a * e for a, e in zip(nrm, v)) >= 0 for nrm in normals):
                found.add(primitive(v))
    return sorted(found)


def _prune(normals: list[tuple[int, ...]], rays: list[tuple[int, ...]], d: int):
    """Keep only normals that are tight on d-1 independent rays."""
    keep = []
    for nrm in normals:
        tight = [r for r in rays if sum(a * e for a, e in zip(nrm, r)) == 0]
        if len(tight) >= d - 1 and rank(ExactMatrix.from_rows(tight)) == d - 1:
            keep.append(nrm)
    return sorted(set(keep))


def enumerate_cells(A: ExactMatrix) -> list[Cell]:
    """All full-dimensional cells of the chamber complex of A.

    The cone(A) is split by every hyperplane spanned by d - 1 independent
    columns; each resulting region lies inside one cell, so classifying an
    exact interior point of every region (the sum of its extreme rays) and
    deduplicating by generator set yields every cell.  Guarded to
    n - d <= 3 and a bounded number of column subsets.
    """
    d, n = A.rows, A.cols
    if rank(A) != d:
        raise InvalidInputError("A must have full row rank")
    if n - d > 3 or comb(n, d) > MAX_SUBSETS:
        raise InvalidInputError(
            f"enumerate_cells is limited to n - d <= 3 and C(n, d) <= {MAX_SUBSETS}")
    if d == 1:
        return [cell_of(A, A @ [1] * n)]
    hyperplanes = set()
    for tau in combinations(range(n), d - 1):
        sub = A.submatrix(None, tau)
        if rank(sub) != d - 1:
            continue
        h = primitive(kernel_basis(sub.T, expected_rank=d - 1).col(0))
        hyperplanes.add(max(h, tuple(-e for e in h)))
    cols = [A.col(j) for j in range(n)]

    def side(h, v):
        return sum(a * e for a, e in zip(h, v))

    facets = []
    for h in sorted(hyperplanes):
        vals = [side(h, c) for c in cols]
        if all(v >= 0 for v in vals):
            facets.append(h)
        elif all(v <= 0 for v in vals):
            facets.append(tuple(-e for e in h))
    regions = [(sorted(facets), _rays(sorted(facets), d))]
    for h in sorted(hyperplanes):
        nxt = []
        for normals, rays in regions:
            signs = [side(h, r) for r in rays]
            if any(s > 0 for s in signs) and any(s < 0 for s in signs):
                for hh in (h, tuple(-e for e in h)):
                    nn = normals + [hh]
                    rr = _rays(nn, d)
                    nxt.append((_prune(nn, rr, d), rr))
            else:
                nxt.append((normals, rays))
        regions = nxt
    cells: dict[frozenset, Cell] = {}
    for _, rays in regions:
        point = tuple(Fraction(sum(r[i] for r in rays)) for i in range(d))
        cell = cell_of(A, point)
        cells.setdefault(cell.generators, cell)
    return sorted(cells.values(), key=Cell.key)
