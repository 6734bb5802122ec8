"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Determinants, ranks and solves use
fraction-free (Bareiss) elimination on integer-scaled rows, which keeps
intermediate entries as minors of the input instead of letting rational
coefficients blow up.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an integer or ``p/q`` token; decimals are rejected on purpose."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise InvalidInputError(f"not an integer or p/q rational: {text!r}")
    if "/" in token and int(token.split("/")[1]) == 0:
        raise InvalidInputError(f"zero denominator in {text!r}")
    return Fraction(token)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rationals, e.g. ``"1,4/5,4/5"``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InvalidInputError("empty vector")
    return tuple(parse_rational(p) for p in parts)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidInputError(f"non-finite entry {value}")
        return Fraction(value)
    return Fraction(value)


def to_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInputError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InvalidInputError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(as_fraction(v) for r in rows for v in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "ExactMatrix":
        return cls.from_rows(list(zip(*columns))) if columns else cls(0, 0, ())

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix.from_rows([self.col(j) for j in range(self.cols)]) if self.rows else \
            ExactMatrix(self.cols, 0, ())

    def submatrix(self, row_idx: Sequence[int] | None = None,
                  col_idx: Sequence[int] | None = None) -> "ExactMatrix":
        ri = range(self.rows) if row_idx is None else list(row_idx)
        ci = range(self.cols) if col_idx is None else list(col_idx)
        return ExactMatrix(len(ri), len(ci), tuple(self[i, j] for i in ri for j in ci))

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise InvalidInputError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return ExactMatrix(self.rows, other.cols, tuple(
                sum((a * b for a, b in zip(self.row(i), c)), Fraction(0))
                for i in range(self.rows) for c in ocols))
        vec = to_vector(other)
        if len(vec) != self.cols:
            raise InvalidInputError(f"shape mismatch {self.shape} @ vector of length {len(vec)}")
        return tuple(sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0))
                     for i in range(self.rows))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise InvalidInputError("vstack needs equal column counts")
        return ExactMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise InvalidInputError("hstack needs equal row counts")
        return ExactMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array([float(e) for e in self.entries], dtype=dtype).reshape(self.rows, self.cols)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows)) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExactMatrix":
        """Parse the whitespace-separated matrix text format (one row per line)."""
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([parse_rational(tok) for tok in line.split()])
        if not rows:
            raise InvalidInputError("matrix file has no rows")
        return cls.from_rows(rows)


# --- integer scaling -------------------------------------------------------

def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; returns (int rows, scales)."""
    out, scales = [], []
    for r in rows:
        s = 1
        for e in r:
            s = s * e.denominator // math.gcd(s, e.denominator)
        out.append([int(e * s) for e in r])
        scales.append(s)
    return out, scales


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Smallest integer vector positively proportional to ``vec``."""
    fr = to_vector(vec)
    lcm = 1
    for e in fr:
        lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
    ints = [int(e * lcm) for e in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


# --- fraction-free elimination --------------------------------------------

def _bareiss_echelon(m: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """In-place fraction-free row echelon form; returns (m, pivot columns, sign)."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev, r, sign, pivots = 1, 0, 1, []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv, prow = m[r][c], m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (row[j] * piv - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, sign


def rank(M: ExactMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    ints, _ = _integer_rows(M.to_rows())
    return len(_bareiss_echelon(ints)[1])


def _det_int(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m, pivots, sign = _bareiss_echelon(m)
    if len(pivots) < n:
        return 0
    return sign * m[n - 1][n - 1]


def det(M: ExactMatrix) -> Fraction:
    if M.rows != M.cols:
        raise InvalidInputError(f"determinant of non-square {M.shape} matrix")
    ints, scales = _integer_rows(M.to_rows())
    return Fraction(_det_int(ints), math.prod(scales))


def minor_det(M: ExactMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on the given rows and columns (1 if both empty)."""
    if len(row_idx) != len(col_idx):
        raise InvalidInputError(
            f"minor needs a square selection, got {len(row_idx)} rows x {len(col_idx)} cols")
    if not row_idx:
        return Fraction(1)
    return det(M.submatrix(row_idx, col_idx))


def _solve_rows(rows: list[list[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Solve a square system; None when singular."""
    n = len(rows)
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    ints, _ = _integer_rows(aug)
    m, pivots, _ = _bareiss_echelon(ints)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        return None
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(m[i][n])
        for j in range(i + 1, n):
            s -= m[i][j] * x[j]
        x[i] = s / m[i][i]
    return tuple(x)


def solve_exact(M: ExactMatrix, v: Sequence) -> tuple[Fraction, ...]:
    """Exact solution of ``M x = v`` for square nonsingular ``M``."""
    if M.rows != M.cols:
        raise InvalidInputError(f"solve_exact needs a square matrix, got {M.shape}")
    vec = to_vector(v)
    if len(vec) != M.rows:
        raise InvalidInputError("right-hand side length mismatch")
    if M.rows == 0:
        return ()
    x = _solve_rows(M.to_rows(), vec)
    if x is None:
        raise InvalidInputError("singular matrix in solve_exact")
    return x


def inverse(M: ExactMatrix) -> ExactMatrix:
    n = M.rows
    cols = [solve_exact(M, [int(i == j) for i in range(n)]) for j in range(n)]
    return ExactMatrix.from_columns(cols)


def rref(M: ExactMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with left-to-right pivots."""
    m = M.to_rows()
    pivots, r = [], 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [e * inv for e in m[r]]
        for i in range(M.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return m[:r], pivots


def kernel_basis(A: ExactMatrix, expected_rank: int | None = None) -> ExactMatrix:
    """Integer basis of ker A as the columns of an n x (n - rank) matrix.

    Pivots are chosen left to right, each basis vector has a 1 in its free
    coordinate before scaling, and columns are scaled to primitive integers.
    ``expected_rank`` defaults to the row count: a dependent row raises.
    """
    expected = A.rows if expected_rank is None else expected_rank
    red, pivots = rref(A)
    if len(pivots) < expected:
        raise InvalidInputError(f"matrix has rank {len(pivots)} < {expected} (dependent rows)")
    free = [c for c in range(A.cols) if c not in pivots]
    cols = []
    for f in free:
        vec = [Fraction(0)] * A.cols
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        cols.append(primitive(vec))
    if not cols:
        return ExactMatrix(A.cols, 0, ())
    return ExactMatrix.from_columns(cols)


# --- exact LP feasibility --------------------------------------------------

def feasible_nonneg(M: ExactMatrix, v: Sequence) -> tuple[Fraction, ...] | None:
    """Find x >= 0 with ``M x = v`` exactly, or None if infeasible.

    Phase-one simplex with artificial variables and Bland's rule, so it
    terminates on degenerate problems.
    """
    rhs = to_vector(v)
    r, c = M.rows, M.cols
    rows = M.to_rows()
    for i in range(r):
        if rhs[i] < 0:
            rows[i] = [-e for e in rows[i]]
            rhs = rhs[:i] + (-rhs[i],) + rhs[i + 1:]
    # tableau columns: c originals, r artificials, rhs
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(r)] + [rhs[i]] for i in range(r)]
    basis = [c + i for i in range(r)]
    # reduced cost row for minimizing the sum of artificials
    cost = [-sum((tab[i][j] for i in range(r)), Fraction(0)) for j in range(c)] + \
        [Fraction(0)] * r + [-sum(rhs, Fraction(0))]
    while True:
        enter = next((j for j in range(c + r) if cost[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(r):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen in phase one (bounded below by 0)
            break
        piv = tab[leave][enter]
        tab[leave] = [e / piv for e in tab[leave]]
        for i in range(r):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, tab[leave])]
        basis[leave] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * c
    for i, bvar in enumerate(basis):
        if bvar < c:
            x[bvar] = tab[i][-1]
    return tuple(x)


def in_cone(generators: Sequence[Sequence], target: Sequence) -> bool:
    """Exact test whether ``target`` is a nonnegative combination of ``generators``."""
    if not generators:
        return all(as_fraction(t) == 0 for t in target)
    return feasible_nonneg(ExactMatrix.from_columns(generators), target) is not None


def affine_dimension(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(ExactMatrix.from_rows(diffs))
