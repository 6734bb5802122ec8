"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .errors import InvalidInputError
from .exact import as_fraction, parse_rational

Exponent = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Polynomial in ``num_vars`` variables stored as {exponent: coefficient}.

    Zero coefficients are never stored.
    """

    num_vars: int
    terms: Mapping[Exponent, Fraction]

    def __post_init__(self):
        clean = {}
        for exp, coeff in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.num_vars or any(e < 0 for e in exp):
                raise InvalidInputError(f"bad exponent vector {exp} for {self.num_vars} variables")
            c = as_fraction(coeff)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c != 0})

    # construction
    @classmethod
    def zero(cls, num_vars: int) -> "SparsePoly":
        return cls(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, value) -> "SparsePoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "SparsePoly":
        return cls(num_vars, {tuple(int(j == i) for j in range(num_vars)): 1})

    @classmethod
    def monomial(cls, num_vars: int, indices, coeff=1) -> "SparsePoly":
        exp = [0] * num_vars
        for i in indices:
            exp[i] += 1
        return cls(num_vars, {tuple(exp): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "SparsePoly":
        n = len(coeffs)
        terms = {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)}
        terms[(0,) * n] = const
        return cls(n, terms)

    # arithmetic
    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return SparsePoly(self.num_vars, terms)

    def __mul__(self, other) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            s = as_fraction(other)
            return SparsePoly(self.num_vars, {e: c * s for e, c in self.terms.items()})
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, SparsePoly) and self.num_vars == other.num_vars \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    # structure
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def diff(self, i: int) -> "SparsePoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return SparsePoly(self.num_vars, terms)

    def __call__(self, point: Sequence):
        """Exact evaluation on rationals, float/complex evaluation otherwise."""
        if all(isinstance(v, (int, Fraction)) for v in point):
            total = Fraction(0)
            for e, c in self.terms.items():
                t = c
                for v, k in zip(point, e):
                    if k:
                        t *= Fraction(v) ** k
                total += t
            return total
        return self.compiled.value(np.asarray(point))

    @cached_property
    def compiled(self) -> "CompiledPoly":
        return CompiledPoly(self)

    # serialization
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def to_json_obj(self) -> dict:
        return {"vars": self.num_vars,
                "terms": [{"coeff": str(c), "exp": list(e)} for e, c in self.sorted_terms()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SparsePoly":
        n = int(obj["vars"])
        terms: dict = {}
        for t in obj["terms"]:
            e = tuple(int(k) for k in t["exp"])
            terms[e] = terms.get(e, Fraction(0)) + parse_rational(str(t["coeff"]))
        return cls(n, terms)

    @classmethod
    def from_json(cls, text: str) -> "SparsePoly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


class CompiledPoly:
    """Floating-point (real or complex) evaluator with gradient and Hessian.

    Every monomial is evaluated as a product of entries of a shared power
    table, so x may contain zeros and complex values.
    """

    def __init__(self, poly: SparsePoly):
        n = poly.num_vars
        items = poly.sorted_terms()
        self.num_vars = n
        self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), n)
        self.coeffs = np.array([float(c) for _, c in items])
        self.max_deg = int(self.exps.max()) if self.exps.size else 0

    def _powers(self, x: np.ndarray) -> np.ndarray:
        # table[k, i] = x_i ** k
        table = np.ones((self.max_deg + 1, self.num_vars), dtype=np.result_type(x, float))
        for k in range(1, self.max_deg + 1):
            table[k] = table[k - 1] * x
        return table

    def value(self, x) -> complex | float:
        x = np.asarray(x)
        if not self.coeffs.size:
            return 0.0 * x.sum()
        table = self._powers(x)
        cols = np.arange(self.num_vars)
        mons = table[self.exps, cols].prod(axis=1)
        return self.coeffs @ mons

    def value_grad_hess(self, x):
        """Value, gradient and Hessian at x."""
        x = np.asarray(x)
        n = self.num_vars
        dtype = np.result_type(x, float)
        if not self.coeffs.size:
            return dtype.type(0), np.zeros(n, dtype), np.zeros((n, n), dtype)
        if np.all(x != 0):
            return self._by_division(x)
        return self._by_products(x)

    def _by_division(self, x):
        # d_i m = e_i m / x_i and d_ij m = e_i (e_j - delta_ij) m / (x_i x_j)
        E = self.exps
        cm = self.coeffs * self._powers(x)[E, np.arange(self.num_vars)].prod(axis=1)
        val = cm.sum()
        s = cm @ E
        grad = s / x
        hess = (E.T @ (cm[:, None] * E) - np.diag(s)) / np.outer(x, x)
        return val, grad, hess

    def _by_products(self, x):
        # same derivatives without dividing by x; used when some x_i = 0
        n = self.num_vars
        dtype = np.result_type(x, float)
        table = self._powers(x)
        cols = np.arange(n)
        E = self.exps
        factors = table[E, cols]
        val = self.coeffs @ factors.prod(axis=1)
        dfac = E * table[np.maximum(E - 1, 0), cols]
        d2fac = E * (E - 1) * table[np.maximum(E - 2, 0), cols]
        T = E.shape[0]
        grad = np.zeros(n, dtype)
        hess = np.zeros((n, n), dtype)
        for i in range(n):
            others_i = np.delete(factors, i, axis=1).prod(axis=1) if n > 1 else np.ones(T)
            grad[i] = self.coeffs @ (dfac[:, i] * others_i)
            hess[i, i] = self.coeffs @ (d2fac[:, i] * others_i)
            for j in range(i + 1, n):
                rest = np.delete(factors, [i, j], axis=1).prod(axis=1) if n > 2 else np.ones(T)
                hess[i, j] = hess[j, i] = self.coeffs @ (dfac[:, i] * dfac[:, j] * rest)
        return val, grad, hess
