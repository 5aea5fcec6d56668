"""Exact multivariate polynomials with rational coefficients.

These model the coordinate functions on the formal neighbourhood of the
origin in R^d.  All arithmetic is exact (``fractions.Fraction``); no
floating point enters this module.

>>> x, y = Polynomial.variables(2)
>>> (x + y) * (x - y)
Polynomial(2, 'x^2 - y^2')
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponents = tuple[int, ...]

_VAR_NAMES = ("x", "y", "z", "w")


def var_name(i: int, dim: int) -> str:
    """Display name of coordinate i (0-based) in dimension dim."""
    if dim <= len(_VAR_NAMES):
        return _VAR_NAMES[i]
    return f"x{i + 1}"


class Polynomial:
    """Immutable polynomial in ``dim`` variables over Q.

    Terms are stored as a map from exponent tuples to nonzero Fractions.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exponents, Fraction] | None = None):
        self.dim = dim
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != dim:
                    raise ValueError(f"exponent tuple {exps} does not match dim {dim}")
                c = Fraction(coeff)
                if c != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
                    if clean[exps] == 0:
                        del clean[exps]
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return cls(dim)
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def one(cls, dim: int) -> "Polynomial":
        return cls.constant(dim, 1)

    @classmethod
    def variable(cls, dim: int, i: int) -> "Polynomial":
        if not 0 <= i < dim:
            raise ValueError(f"variable index {i} out of range for dim {dim}")
        exps = tuple(1 if j == i else 0 for j in range(dim))
        return cls(dim, {exps: Fraction(1)})

    @classmethod
    def variables(cls, dim: int) -> tuple["Polynomial", ...]:
        return tuple(cls.variable(dim, i) for i in range(dim))

    # -- queries -----------------------------------------------------------

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * self.dim, Fraction(0))

    def without_constant_term(self) -> "Polynomial":
        zero = (0,) * self.dim
        if zero not in self._terms:
            return self
        terms = dict(self._terms)
        del terms[zero]
        return Polynomial(self.dim, terms)

    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.dim, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            new = terms.get(exps, Fraction(0)) + coeff
            if new == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = new
        return Polynomial(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(exps, Fraction(0)) + c1 * c2
                if new == 0:
                    terms.pop(exps, None)
                else:
                    terms[exps] = new
        return Polynomial(self.dim, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.dim)
        for _ in range(n):
            result = result * self
        return result

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to coordinate i (0-based)."""
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            terms[tuple(new)] = coeff * exps[i]
        return Polynomial(self.dim, terms)

    def diff_multi(self, alpha: Iterable[int]) -> "Polynomial":
        """Iterated derivative: alpha[i] applications of d/dx_i."""
        p = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                p = p.diff(i)
                if p.is_zero():
                    return p
        return p

    def eval(self, point: Iterable) -> Fraction:
        pt = [Fraction(v) for v in point]
        if len(pt) != self.dim:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for v, e in zip(pt, exps):
                term *= v**e
            total += term
        return total

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self._terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(var_name(i, self.dim))
                elif e > 1:
                    factors.append(f"{var_name(i, self.dim)}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.dim}, '{self}')"
