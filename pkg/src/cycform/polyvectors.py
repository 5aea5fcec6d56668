"""Polyvector fields on formal R^d with the Schouten-Nijenhuis bracket.

A polyvector is a sum of terms f * d_{i1} ^ ... ^ d_{ik} with polynomial
coefficient f and strictly increasing direction indices.  The grading is
shifted: a k-vector has degree k - 1 (so vector fields sit in degree 0 and
functions in degree -1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .polynomials import Polynomial, var_name

Indices = tuple[int, ...]


def merge_sign(left: Indices, right: Indices) -> tuple[int, Indices]:
    """Sort the concatenation of two strictly increasing index tuples.

    Returns (sign of the sorting permutation, merged tuple), or (0, ()) if
    the tuples overlap (the wedge vanishes).
    """
    if set(left) & set(right):
        return 0, ()
    combined = list(left) + list(right)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(combined)):
        j = i
        while j > 0 and combined[j - 1] > combined[j]:
            combined[j - 1], combined[j] = combined[j], combined[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(combined)


class PolyVector:
    """Sum of wedge terms, indexed by sorted direction tuples."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Indices, Polynomial] | None = None):
        self.dim = dim
        clean: dict[Indices, Polynomial] = {}
        if terms:
            for idx, coeff in terms.items():
                if any(not 0 <= i < dim for i in idx):
                    raise ValueError(f"direction indices {idx} out of range")
                if list(idx) != sorted(set(idx)):
                    raise ValueError(f"indices must be strictly increasing: {idx}")
                if coeff.dim != dim:
                    raise ValueError("coefficient dimension mismatch")
                if not coeff.is_zero():
                    prev = clean.get(idx)
                    total = coeff if prev is None else prev + coeff
                    if total.is_zero():
                        clean.pop(idx, None)
                    else:
                        clean[idx] = total
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "PolyVector":
        return cls(dim)

    @classmethod
    def from_function(cls, f: Polynomial) -> "PolyVector":
        return cls(f.dim, {(): f})

    @classmethod
    def basis_vector(cls, dim: int, i: int) -> "PolyVector":
        return cls(dim, {(i,): Polynomial.one(dim)})

    @classmethod
    def term(cls, coeff: Polynomial, indices: Indices) -> "PolyVector":
        """Build coeff * d_{i1}^...^d_{ik}; indices need not be sorted."""
        sign, sorted_idx = _normalize_indices(indices)
        if sign == 0:
            return cls.zero(coeff.dim)
        return cls(coeff.dim, {sorted_idx: coeff * sign})

    # -- queries -----------------------------------------------------------

    def items(self) -> Iterator[tuple[Indices, Polynomial]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({len(i) for i in self._terms}) <= 1

    def wedge_count(self) -> int:
        """Number of wedge factors; requires a homogeneous polyvector."""
        counts = {len(i) for i in self._terms}
        if len(counts) > 1:
            raise ValueError("polyvector is not homogeneous")
        return counts.pop() if counts else 0

    def degree(self) -> int:
        """Shifted degree: wedge count minus one."""
        return self.wedge_count() - 1

    def component(self, indices: Indices) -> Polynomial:
        """Antisymmetric component for an arbitrary index tuple."""
        sign, sorted_idx = _normalize_indices(indices)
        if sign == 0:
            return Polynomial.zero(self.dim)
        coeff = self._terms.get(sorted_idx)
        if coeff is None:
            return Polynomial.zero(self.dim)
        return coeff * sign

    def is_constant(self) -> bool:
        return all(c.is_constant() for c in self._terms.values())

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if not isinstance(other, PolyVector):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        terms = dict(self._terms)
        for idx, coeff in other._terms.items():
            prev = terms.get(idx)
            total = coeff if prev is None else prev + coeff
            if total.is_zero():
                terms.pop(idx, None)
            else:
                terms[idx] = total
        return PolyVector(self.dim, terms)

    def __neg__(self) -> "PolyVector":
        return PolyVector(self.dim, {i: -c for i, c in self._terms.items()})

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def __mul__(self, scalar) -> "PolyVector":
        if isinstance(scalar, (int, Fraction, Polynomial)):
            return PolyVector(self.dim, {i: c * scalar for i, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "PolyVector") -> "PolyVector":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        terms: dict[Indices, Polynomial] = {}
        for i1, c1 in self._terms.items():
            for i2, c2 in other._terms.items():
                sign, merged = merge_sign(i1, i2)
                if sign == 0:
                    continue
                add = c1 * c2 * sign
                prev = terms.get(merged)
                total = add if prev is None else prev + add
                if total.is_zero():
                    terms.pop(merged, None)
                else:
                    terms[merged] = total
        return PolyVector(self.dim, terms)

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for idx in sorted(self._terms, key=lambda i: (len(i), i)):
            coeff = self._terms[idx]
            wedge = "^".join(f"∂{var_name(i, self.dim)}" for i in idx)
            if not idx:
                parts.append(f"({coeff})")
            elif coeff == Polynomial.one(self.dim):
                parts.append(wedge)
            else:
                parts.append(f"({coeff}) {wedge}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyVector({self.dim}, '{self}')"


def _normalize_indices(indices: Indices) -> tuple[int, Indices]:
    """Sort an index tuple, returning the permutation sign (0 on repeats)."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


# -- Schouten-Nijenhuis bracket ----------------------------------------------


def _odd_derivative(v: PolyVector, a: int) -> PolyVector:
    """Left derivative with respect to the odd direction a."""
    terms: dict[Indices, Polynomial] = {}
    for idx, coeff in v._terms.items():
        if a not in idx:
            continue
        pos = idx.index(a)
        rest = idx[:pos] + idx[pos + 1 :]
        add = coeff if pos % 2 == 0 else -coeff
        prev = terms.get(rest)
        total = add if prev is None else prev + add
        if not total.is_zero():
            terms[rest] = total
        else:
            terms.pop(rest, None)
    return PolyVector(v.dim, terms)


def _coeff_derivative(v: PolyVector, a: int) -> PolyVector:
    terms = {}
    for idx, coeff in v._terms.items():
        d = coeff.diff(a)
        if not d.is_zero():
            terms[idx] = d
    return PolyVector(v.dim, terms)


def _circ(v1: PolyVector, v2: PolyVector) -> PolyVector:
    """Sum over directions of (right odd derivative of v1) ^ (d/dx of v2).

    The right derivative equals the left one times (-1)^(k-1) on a k-vector
    term, which is what makes the bracket reduce to the Lie derivative on
    vector fields with the correct sign."""
    out = PolyVector.zero(v1.dim)
    for idx, coeff in v1._terms.items():
        k = len(idx)
        term = PolyVector(v1.dim, {idx: coeff})
        for a in idx:
            left = _odd_derivative(term, a)
            if (k - 1) % 2:
                left = -left
            right = _coeff_derivative(v2, a)
            if right.is_zero():
                continue
            out = out + left.wedge(right)
    return out


def schouten_bracket(v1: PolyVector, v2: PolyVector) -> PolyVector:
    """Schouten-Nijenhuis bracket in the shifted grading.

    Uniquely determined by: [f,g] = 0, [X, v] = L_X v for a vector field X,
    and the graded Leibniz rule
    [u, v ^ w] = [u,v] ^ w + (-1)^{|u|(|v|+1)} v ^ [u,w].
    Computed term by term via odd-coordinate calculus; homogeneity is only
    needed per term, so inhomogeneous arguments are handled by bilinearity.
    """
    if v1.dim != v2.dim:
        raise ValueError("dimension mismatch")
    out = PolyVector.zero(v1.dim)
    for i1, c1 in v1._terms.items():
        t1 = PolyVector(v1.dim, {i1: c1})
        k = len(i1)
        for i2, c2 in v2._terms.items():
            t2 = PolyVector(v2.dim, {i2: c2})
            ell = len(i2)
            sign = -1 if ((k - 1) * (ell - 1)) % 2 else 1
            out = out + _circ(t1, t2) - sign * _circ(t2, t1)
    return out
