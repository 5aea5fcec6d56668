"""Differential forms on formal R^d and the Cartan calculus against
polyvector fields.

Forms carry the opposite of the usual grading (a k-form has degree -k).
The contraction convention, from which every other sign here is derived:
iota_{f} is multiplication by f, iota for a wedge of vector fields composes
left to right, iota_{X1 ^ ... ^ Xk} = iota_{X1} o ... o iota_{Xk}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .polynomials import Polynomial, var_name
from .polyvectors import Indices, PolyVector, _normalize_indices, merge_sign


class DiffForm:
    """Sum of terms f * dx_{i1} ^ ... ^ dx_{ik} with sorted indices."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Indices, Polynomial] | None = None):
        self.dim = dim
        clean: dict[Indices, Polynomial] = {}
        if terms:
            for idx, coeff in terms.items():
                if any(not 0 <= i < dim for i in idx):
                    raise ValueError(f"differential indices {idx} out of range")
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

    @classmethod
    def zero(cls, dim: int) -> "DiffForm":
        return cls(dim)

    @classmethod
    def from_function(cls, f: Polynomial) -> "DiffForm":
        return cls(f.dim, {(): f})

    @classmethod
    def term(cls, coeff: Polynomial, indices: Indices) -> "DiffForm":
        sign, sorted_idx = _normalize_indices(indices)
        if sign == 0:
            return cls.zero(coeff.dim)
        return cls(coeff.dim, {sorted_idx: coeff * sign})

    def items(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def form_degree(self) -> int:
        """Number of differentials; requires homogeneity."""
        counts = {len(i) for i in self._terms}
        if len(counts) > 1:
            raise ValueError("form is not homogeneous")
        return counts.pop() if counts else 0

    def degree(self) -> int:
        """Grading degree: minus the form degree."""
        return -self.form_degree()

    def __add__(self, other: "DiffForm") -> "DiffForm":
        if not isinstance(other, DiffForm):
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
        return DiffForm(self.dim, terms)

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.dim, {i: -c for i, c in self._terms.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def __mul__(self, scalar) -> "DiffForm":
        if isinstance(scalar, (int, Fraction, Polynomial)):
            return DiffForm(self.dim, {i: c * scalar for i, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "DiffForm") -> "DiffForm":
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
        return DiffForm(self.dim, terms)

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
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
            wedge = "^".join(f"d{var_name(i, self.dim)}" for i in idx)
            if not idx:
                parts.append(f"({coeff})")
            elif coeff == Polynomial.one(self.dim):
                parts.append(wedge)
            else:
                parts.append(f"({coeff}) {wedge}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffForm({self.dim}, '{self}')"


def de_rham(omega: DiffForm) -> DiffForm:
    """Exterior derivative; d o d = 0."""
    out = DiffForm.zero(omega.dim)
    for idx, coeff in omega._terms.items():
        for a in range(omega.dim):
            d = coeff.diff(a)
            if d.is_zero():
                continue
            out = out + DiffForm.term(d, (a,) + idx)
    return out


def _contract_vector(a: int, omega: DiffForm) -> DiffForm:
    """Interior product with the coordinate vector field d_a."""
    out = DiffForm.zero(omega.dim)
    for idx, coeff in omega._terms.items():
        if a not in idx:
            continue
        pos = idx.index(a)
        rest = idx[:pos] + idx[pos + 1 :]
        out = out + DiffForm(omega.dim, {rest: coeff if pos % 2 == 0 else -coeff})
    return out


def contract(gamma: PolyVector, omega: DiffForm) -> DiffForm:
    """Graded contraction iota_gamma omega.

    Composition convention: iota_{X1 ^ ... ^ Xk} = iota_{X1} o ... o iota_{Xk},
    so the last wedge factor acts innermost.  This is the convention under
    which the Lie-derivative action satisfies the bracket module law.
    """
    if gamma.dim != omega.dim:
        raise ValueError("dimension mismatch")
    out = DiffForm.zero(omega.dim)
    for idx, coeff in gamma.items():
        partial = omega
        for a in reversed(idx):
            partial = _contract_vector(a, partial)
            if partial.is_zero():
                break
        out = out + partial * coeff
    return out


def lie_derivative(gamma: PolyVector, omega: DiffForm) -> DiffForm:
    """Cartan formula L_gamma = d iota_gamma - (-1)^p iota_gamma d for a
    homogeneous p-vector gamma."""
    p = gamma.wedge_count()
    first = de_rham(contract(gamma, omega))
    second = contract(gamma, de_rham(omega))
    return first - second if p % 2 == 0 else first + second


def evaluate(omega: DiffForm, xi: PolyVector) -> Polynomial:
    """Full pairing omega[xi], normalized so (dx_I)[d_I] = 1 for equal
    sorted index tuples.  Mismatched form/wedge degrees contribute zero."""
    if omega.dim != xi.dim:
        raise ValueError("dimension mismatch")
    out = Polynomial.zero(omega.dim)
    for fidx, fcoeff in omega._terms.items():
        vcoeff = xi.component(fidx)
        if not vcoeff.is_zero():
            out = out + fcoeff * vcoeff
    return out
