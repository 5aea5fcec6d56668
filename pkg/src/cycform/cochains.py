"""Polydifferential Hochschild cochains: multilinear operators of the form
(a_1, ..., a_k) -> f * prod_i (iterated derivative of a_i), with the
coboundary, the Gerstenhaber bracket, and the action on Hochschild chains.

The shifted degree of an arity-k cochain is k - 1; all graded signs below
use it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Mapping, Sequence

from .chains import HochschildChain, Tensor
from .polynomials import Polynomial

# Compositions beyond this arity are refused (cost grows combinatorially).
MAX_ARITY = 8

MultiIndex = tuple[int, ...]
TermKey = tuple[MultiIndex, ...]


class PolyDiffOperator:
    """Arity-k polydifferential cochain over the polynomial algebra.

    Terms map a k-tuple of derivative multi-indices to a polynomial
    prefactor.
    """

    __slots__ = ("dim", "arity", "_terms")

    def __init__(self, dim: int, arity: int, terms: Mapping[TermKey, Polynomial] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        if arity > MAX_ARITY:
            raise ValueError(f"arity {arity} exceeds MAX_ARITY={MAX_ARITY}")
        self.dim = dim
        self.arity = arity
        clean: dict[TermKey, Polynomial] = {}
        if terms:
            for key, pref in terms.items():
                if len(key) != arity:
                    raise ValueError("term key length must equal arity")
                if any(len(alpha) != dim for alpha in key):
                    raise ValueError("multi-index dimension mismatch")
                if pref.dim != dim:
                    raise ValueError("prefactor dimension mismatch")
                if not pref.is_zero():
                    prev = clean.get(key)
                    total = pref if prev is None else prev + pref
                    if total.is_zero():
                        clean.pop(key, None)
                    else:
                        clean[key] = total
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, arity: int) -> "PolyDiffOperator":
        return cls(dim, arity)

    @classmethod
    def multiplication(cls, dim: int) -> "PolyDiffOperator":
        """The arity-2 cochain m(a, b) = a * b."""
        zero = (0,) * dim
        return cls(dim, 2, {(zero, zero): Polynomial.one(dim)})

    @classmethod
    def single(cls, pref: Polynomial, specs: Sequence[MultiIndex]) -> "PolyDiffOperator":
        return cls(pref.dim, len(specs), {tuple(specs): pref})

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Shifted degree."""
        return self.arity - 1

    def items(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_normalized(self) -> bool:
        """True if every slot of every term differentiates (no bare slots),
        i.e. the cochain kills constants in each argument."""
        return all(all(sum(alpha) > 0 for alpha in key) for key in self._terms)

    def __add__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        if not isinstance(other, PolyDiffOperator):
            return NotImplemented
        if (other.dim, other.arity) != (self.dim, self.arity):
            raise ValueError("dim/arity mismatch")
        terms = dict(self._terms)
        for key, pref in other._terms.items():
            prev = terms.get(key)
            total = pref if prev is None else prev + pref
            if total.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = total
        return PolyDiffOperator(self.dim, self.arity, terms)

    def __neg__(self) -> "PolyDiffOperator":
        return PolyDiffOperator(self.dim, self.arity, {k: -p for k, p in self._terms.items()})

    def __sub__(self, other: "PolyDiffOperator") -> "PolyDiffOperator":
        return self + (-other)

    def __mul__(self, scalar) -> "PolyDiffOperator":
        if isinstance(scalar, (int, Fraction)):
            return PolyDiffOperator(
                self.dim, self.arity, {k: p * scalar for k, p in self._terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyDiffOperator):
            return NotImplemented
        return (self.dim, self.arity) == (other.dim, other.arity) and self._terms == other._terms

    def apply(self, args: Sequence[Polynomial]) -> Polynomial:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        out = Polynomial.zero(self.dim)
        for key, pref in self._terms.items():
            term = pref
            for alpha, a in zip(key, args):
                term = term * a.diff_multi(alpha)
                if term.is_zero():
                    break
            out = out + term
        return out

    def __repr__(self):
        return f"PolyDiffOperator(dim={self.dim}, arity={self.arity}, terms={len(self._terms)})"


def _decompositions(alpha: MultiIndex, parts: int):
    """All ways to split a multi-index into an ordered sum of `parts`
    multi-indices, with the multinomial coefficient of the split."""
    per_coord = []
    for total in alpha:
        coord_opts = []
        for split in _compositions(total, parts):
            coeff = 1
            rest = total
            for piece in split:
                coeff *= comb(rest, piece)
                rest -= piece
            coord_opts.append((split, coeff))
        per_coord.append(coord_opts)
    for combo in product(*per_coord):
        pieces = []
        coeff = 1
        for part in range(parts):
            pieces.append(tuple(c[0][part] for c in combo))
        for c in combo:
            coeff *= c[1]
        yield tuple(pieces), coeff


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def compose_at(psi: PolyDiffOperator, phi: PolyDiffOperator, j: int) -> PolyDiffOperator:
    """Insert phi into slot j (1-based) of psi; arity adds up minus one."""
    if psi.dim != phi.dim:
        raise ValueError("dimension mismatch")
    if not 1 <= j <= psi.arity:
        raise ValueError("slot out of range")
    dim = psi.dim
    arity = psi.arity + phi.arity - 1
    out = PolyDiffOperator.zero(dim, arity)
    terms: dict[TermKey, Polynomial] = {}
    for pkey, ppref in psi._terms.items():
        alpha = pkey[j - 1]
        for qkey, qpref in phi._terms.items():
            # distribute alpha over phi's prefactor and each of its slots
            for pieces, coeff in _decompositions(alpha, phi.arity + 1):
                dq = qpref.diff_multi(pieces[0])
                if dq.is_zero():
                    continue
                new_slots = tuple(
                    tuple(b + g for b, g in zip(beta, gamma))
                    for beta, gamma in zip(qkey, pieces[1:])
                )
                key = pkey[: j - 1] + new_slots + pkey[j:]
                pref = ppref * dq * coeff
                prev = terms.get(key)
                total = pref if prev is None else prev + pref
                if total.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = total
    return out + PolyDiffOperator(dim, arity, terms)


def gerstenhaber_circle(psi: PolyDiffOperator, phi: PolyDiffOperator) -> PolyDiffOperator:
    """Sum of slot insertions with signs (-1)^{(|phi|)(j-1)}."""
    out = PolyDiffOperator.zero(psi.dim, psi.arity + phi.arity - 1)
    for j in range(1, psi.arity + 1):
        piece = compose_at(psi, phi, j)
        if (phi.degree() * (j - 1)) % 2:
            piece = -piece
        out = out + piece
    return out


def gerstenhaber(psi: PolyDiffOperator, phi: PolyDiffOperator) -> PolyDiffOperator:
    """Gerstenhaber bracket on the shifted complex."""
    first = gerstenhaber_circle(psi, phi)
    second = gerstenhaber_circle(phi, psi)
    if (psi.degree() * phi.degree()) % 2:
        return first + second
    return first - second


def _append_bare_slot(op: PolyDiffOperator, front: bool) -> PolyDiffOperator:
    zero = (0,) * op.dim
    terms = {}
    for key, pref in op._terms.items():
        new_key = (zero,) + key if front else key + (zero,)
        terms[new_key] = pref
    return PolyDiffOperator(op.dim, op.arity + 1, terms)


def _merge_slot(op: PolyDiffOperator, j: int) -> PolyDiffOperator:
    """Arity n -> n+1 by feeding the product a_j * a_{j+1} into slot j."""
    dim = op.dim
    terms: dict[TermKey, Polynomial] = {}
    for key, pref in op._terms.items():
        alpha = key[j - 1]
        for pieces, coeff in _decompositions(alpha, 2):
            new_key = key[: j - 1] + (pieces[0], pieces[1]) + key[j:]
            add = pref * coeff
            prev = terms.get(new_key)
            total = add if prev is None else prev + add
            if total.is_zero():
                terms.pop(new_key, None)
            else:
                terms[new_key] = total
    return PolyDiffOperator(dim, op.arity + 1, terms)


def coboundary_dH(psi: PolyDiffOperator) -> PolyDiffOperator:
    """Hochschild coboundary: bare slot front and back, plus the alternating
    sum of neighbour merges.  Satisfies dH o dH = 0 and dH = [m, .]."""
    n = psi.arity
    front = _append_bare_slot(psi, front=True)
    if (n + 1) % 2:
        out = -front
    else:
        out = front
    for j in range(1, n + 1):
        piece = _merge_slot(psi, j)
        if (j + n + 1) % 2:
            piece = -piece
        out = out + piece
    out = out + _append_bare_slot(psi, front=False)
    return out


def cochain_action(op: PolyDiffOperator, chain: HochschildChain) -> HochschildChain:
    """Action of a polydifferential cochain on a Hochschild chain: the
    wrap-around sum feeding slot 0 into the operator plus the interior
    insertions, each with its parity sign.  Zero when the arity exceeds the
    number of slots."""
    if op.dim != chain.dim:
        raise ValueError("dimension mismatch")
    d = op.arity
    pieces: dict[Tensor, Fraction] = {}

    def emit(head: Polynomial, rest: Tensor, coeff: Fraction) -> None:
        # re-expand the operator output into the monomial basis
        for exps, mono_coeff in head.items():
            key = (exps,) + rest
            total = pieces.get(key, Fraction(0)) + coeff * mono_coeff
            if total == 0:
                pieces.pop(key, None)
            else:
                pieces[key] = total

    for tensor, coeff in chain.items():
        n = len(tensor) - 1
        if d > n + 1:
            continue
        slots = chain.slot_polynomials(tensor)
        for j in range(n - d + 1, n + 1):
            args = slots[j + 1 :] + slots[: d + j - n]
            head = op.apply(args)
            if head.is_zero():
                continue
            sign = -coeff if (n * (j + 1)) % 2 else coeff
            emit(head, tensor[d + j - n : j + 1], sign)
        for i in range(0, n - d + 1):
            inner = op.apply(slots[i + 1 : i + 1 + d])
            if inner.is_zero():
                continue
            sign = -coeff if ((d - 1) * (i + 1)) % 2 else coeff
            # the operator output lands in an interior slot: expand and let
            # the chain constructor apply normalization
            for exps, mono_coeff in inner.items():
                key = tensor[: i + 1] + (exps,) + tensor[i + 1 + d :]
                total = pieces.get(key, Fraction(0)) + sign * mono_coeff
                if total == 0:
                    pieces.pop(key, None)
                else:
                    pieces[key] = total
    return HochschildChain(chain.dim, pieces)
