"""Normalized Hochschild chains of the polynomial algebra, the boundary b,
the degree +1 operator B, the cyclic shift, and the u-extended complex.

Chains are stored in the monomial basis: an elementary tensor is a tuple of
exponent multi-indices, one per slot, with a rational coefficient.  This
makes multilinearity and the normalization (constants in slots >= 1 vanish)
exact properties of the representation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .polynomials import Exponents, Polynomial

# Desk-scale bound on tensor slots; guards runaway recursion in experiments.
MAX_SLOTS = 8

Tensor = tuple[Exponents, ...]


def _monomial(dim: int, exps: Exponents) -> Polynomial:
    return Polynomial(dim, {exps: Fraction(1)})


class HochschildChain:
    """Rational linear combination of monomial tensors, eagerly normalized."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[Tensor, Fraction] | None = None):
        self.dim = dim
        clean: dict[Tensor, Fraction] = {}
        if terms:
            for tensor, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                if len(tensor) > MAX_SLOTS:
                    raise ValueError(
                        f"chain length {len(tensor)} exceeds MAX_SLOTS={MAX_SLOTS}"
                    )
                if any(len(exps) != dim for exps in tensor):
                    raise ValueError("slot exponent dimension mismatch")
                # normalization: slots past the first kill constants
                if any(sum(exps) == 0 for exps in tensor[1:]):
                    continue
                total = clean.get(tensor, Fraction(0)) + c
                if total == 0:
                    clean.pop(tensor, None)
                else:
                    clean[tensor] = total
        self._terms = clean

    @classmethod
    def zero(cls, dim: int) -> "HochschildChain":
        return cls(dim)

    @classmethod
    def elementary(cls, slots: Iterable[Polynomial], coeff=1) -> "HochschildChain":
        """Expand a tensor of polynomials into the monomial basis."""
        polys = list(slots)
        if not polys:
            raise ValueError("a chain needs at least the slot a_0")
        dim = polys[0].dim
        terms: dict[Tensor, Fraction] = {(): Fraction(coeff)}
        for p in polys:
            if p.dim != dim:
                raise ValueError("slot dimension mismatch")
            new: dict[Tensor, Fraction] = {}
            for tensor, c in terms.items():
                for exps, mono_coeff in p.items():
                    key = tensor + (exps,)
                    new[key] = new.get(key, Fraction(0)) + c * mono_coeff
            terms = new
        return cls(dim, terms)

    def items(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def slot_polynomials(self, tensor: Tensor) -> tuple[Polynomial, ...]:
        return tuple(_monomial(self.dim, exps) for exps in tensor)

    def __add__(self, other: "HochschildChain") -> "HochschildChain":
        if not isinstance(other, HochschildChain):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        terms = dict(self._terms)
        for tensor, coeff in other._terms.items():
            total = terms.get(tensor, Fraction(0)) + coeff
            if total == 0:
                terms.pop(tensor, None)
            else:
                terms[tensor] = total
        return HochschildChain(self.dim, terms)

    def __neg__(self) -> "HochschildChain":
        return HochschildChain(self.dim, {t: -c for t, c in self._terms.items()})

    def __sub__(self, other: "HochschildChain") -> "HochschildChain":
        return self + (-other)

    def __mul__(self, scalar) -> "HochschildChain":
        if isinstance(scalar, (int, Fraction)):
            return HochschildChain(
                self.dim, {t: c * scalar for t, c in self._terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HochschildChain):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for tensor, coeff in sorted(self._terms.items()):
            body = " (x) ".join(str(_monomial(self.dim, e)) for e in tensor)
            parts.append(f"{coeff} * [{body}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HochschildChain({self.dim}, '{self}')"


def _merge(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def boundary_b(chain: HochschildChain) -> HochschildChain:
    """Hochschild boundary: contract neighbouring slots with alternating
    signs, the last term wrapping a_n onto slot 0."""
    pieces: dict[Tensor, Fraction] = {}
    for tensor, coeff in chain.items():
        n = len(tensor) - 1
        if n == 0:
            continue
        first = (_merge(tensor[0], tensor[1]),) + tensor[2:]
        pieces[first] = pieces.get(first, Fraction(0)) + coeff
        for j in range(1, n):
            merged = tensor[:j] + (_merge(tensor[j], tensor[j + 1]),) + tensor[j + 2 :]
            sign = -coeff if j % 2 else coeff
            pieces[merged] = pieces.get(merged, Fraction(0)) + sign
        last = (_merge(tensor[n], tensor[0]),) + tensor[1:n]
        sign = -coeff if n % 2 else coeff
        pieces[last] = pieces.get(last, Fraction(0)) + sign
    return HochschildChain(chain.dim, pieces)


def connes_B(chain: HochschildChain) -> HochschildChain:
    """Degree +1 operator: the signed sum of cyclic rotations with a fresh
    unit in slot 0."""
    unit = (0,) * chain.dim
    pieces: dict[Tensor, Fraction] = {}
    for tensor, coeff in chain.items():
        n = len(tensor) - 1
        for j in range(n + 1):
            rotated = (unit,) + tensor[j:] + tensor[:j]
            sign = -coeff if (n * j) % 2 else coeff
            pieces[rotated] = pieces.get(rotated, Fraction(0)) + sign
    return HochschildChain(chain.dim, pieces)


def shift_sigma(chain: HochschildChain) -> HochschildChain:
    """Cyclic shift: a_0 (x) a_1 (x) ... (x) a_n -> a_0 (x) a_2 (x) ... (x) a_n (x) a_1."""
    pieces: dict[Tensor, Fraction] = {}
    for tensor, coeff in chain.items():
        if len(tensor) <= 2:
            shifted = tensor
        else:
            shifted = (tensor[0],) + tensor[2:] + (tensor[1],)
        pieces[shifted] = pieces.get(shifted, Fraction(0)) + coeff
    return HochschildChain(chain.dim, pieces)


def stab_s(chain: HochschildChain) -> HochschildChain:
    """Prepend the unit: a_0 (x) ... -> 1 (x) a_0 (x) ..."""
    unit = (0,) * chain.dim
    pieces: dict[Tensor, Fraction] = {}
    for tensor, coeff in chain.items():
        pieces[(unit,) + tensor] = pieces.get((unit,) + tensor, Fraction(0)) + coeff
    return HochschildChain(chain.dim, pieces)


class CyclicChain:
    """Finite sum of Hochschild chains weighted by powers of the degree -2
    variable u; differential b + uB."""

    __slots__ = ("dim", "_parts")

    def __init__(self, dim: int, parts: Mapping[int, HochschildChain] | None = None):
        self.dim = dim
        clean: dict[int, HochschildChain] = {}
        if parts:
            for j, c in parts.items():
                if j < 0:
                    raise ValueError("negative u-powers are not supported")
                if c.dim != dim:
                    raise ValueError("dimension mismatch")
                if not c.is_zero():
                    prev = clean.get(j)
                    total = c if prev is None else prev + c
                    if total.is_zero():
                        clean.pop(j, None)
                    else:
                        clean[j] = total
        self._parts = clean

    @classmethod
    def from_chain(cls, chain: HochschildChain) -> "CyclicChain":
        return cls(chain.dim, {0: chain})

    def component(self, j: int) -> HochschildChain:
        return self._parts.get(j, HochschildChain.zero(self.dim))

    def parts(self):
        return iter(sorted(self._parts.items()))

    def is_zero(self) -> bool:
        return not self._parts

    def __add__(self, other: "CyclicChain") -> "CyclicChain":
        if not isinstance(other, CyclicChain):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        parts = dict(self._parts)
        for j, c in other._parts.items():
            prev = parts.get(j)
            total = c if prev is None else prev + c
            if total.is_zero():
                parts.pop(j, None)
            else:
                parts[j] = total
        return CyclicChain(self.dim, parts)

    def __eq__(self, other):
        if not isinstance(other, CyclicChain):
            return NotImplemented
        return self.dim == other.dim and self._parts == other._parts

    def __repr__(self):
        body = " + ".join(f"u^{j} * ({c})" for j, c in sorted(self._parts.items()))
        return f"CyclicChain({self.dim}, '{body or '0'}')"


def cyclic_differential(cc: CyclicChain) -> CyclicChain:
    """Apply b + uB u-linearly; squares to zero."""
    parts: dict[int, HochschildChain] = {}
    for j, c in cc.parts():
        body = boundary_b(c)
        if not body.is_zero():
            prev = parts.get(j)
            parts[j] = body if prev is None else prev + body
        up = connes_B(c)
        if not up.is_zero():
            prev = parts.get(j + 1)
            parts[j + 1] = up if prev is None else prev + up
    return CyclicChain(cc.dim, parts)
