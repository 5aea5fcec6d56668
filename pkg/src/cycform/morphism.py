"""Taylor components of the chain formality morphism: graph operators,
weighted graph sums, and the three routes through the flagship identity.

Each route (derivative side, B side, deleted-edge middle expression) is
assembled symbolically as a linear combination of graph weights with exact
rational polynomial coefficients; weights are resolved at the end through
one shared provider, so statistical errors propagate exactly and common
weights cancel in differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .chains import HochschildChain, connes_B
from .graphs import (
    ShoikhetGraph,
    delete_central_edge,
    enumerate_graphs,
    vertex_sort_key,
)
from .polynomials import Exponents, Polynomial
from .polyvectors import PolyVector
from .weights.cache import WeightCache, weight_cache_get_or_compute
from .weights.integrate import IntegrationSpec, compute_weight, exact_pure_central_weight


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class MorphismInput:
    """One evaluation instance: central constant polyvector, aerial
    polyvectors, and a chain."""

    xi: PolyVector
    gammas: tuple[PolyVector, ...]
    chain: HochschildChain

    def __post_init__(self):
        dims = {self.xi.dim, self.chain.dim, *(g.dim for g in self.gammas)}
        if len(dims) != 1:
            raise MorphismError("mixed dimensions in morphism input")
        if not self.xi.is_constant():
            raise MorphismError("the central insertion must have constant coefficients")
        for g in self.gammas:
            g.wedge_count()  # raises if inhomogeneous

    @property
    def dim(self) -> int:
        return self.xi.dim


def evaluate_D(
    graph: ShoikhetGraph,
    xi: PolyVector,
    gammas,
    slots,
) -> Polynomial:
    """Graph polydifferential operator: sum over edge index assignments of
    the product over vertices, where each type I vertex contributes the
    antisymmetric component of its polyvector in the star-ordered outgoing
    indices, and every vertex is differentiated by its incoming indices.
    The central vertex carries xi, aerial vertex j carries gammas[j-1], and
    boundary vertex kbar carries slots[k]."""
    dim = xi.dim
    gammas = tuple(gammas)
    slots = tuple(slots)
    if len(gammas) != graph.n:
        raise MorphismError(f"expected {graph.n} aerial polyvectors, got {len(gammas)}")
    if len(slots) != graph.m + 1:
        raise MorphismError(f"expected {graph.m + 1} chain slots, got {len(slots)}")
    if xi.wedge_count() != len(graph.central_star):
        raise MorphismError("central out-degree does not match the wedge count of xi")
    for j, g in enumerate(gammas, start=1):
        if g.wedge_count() != len(graph.stars[j]):
            raise MorphismError(f"out-degree of vertex {j} does not match gamma_{j}")

    edges = graph.edges()
    n_edges = len(edges)
    star_sizes = [len(s) for s in graph.stars]
    star_offsets = [0]
    for size in star_sizes:
        star_offsets.append(star_offsets[-1] + size)

    total = Polynomial.zero(dim)
    for assign in product(range(dim), repeat=n_edges):
        incoming: dict[int, list[int]] = {}
        for (src, tgt), idx in zip(edges, assign):
            if tgt not in incoming:
                incoming[tgt] = [0] * dim
            incoming[tgt][idx] += 1

        term = xi.component(tuple(assign[: star_sizes[0]]))
        if term.is_zero():
            continue
        ok = True
        for j in range(1, graph.n + 1):
            out_tuple = tuple(assign[star_offsets[j] : star_offsets[j + 1]])
            comp = gammas[j - 1].component(out_tuple)
            if j in incoming:
                comp = comp.diff_multi(incoming[j])
            if comp.is_zero():
                ok = False
                break
            term = term * comp
        if not ok:
            continue
        for k in range(graph.m + 1):
            v = -(k + 1)
            factor = slots[k]
            if v in incoming:
                factor = factor.diff_multi(incoming[v])
            if factor.is_zero():
                ok = False
                break
            term = term * factor
        if not ok:
            continue
        total = total + term
    return total


def canonical_weight_key(graph: ShoikhetGraph) -> tuple[int, str]:
    """Encoding of the star-sorted graph plus the permutation sign relating
    its weight to the given one; lets differently ordered copies share one
    integral."""
    sign = 1
    stars = []
    for star in graph.stars:
        order = sorted(range(len(star)), key=lambda i: vertex_sort_key(star[i]))
        perm_sign = _perm_sign(order)
        sign *= perm_sign
        stars.append(tuple(star[i] for i in order))
    return sign, ShoikhetGraph(graph.n, graph.m, stars).encode()


def _perm_sign(order) -> int:
    vals = list(order)
    sign = 1
    for i in range(1, len(vals)):
        j = i
        while j > 0 and vals[j - 1] > vals[j]:
            vals[j - 1], vals[j] = vals[j], vals[j - 1]
            sign = -sign
            j -= 1
    return sign


class WeightedPoly:
    """Polynomial-valued linear combination of graph weights: a map
    monomial -> {weight key -> rational coefficient}."""

    def __init__(self, dim: int):
        self.dim = dim
        self.terms: dict[Exponents, dict[str, Fraction]] = {}

    def add(self, poly: Polynomial, key: str, scale: Fraction = Fraction(1)) -> None:
        if poly.dim != self.dim:
            raise MorphismError("dimension mismatch")
        for exps, coeff in poly.items():
            bucket = self.terms.setdefault(exps, {})
            total = bucket.get(key, Fraction(0)) + coeff * scale
            if total == 0:
                bucket.pop(key, None)
                if not bucket:
                    del self.terms[exps]
            else:
                bucket[key] = total

    def __add__(self, other: "WeightedPoly") -> "WeightedPoly":
        out = WeightedPoly(self.dim)
        for wp in (self, other):
            for exps, bucket in wp.terms.items():
                for key, coeff in bucket.items():
                    out._bump(exps, key, coeff)
        return out

    def __sub__(self, other: "WeightedPoly") -> "WeightedPoly":
        out = WeightedPoly(self.dim)
        for exps, bucket in self.terms.items():
            for key, coeff in bucket.items():
                out._bump(exps, key, coeff)
        for exps, bucket in other.terms.items():
            for key, coeff in bucket.items():
                out._bump(exps, key, -coeff)
        return out

    def _bump(self, exps: Exponents, key: str, coeff: Fraction) -> None:
        bucket = self.terms.setdefault(exps, {})
        total = bucket.get(key, Fraction(0)) + coeff
        if total == 0:
            bucket.pop(key, None)
            if not bucket:
                del self.terms[exps]
        else:
            bucket[key] = total

    def coordinate_derivative(self, a: int) -> "WeightedPoly":
        out = WeightedPoly(self.dim)
        for exps, bucket in self.terms.items():
            if exps[a] == 0:
                continue
            lowered = list(exps)
            lowered[a] -= 1
            factor = Fraction(exps[a])
            for key, coeff in bucket.items():
                out._bump(tuple(lowered), key, coeff * factor)
        return out

    def weight_keys(self) -> set[str]:
        keys: set[str] = set()
        for bucket in self.terms.values():
            keys.update(bucket)
        return keys

    def resolve_exact(self, provider) -> Polynomial:
        out = Polynomial.zero(self.dim)
        for exps, bucket in self.terms.items():
            c = Fraction(0)
            for key, coeff in bucket.items():
                c += coeff * provider.exact(key)
            if c != 0:
                out = out + Polynomial(self.dim, {exps: c})
        return out

    def resolve_numeric(self, provider) -> dict[Exponents, tuple[float, float]]:
        """Monomial -> (value, variance), propagating weight variances
        through the exact coefficients."""
        out = {}
        for exps, bucket in self.terms.items():
            value = 0.0
            variance = 0.0
            for key, coeff in bucket.items():
                w, var = provider.numeric(key)
                c = float(coeff)
                value += c * w
                variance += c * c * var
            out[exps] = (value, variance)
        return out


class ExactCentralWeights:
    """Closed-form weights; only graphs without aerial vertices qualify."""

    def exact(self, key: str) -> Fraction:
        w = exact_pure_central_weight(ShoikhetGraph.decode(key))
        if w is None:
            raise MorphismError(f"no closed-form weight for {key}")
        return w

    def numeric(self, key: str) -> tuple[float, float]:
        return float(self.exact(key)), 0.0


class MonteCarloWeights:
    """Weight provider backed by the sampler, optionally cached on disk."""

    def __init__(self, spec: IntegrationSpec, cache: WeightCache | None = None):
        self.spec = spec
        self.cache = cache
        self._memo: dict[str, tuple[float, float]] = {}

    def numeric(self, key: str) -> tuple[float, float]:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        graph = ShoikhetGraph.decode(key)
        if self.cache is not None:
            est = weight_cache_get_or_compute(graph, self.spec, self.cache)
        else:
            est = compute_weight(graph, self.spec)
        out = (est.value, est.stderr**2)
        self._memo[key] = out
        return out

    def exact(self, key: str) -> Fraction:
        raise MorphismError("Monte Carlo weights are not exact")


def _star_multiplicity(graph: ShoikhetGraph) -> Fraction:
    out = Fraction(1)
    for star in graph.stars:
        out *= math.factorial(len(star))
    return out


def _degree_data(inp: MorphismInput) -> tuple[int, tuple[int, ...]]:
    return inp.xi.wedge_count(), tuple(g.wedge_count() for g in inp.gammas)


def taylor_component(inp: MorphismInput) -> WeightedPoly:
    """The weighted graph sum evaluated on the input, as a linear
    combination of canonical-graph weights.  Summation runs over canonical
    star orders with the star-factorial multiplicity absorbing the order
    redundancy against the weight prefactor."""
    p, degs = _degree_data(inp)
    wp = WeightedPoly(inp.dim)
    for tensor, coeff in inp.chain.items():
        slots = inp.chain.slot_polynomials(tensor)
        n_typeII = len(slots) - 1
        for graph in enumerate_graphs(len(degs), n_typeII, p, degs):
            value = evaluate_D(graph, inp.xi, inp.gammas, slots)
            if value.is_zero():
                continue
            wp.add(value, graph.encode(), coeff * _star_multiplicity(graph))
    return wp


def rhs_B_side(inp: MorphismInput) -> WeightedPoly:
    """Route the chain through the degree +1 operator first."""
    return taylor_component(
        MorphismInput(inp.xi, inp.gammas, connes_B(inp.chain))
    )


def _xi_factors(xi: PolyVector):
    """Decompose a constant polyvector term by term into wedge factors."""
    for idx, coeff in xi.items():
        factors = [PolyVector.basis_vector(xi.dim, a) for a in idx]
        yield coeff.constant_coefficient(), idx, factors


def lhs_d_side(inp: MorphismInput) -> WeightedPoly:
    """Derivative side: evaluate against the wedge factors of xi with one
    factor removed, differentiate along it, and sum with alternating
    signs."""
    wp = WeightedPoly(inp.dim)
    for coeff, idx, _factors in _xi_factors(inp.xi):
        for i, a in enumerate(idx):
            rest = idx[:i] + idx[i + 1 :]
            sub_xi = PolyVector(inp.dim, {rest: Polynomial.one(inp.dim)})
            partial = taylor_component(MorphismInput(sub_xi, inp.gammas, inp.chain))
            deriv = partial.coordinate_derivative(a)
            sign = Fraction(coeff) if i % 2 == 0 else -Fraction(coeff)
            for exps, bucket in deriv.terms.items():
                for key, c in bucket.items():
                    wp._bump(exps, key, c * sign)
    return wp


def middle_expression(inp: MorphismInput) -> WeightedPoly:
    """Deleted-edge route: for each contributing graph, the signed average
    over deleting one central edge, weighted by the remaining graph.

    Summed over canonical representatives, reordering the star so the
    deleted edge comes first turns the per-edge signs into the factor
    (product of aerial star factorials) * (p-1)! * sum_i (-1)^(i+1)."""
    p, degs = _degree_data(inp)
    wp = WeightedPoly(inp.dim)
    if p == 0:
        return wp
    aerial_mult = Fraction(1)
    for k in degs:
        aerial_mult *= math.factorial(k)
    scale = aerial_mult * math.factorial(p - 1)
    for tensor, coeff in inp.chain.items():
        slots = inp.chain.slot_polynomials(tensor)
        n_typeII = len(slots) - 1
        for graph in enumerate_graphs(len(degs), n_typeII, p, degs):
            value = evaluate_D(graph, inp.xi, inp.gammas, slots)
            if value.is_zero():
                continue
            for i in range(1, p + 1):
                reduced = delete_central_edge(graph, i)
                sign = Fraction(1) if (i + 1) % 2 == 0 else Fraction(-1)
                wp.add(value, reduced.encode(), coeff * scale * sign)
    return wp


@dataclass
class ComparisonReport:
    """Per-monomial comparison of two weighted expressions."""

    label: str
    max_abs_delta: float
    max_sigma: float
    entries: list[tuple[Exponents, float, float]] = field(repr=False, default_factory=list)
    passed: bool = True

    @classmethod
    def compare(
        cls,
        label: str,
        left: WeightedPoly,
        right: WeightedPoly,
        provider,
        nsigma: float = 4.0,
        floor: float = 5e-3,
    ) -> "ComparisonReport":
        delta = left - right
        resolved = delta.resolve_numeric(provider)
        entries = []
        max_abs = 0.0
        max_sig = 0.0
        ok = True
        for exps, (value, variance) in sorted(resolved.items()):
            sigma = math.sqrt(variance)
            entries.append((exps, value, sigma))
            max_abs = max(max_abs, abs(value))
            ratio = abs(value) / sigma if sigma > 0 else (0.0 if value == 0 else math.inf)
            max_sig = max(max_sig, ratio)
            if abs(value) > max(nsigma * sigma, floor):
                ok = False
        return cls(label, max_abs, max_sig, entries, ok)
