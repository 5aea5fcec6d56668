"""Heavier cross-checks beyond the acceptance gates: a systematic sweep of
the exact tier, a higher-dimensional instance of the stabilization weight
identity, and shift-compatibility on graphs with aerial-to-aerial edges."""

import math
import random
from fractions import Fraction

from cycform.chains import HochschildChain, shift_sigma
from cycform.graphs import (
    ShoikhetGraph,
    delete_central_edge,
    enumerate_graphs,
    shift_graph,
    shift_graph_power,
    stabilize_graph,
)
from cycform.morphism import (
    ExactCentralWeights,
    MonteCarloWeights,
    MorphismInput,
    canonical_weight_key,
    evaluate_D,
    lhs_d_side,
    middle_expression,
    rhs_B_side,
)
from cycform.polynomials import Polynomial
from cycform.polyvectors import PolyVector
from cycform.weights.integrate import IntegrationSpec

rng = random.Random(41)


def rand_poly(dim, deg=2, terms=2):
    while True:
        p = Polynomial.zero(dim)
        for _ in range(terms):
            exps = tuple(rng.randint(0, deg) for _ in range(dim))
            p = p + Polynomial(dim, {exps: Fraction(rng.randint(-3, 3))})
        if not p.without_constant_term().is_zero():
            return p


def test_exact_tier_systematic_sweep():
    """Every (dimension, chain length) combination in the desk-scale box,
    three random chains each, all three routes exactly equal."""
    exact = ExactCentralWeights()
    for dim in (1, 2, 3):
        for n in range(0, 4):
            for trial in range(3):
                p = n + 1
                if p <= dim:
                    idx = tuple(sorted(rng.sample(range(dim), p)))
                else:
                    # degree-starved: all routes must vanish exactly
                    idx = tuple(range(dim))
                xi = PolyVector(dim, {idx: Polynomial.one(dim)})
                chain = HochschildChain.elementary(
                    [rand_poly(dim) for _ in range(n + 1)]
                )
                inp = MorphismInput(xi, (), chain)
                lhs = lhs_d_side(inp).resolve_exact(exact)
                rhs = rhs_B_side(inp).resolve_exact(exact)
                mid = middle_expression(inp).resolve_exact(exact)
                assert lhs == rhs == mid, (dim, n, trial)


def test_lemma_identity_dim5_instance():
    """Stabilization weight identity on a 5-dimensional mixed instance
    (three cycled boundary labels, even sign pattern)."""
    graph = ShoikhetGraph.decode("1,3;0>1,0>2b,0>3b|1>1b,1>2b")
    assert graph.in_edges(-1) == 0
    assert graph.edge_count == graph.dimension
    provider = MonteCarloWeights(IntegrationSpec(samples=300_000, jobs=2))
    n_sign = graph.m - 1
    combo: dict[str, Fraction] = {}
    for i in range(graph.m):
        sgn, key = canonical_weight_key(shift_graph_power(graph, -i))
        s = Fraction(sgn) if (i * n_sign) % 2 == 0 else Fraction(-sgn)
        combo[key] = combo.get(key, Fraction(0)) + s
    stab = stabilize_graph(graph)
    p = len(stab.central_star)
    for i in range(1, p + 1):
        sgn, key = canonical_weight_key(delete_central_edge(stab, i))
        s = Fraction(sgn, p) if (i + 1) % 2 == 0 else Fraction(-sgn, p)
        combo[key] = combo.get(key, Fraction(0)) - s
    value = 0.0
    variance = 0.0
    for key, coeff in combo.items():
        w, var = provider.numeric(key)
        value += float(coeff) * w
        variance += float(coeff) ** 2 * var
    assert abs(value) <= max(4.0 * math.sqrt(variance), 5e-3)


def test_sigma_compatibility_with_aerial_edges():
    """Shift compatibility for graphs whose aerial vertices also point at
    each other, not only at the boundary."""
    dim = 2
    x, y = Polynomial.variables(dim)
    xi = PolyVector.term(Polynomial.one(dim), (0,))
    gammas = (PolyVector.term(x * y, (0, 1)), PolyVector.term(y * y, (1,)))
    count = 0
    for graph in enumerate_graphs(2, 2, 1, [2, 1]):
        if not any(1 <= t <= 2 for star in graph.stars for t in star):
            continue  # want at least one aerial-to-aerial edge
        count += 1
        slots = [rand_poly(dim) for _ in range(graph.m + 1)]
        chain = HochschildChain.elementary(slots)
        lhs = _apply(shift_graph(graph), xi, gammas, chain)
        rhs = _apply(graph, xi, gammas, shift_sigma(chain))
        assert lhs == rhs
        if count >= 12:
            break
    assert count >= 5


def _apply(graph, xi, gammas, chain):
    out = Polynomial.zero(xi.dim)
    for tensor, coeff in chain.items():
        slots = chain.slot_polynomials(tensor)
        if len(slots) != graph.m + 1:
            continue
        out = out + evaluate_D(graph, xi, gammas, slots) * coeff
    return out


def test_enumeration_unsatisfiable_is_empty():
    assert list(enumerate_graphs(0, 0, 2, [])) == []
    assert list(enumerate_graphs(1, 0, 0, [3])) == []
