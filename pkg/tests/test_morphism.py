import math
import random
from fractions import Fraction

import pytest

from cycform.chains import HochschildChain, shift_sigma, stab_s
from cycform.forms import DiffForm, de_rham, evaluate
from cycform.graphs import (
    ShoikhetGraph,
    boundary_vertex,
    enumerate_graphs,
    reorder_central_star,
    shift_graph,
    stabilize_graph,
)
from cycform.morphism import (
    ExactCentralWeights,
    MorphismError,
    MorphismInput,
    MonteCarloWeights,
    canonical_weight_key,
    evaluate_D,
    lhs_d_side,
    middle_expression,
    rhs_B_side,
    taylor_component,
)
from cycform.polynomials import Polynomial
from cycform.polyvectors import PolyVector
from cycform.weights.integrate import IntegrationSpec, compute_weight

rng = random.Random(31)


def rand_poly(dim, deg=2, terms=2, nonconst=True):
    while True:
        p = Polynomial.zero(dim)
        for _ in range(terms):
            exps = tuple(rng.randint(0, deg) for _ in range(dim))
            p = p + Polynomial(dim, {exps: Fraction(rng.randint(-3, 3))})
        if not nonconst or not p.without_constant_term().is_zero():
            return p


def test_hkr_graph_expansion():
    """The straight-line graph gives a_0 times the full contraction of
    the slot differentials, matching a direct expansion."""
    dim = 3
    n = 2
    graph = ShoikhetGraph(0, n, [tuple(boundary_vertex(k) for k in range(1, n + 1))])
    slots = [rand_poly(dim) for _ in range(n + 1)]
    xi = PolyVector(dim, {(0, 1): Polynomial.one(dim)})
    got = evaluate_D(graph, xi, (), slots)
    form = DiffForm.from_function(slots[0])
    for a in slots[1:]:
        form = form.wedge(de_rham(DiffForm.from_function(a)))
    assert got == evaluate(form, xi)


def test_edgeless_function_degree():
    dim = 2
    graph = ShoikhetGraph.decode("0,0;")
    a0 = rand_poly(dim)
    xi = PolyVector.from_function(Polynomial.one(dim))
    assert evaluate_D(graph, xi, (), [a0]) == a0


def test_degree_mismatch_raises():
    dim = 2
    graph = ShoikhetGraph.decode("0,1;0>1b")
    with pytest.raises(MorphismError):
        evaluate_D(graph, PolyVector.from_function(Polynomial.one(dim)), (), [rand_poly(dim)] * 2)


def _rand_slots(dim, count):
    return [rand_poly(dim) for _ in range(count)]


def test_sigma_compatibility():
    """D_{sigma Gamma}(..., c) = D_Gamma(..., sigma c)."""
    dim = 2
    for _ in range(10):
        for graph in enumerate_graphs(1, 2, 1, [2]):
            xi = PolyVector.term(Polynomial.one(dim), (rng.randrange(dim),))
            gam = PolyVector.term(rand_poly(dim), (0, 1))
            slots = _rand_slots(dim, graph.m + 1)
            chain = HochschildChain.elementary(slots)
            lhs = _apply_to_chain(shift_graph(graph), xi, (gam,), chain)
            rhs = _apply_to_chain(graph, xi, (gam,), shift_sigma(chain))
            assert lhs == rhs


def test_s_compatibility():
    """D_{s Gamma}(..., c) = D_Gamma(..., s c), zero for the empty graph."""
    dim = 2
    for graph in enumerate_graphs(1, 2, 1, [2]):
        xi = PolyVector.term(Polynomial.one(dim), (0,))
        gam = PolyVector.term(rand_poly(dim), (0, 1))
        slots = _rand_slots(dim, graph.m)  # chain for the stabilized graph
        chain = HochschildChain.elementary(slots)
        stab = stabilize_graph(graph)
        rhs = _apply_to_chain(graph, xi, (gam,), stab_s(chain))
        if stab is None:
            assert rhs.is_zero()
        else:
            lhs = _apply_to_chain(stab, xi, (gam,), chain)
            assert lhs == rhs


def _apply_to_chain(graph, xi, gammas, chain):
    out = Polynomial.zero(xi.dim)
    for tensor, coeff in chain.items():
        slots = chain.slot_polynomials(tensor)
        if len(slots) != graph.m + 1:
            continue
        out = out + evaluate_D(graph, xi, gammas, slots) * coeff
    return out


def test_reorder_star_covariance():
    """(-1)^(i+1) D_Gamma = D_Gamma' after moving edge i to the front, and
    the weight key identifies the reordered graph up to the same sign."""
    dim = 3
    graph3 = ShoikhetGraph.decode("0,3;0>1b,0>2b,0>3b")
    xi3 = PolyVector.term(Polynomial.one(dim), (0, 1, 2))
    slots = [rand_poly(dim) for _ in range(4)]
    base = evaluate_D(graph3, xi3, (), slots)
    for i in (1, 2, 3):
        reordered, sign = reorder_central_star(graph3, i)
        got = evaluate_D(reordered, xi3, (), slots)
        assert got == base * sign
        csign, key = canonical_weight_key(reordered)
        assert key == graph3.encode()
        assert csign == sign


def test_canonical_weight_key_sign_against_mc():
    graph = ShoikhetGraph.decode("0,2;0>2b,0>1b")
    sign, key = canonical_weight_key(graph)
    assert sign == -1 and key == "0,2;0>1b,0>2b"
    spec = IntegrationSpec(samples=20_000)
    direct = compute_weight(graph, spec).value
    canonical = compute_weight(ShoikhetGraph.decode(key), spec).value
    assert direct == pytest.approx(sign * canonical, abs=1e-9)


def test_taylor_component_trivial_cases():
    dim = 2
    a0 = rand_poly(dim)
    # function-degree central insertion on a bare chain
    inp = MorphismInput(PolyVector.from_function(Polynomial.one(dim)), (),
                        HochschildChain.elementary([a0]))
    exact = ExactCentralWeights()
    val = taylor_component(inp).resolve_exact(exact)
    assert HochschildChain.elementary([val]) == HochschildChain.elementary([a0])
    # degrees that admit no graph
    xi = PolyVector.term(Polynomial.one(dim), (0,))
    empty = taylor_component(
        MorphismInput(xi, (PolyVector.term(rand_poly(dim), (0, 1)),),
                      HochschildChain.elementary([a0]))
    )
    # xi degree 1 + gamma degree 2 = 3 edges vs dimension 2: weights all vanish
    provider = MonteCarloWeights(IntegrationSpec(samples=1000))
    resolved = empty.resolve_numeric(provider)
    assert all(abs(v) == 0.0 for v, _ in resolved.values())


def test_hkr_taylor_value():
    """With closed-form weights the bottom component is the antisymmetrized
    derivative map with coefficient 1/n!."""
    exact = ExactCentralWeights()
    for n in (1, 2):
        dim = 3
        slots = [rand_poly(dim) for _ in range(n + 1)]
        chain = HochschildChain.elementary(slots)
        idx = tuple(range(n))
        xi = PolyVector(dim, {idx: Polynomial.one(dim)})
        got = taylor_component(MorphismInput(xi, (), chain)).resolve_exact(exact)
        form = DiffForm.from_function(slots[0])
        for a in slots[1:]:
            form = form.wedge(de_rham(DiffForm.from_function(a)))
        want = evaluate(form, xi) * Fraction(1, math.factorial(n))
        # compare modulo the chain normalization of the input slots
        got_c = HochschildChain.elementary([got]) if not got.is_zero() else HochschildChain.zero(dim)
        want_c = HochschildChain.elementary([want]) if not want.is_zero() else HochschildChain.zero(dim)
        assert got_c == want_c


def test_exact_flagship_identity_random():
    exact = ExactCentralWeights()
    for _ in range(6):
        dim = rng.randint(2, 3)
        n = rng.randint(0, dim - 1)
        idx = tuple(sorted(rng.sample(range(dim), n + 1)))
        xi = PolyVector(dim, {idx: Polynomial.one(dim)})
        chain = HochschildChain.elementary([rand_poly(dim) for _ in range(n + 1)])
        inp = MorphismInput(xi, (), chain)
        lhs = lhs_d_side(inp).resolve_exact(exact)
        rhs = rhs_B_side(inp).resolve_exact(exact)
        mid = middle_expression(inp).resolve_exact(exact)
        assert lhs == rhs == mid


def test_morphism_input_validation():
    dim = 2
    with pytest.raises(MorphismError):
        MorphismInput(PolyVector.term(Polynomial.variable(dim, 0), (0,)), (),
                      HochschildChain.elementary([Polynomial.variable(dim, 0)]))
