"""Check suites behind the CLI and the acceptance tests.

Five suites: `algebra` and `mixed` assert exact identities over seeded
random inputs; `weights`, `lemma33`, and `theorem34` are statistical with
explicit error propagation.  Each check returns a CheckResult; a suite is a
list of them plus a deterministic report.
"""

from __future__ import annotations

import importlib.resources
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import (
    CyclicChain,
    HochschildChain,
    boundary_b,
    connes_B,
    cyclic_differential,
    shift_sigma,
    stab_s,
)
from .cochains import (
    PolyDiffOperator,
    coboundary_dH,
    cochain_action,
    gerstenhaber,
)
from .conventions import CONVENTIONS
from .forms import DiffForm, contract, de_rham, evaluate, lie_derivative
from .graphs import (
    ShoikhetGraph,
    delete_central_edge,
    shift_graph_power,
    stabilize_graph,
)
from .morphism import (
    ComparisonReport,
    ExactCentralWeights,
    MonteCarloWeights,
    MorphismInput,
    canonical_weight_key,
    lhs_d_side,
    middle_expression,
    rhs_B_side,
)
from .polynomials import Polynomial
from .polyvectors import PolyVector, schouten_bracket
from .textio import parse_chain, parse_polyvector
from .weights.angles import angle, angle_boundary_chord, angle_c, cocycle_defect
from .weights.cache import WeightCache, weight_cache_get_or_compute
from .weights.integrate import IntegrationSpec, compute_weight, exact_pure_central_weight


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def payload(self) -> dict:
        """Deterministic machine-readable content (no timing)."""
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


# -- randomized exact inputs ---------------------------------------------------


def _rand_poly(rng: random.Random, dim: int, deg: int = 2, terms: int = 2,
               nonconst: bool = True) -> Polynomial:
    while True:
        p = Polynomial.zero(dim)
        for _ in range(terms):
            exps = tuple(rng.randint(0, deg) for _ in range(dim))
            p = p + Polynomial(dim, {exps: Fraction(rng.randint(-3, 3))})
        if not nonconst or not p.without_constant_term().is_zero():
            return p


def _rand_polyvector(rng: random.Random, dim: int, k: int, terms: int = 1) -> PolyVector:
    v = PolyVector.zero(dim)
    for _ in range(terms):
        v = v + PolyVector.term(_rand_poly(rng, dim), tuple(rng.sample(range(dim), k)))
    return v


def _rand_form(rng: random.Random, dim: int, k: int, terms: int = 1) -> DiffForm:
    w = DiffForm.zero(dim)
    for _ in range(terms):
        w = w + DiffForm.term(_rand_poly(rng, dim), tuple(rng.sample(range(dim), k)))
    return w


def _rand_chain(rng: random.Random, dim: int, n: int, terms: int = 2) -> HochschildChain:
    c = HochschildChain.zero(dim)
    for _ in range(terms):
        slots = [_rand_poly(rng, dim, nonconst=False)] + [
            _rand_poly(rng, dim) for _ in range(n)
        ]
        c = c + HochschildChain.elementary(slots, rng.randint(-2, 2))
    return c


def _rand_cochain(rng: random.Random, dim: int, arity: int, order: int = 2,
                  terms: int = 2, normalized: bool = False) -> PolyDiffOperator:
    op = PolyDiffOperator.zero(dim, arity)
    for _ in range(terms):
        key = []
        for _ in range(arity):
            alpha = [rng.randint(0, order) for _ in range(dim)]
            if normalized and sum(alpha) == 0:
                alpha[rng.randrange(dim)] = 1
            key.append(tuple(alpha))
        op = op + PolyDiffOperator.single(_rand_poly(rng, dim, nonconst=False), key)
    return op


def _trial_check(name: str, trials: int, fn) -> CheckResult:
    for t in range(trials):
        if not fn(t):
            return CheckResult(name, False, f"failed at trial {t}")
    return CheckResult(name, True, f"{trials} trials exact")


# -- suite: algebra (Schouten / Cartan calculus) -------------------------------


def check_algebra(dim_max: int = 3, trials: int = 200, seed: int = 7) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("algebra")
    add = report.checks.append

    def dims():
        return rng.randint(2, dim_max)

    def f_bracket(_):
        d = dims()
        return schouten_bracket(
            PolyVector.from_function(_rand_poly(rng, d)),
            PolyVector.from_function(_rand_poly(rng, d)),
        ).is_zero()

    add(_trial_check("schouten: functions commute", trials, f_bracket))

    def antisym(_):
        d = dims()
        ku, kv = rng.randint(0, d), rng.randint(0, d)
        u = _rand_polyvector(rng, d, ku)
        v = _rand_polyvector(rng, d, kv)
        s = -1 if ((ku - 1) * (kv - 1)) % 2 else 1
        return schouten_bracket(u, v) == -1 * s * schouten_bracket(v, u)

    add(_trial_check("schouten: graded antisymmetry", trials, antisym))

    def leibniz(_):
        d = dims()
        ku, kv, kw = (rng.randint(0, d) for _ in range(3))
        u = _rand_polyvector(rng, d, ku)
        v = _rand_polyvector(rng, d, kv)
        w = _rand_polyvector(rng, d, kw)
        s = -1 if (((ku - 1) * (kv - 1 + 1)) % 2) else 1
        lhs = schouten_bracket(u, v.wedge(w))
        rhs = schouten_bracket(u, v).wedge(w) + s * v.wedge(schouten_bracket(u, w))
        return lhs == rhs

    add(_trial_check("schouten: wedge Leibniz rule", trials, leibniz))

    def jacobi(_):
        d = dims()
        ku, kv, kw = (rng.randint(0, 2) for _ in range(3))
        u = _rand_polyvector(rng, d, ku)
        v = _rand_polyvector(rng, d, kv)
        w = _rand_polyvector(rng, d, kw)
        s = -1 if ((ku - 1) * (kv - 1)) % 2 else 1
        lhs = schouten_bracket(u, schouten_bracket(v, w))
        rhs = schouten_bracket(schouten_bracket(u, v), w) + s * schouten_bracket(
            v, schouten_bracket(u, w)
        )
        return lhs == rhs

    add(_trial_check("schouten: graded Jacobi", trials, jacobi))

    def d_squared(_):
        d = dims()
        return de_rham(de_rham(_rand_form(rng, d, rng.randint(0, d - 1), 2))).is_zero()

    add(_trial_check("forms: d^2 = 0", trials, d_squared))

    def iota_f(_):
        d = dims()
        f = _rand_poly(rng, d, nonconst=False)
        om = _rand_form(rng, d, rng.randint(0, d), 2)
        return contract(PolyVector.from_function(f), om) == om * f

    add(_trial_check("forms: iota_f is multiplication", trials, iota_f))

    def eval_vs_iota(_):
        d = dims()
        k = rng.randint(1, d)
        om = _rand_form(rng, d, k)
        xi = _rand_polyvector(rng, d, k)
        sign = CONVENTIONS.eval_vs_iota_sign ** ((k * (k - 1) // 2) % 2)
        return contract(xi, om) == DiffForm.from_function(evaluate(om, xi) * sign)

    add(_trial_check("forms: evaluation vs contraction sign", trials, eval_vs_iota))

    def module_law(_):
        d = dims()
        k1, k2 = rng.randint(0, 2), rng.randint(0, 2)
        g1 = _rand_polyvector(rng, d, k1)
        g2 = _rand_polyvector(rng, d, k2)
        om = _rand_form(rng, d, rng.randint(0, d))
        s = -1 if ((k1 - 1) * (k2 - 1)) % 2 else 1
        lhs = lie_derivative(g1, lie_derivative(g2, om)) - s * lie_derivative(
            g2, lie_derivative(g1, om)
        )
        br = schouten_bracket(g1, g2)
        rhs = DiffForm.zero(d)
        for idx, coeff in br.items():
            rhs = rhs + lie_derivative(PolyVector(d, {idx: coeff}), om)
        return lhs == rhs

    add(_trial_check("forms: Lie-derivative module law", trials, module_law))

    def deval(_):
        d = dims()
        k = rng.randint(1, d)
        om = _rand_form(rng, d, k - 1, 2)
        idx = tuple(sorted(rng.sample(range(d), k)))
        xi = PolyVector(d, {idx: Polynomial.one(d)})
        lhs = evaluate(de_rham(om), xi)
        rhs = Polynomial.zero(d)
        for i, a in enumerate(idx):
            rest = idx[:i] + idx[i + 1 :]
            part = evaluate(om, PolyVector(d, {rest: Polynomial.one(d)})).diff(a)
            rhs = rhs + (part if i % 2 == 0 else -part)
        return lhs == rhs

    add(_trial_check("forms: derivative evaluation identity", trials, deval))
    return report


# -- suite: mixed (chains / cochains) ------------------------------------------


def check_mixed(dim_max: int = 3, trials: int = 200, seed: int = 11) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("mixed")
    add = report.checks.append

    def dims():
        return rng.randint(1, dim_max)

    add(_trial_check("chains: b^2 = 0", trials,
                     lambda _: boundary_b(boundary_b(
                         _rand_chain(rng, dims(), rng.randint(0, 5)))).is_zero()))
    add(_trial_check("chains: B^2 = 0", trials,
                     lambda _: connes_B(connes_B(
                         _rand_chain(rng, dims(), rng.randint(0, 5)))).is_zero()))

    def anti(_):
        c = _rand_chain(rng, dims(), rng.randint(0, 5))
        return (boundary_b(connes_B(c)) + connes_B(boundary_b(c))).is_zero()

    add(_trial_check("chains: bB + Bb = 0", trials, anti))

    def b_via_shift(_):
        d = dims()
        n = rng.randint(0, 4)
        slots = [_rand_poly(rng, d, nonconst=False)] + [_rand_poly(rng, d) for _ in range(n)]
        term = HochschildChain.elementary(slots)
        acc = HochschildChain.zero(d)
        piece = stab_s(term)
        for i in range(n + 1):
            shifted = piece
            for _ in range(i):
                shifted = shift_sigma(shifted)
            acc = acc + ((-1) ** (i * n)) * shifted
        return acc == connes_B(term)

    add(_trial_check("chains: B equals the signed shift sum", trials, b_via_shift))

    def dh2(_):
        d = dims()
        op = _rand_cochain(rng, d, rng.randint(1, 3))
        return coboundary_dH(coboundary_dH(op)).is_zero()

    add(_trial_check("cochains: dH^2 = 0", trials, dh2))

    def dh_bracket(_):
        d = dims()
        op = _rand_cochain(rng, d, rng.randint(1, 2))
        return coboundary_dH(op) == gerstenhaber(PolyDiffOperator.multiplication(d), op)

    add(_trial_check("cochains: dH = [m, .]", trials, dh_bracket))

    def g_jacobi(_):
        d = rng.randint(1, 2)
        ops = [_rand_cochain(rng, d, rng.randint(1, 2), terms=1) for _ in range(3)]
        a, b, c = ops
        s = -1 if (a.degree() * b.degree()) % 2 else 1
        lhs = gerstenhaber(a, gerstenhaber(b, c))
        rhs = gerstenhaber(gerstenhaber(a, b), c) + s * gerstenhaber(b, gerstenhaber(a, c))
        return lhs == rhs

    add(_trial_check("cochains: Gerstenhaber Jacobi", max(trials // 4, 20), g_jacobi))

    def action_is_b(_):
        d = dims()
        c = _rand_chain(rng, d, rng.randint(1, 5))
        m = PolyDiffOperator.multiplication(d)
        want = boundary_b(c) * CONVENTIONS.action_boundary_sign
        return cochain_action(m, c) == want

    add(_trial_check("action: multiplication acts as b", trials, action_is_b))

    def action_leibniz(_):
        d = dims()
        arity = rng.randint(1, 3)
        op = _rand_cochain(rng, d, arity)
        c = _rand_chain(rng, d, rng.randint(arity, 5))
        lhs = boundary_b(cochain_action(op, c)) - cochain_action(coboundary_dH(op), c)
        sign = CONVENTIONS.leibniz_sign ** ((arity - 1) % 2)
        return lhs == sign * cochain_action(op, boundary_b(c))

    add(_trial_check("action: Leibniz rule against b and dH", trials, action_leibniz))

    def action_bracket(_):
        d = rng.randint(1, 2)
        a1, a2 = rng.randint(1, 2), rng.randint(1, 2)
        d1 = _rand_cochain(rng, d, a1, terms=1, normalized=True)
        d2 = _rand_cochain(rng, d, a2, terms=1, normalized=True)
        c = _rand_chain(rng, d, rng.randint(1, 4), terms=1)
        s = -1 if (d1.degree() * d2.degree()) % 2 else 1
        lhs = cochain_action(gerstenhaber(d1, d2), c)
        rhs = cochain_action(d1, cochain_action(d2, c)) - s * cochain_action(
            d2, cochain_action(d1, c)
        )
        return lhs == rhs

    add(_trial_check("action: module law for the bracket", trials, action_bracket))

    def b_commute(_):
        d = dims()
        arity = rng.randint(1, 3)
        op = _rand_cochain(rng, d, arity, normalized=True)
        c = _rand_chain(rng, d, rng.randint(max(arity - 1, 0), 4))
        sign = CONVENTIONS.b_commute_sign ** ((arity - 1) % 2)
        return connes_B(cochain_action(op, c)) == sign * cochain_action(op, connes_B(c))

    add(_trial_check("action: B compatibility (normalized cochains)", trials, b_commute))

    def cyc_sq(_):
        d = dims()
        cc = CyclicChain(d, {0: _rand_chain(rng, d, rng.randint(0, 3)),
                             1: _rand_chain(rng, d, rng.randint(0, 3))})
        return cyclic_differential(cyclic_differential(cc)).is_zero()

    add(_trial_check("cyclic: (b + uB)^2 = 0", max(trials // 4, 20), cyc_sq))

    def u_zero(_):
        d = dims()
        c = _rand_chain(rng, d, rng.randint(0, 4))
        return cyclic_differential(CyclicChain.from_chain(c)).component(0) == boundary_b(c)

    add(_trial_check("cyclic: u = 0 recovers b", trials, u_zero))
    return report


# -- suite: weights -------------------------------------------------------------


SLICE_BATTERY = [
    ("0,2;0>1b,0>2b", 1),
    ("0,3;0>1b,0>2b,0>3b", 2),
    ("1,1;0>1,0>1b|1>1b", 1),
    ("1,2;0>1,0>1b|1>1b,1>2b", 1),
    ("1,2;0>1,0>2b|1>1b,1>2b", 2),
]


def check_weights(samples: int = 1_000_000, seed: int = 42, trials: int = 10_000,
                  cache: WeightCache | None = None, jobs: int = 1,
                  nsigma: float = 4.0, floor: float = 5e-3) -> SuiteReport:
    report = SuiteReport("weights")
    add = report.checks.append
    rng = random.Random(seed)

    # angle cocycle identity mod 1
    worst = 0.0
    for _ in range(trials):
        z = _rand_disk_point(rng)
        w = _rand_disk_point(rng)
        u = _rand_disk_point(rng)
        worst = max(worst, cocycle_defect(z, w, u))
    add(CheckResult("angles: cocycle identity mod 1", worst < 1e-10,
                    f"max defect {worst:.2e} over {trials} triples"))

    # boundary chord construction
    worst = 0.0
    for _ in range(10):
        z = _rand_disk_point(rng)
        phi = rng.uniform(0.0, 2 * math.pi)
        w = complex(math.cos(phi), math.sin(phi))
        d = angle(z, w) - angle_boundary_chord(z, w)
        worst = max(worst, abs(d - round(d)))
    add(CheckResult("angles: boundary chord construction", worst < 1e-10,
                    f"max defect {worst:.2e}"))

    # pure-central oracle
    for m in (1, 2, 3):
        enc = f"0,{m};" + ",".join(f"0>{k}b" for k in range(1, m + 1))
        graph = ShoikhetGraph.decode(enc)
        spec = IntegrationSpec(samples=samples, seed=seed, jobs=jobs)
        est = _weight(graph, spec, cache)
        target = float(exact_pure_central_weight(graph))
        delta = abs(est.value - target)
        ok = delta <= max(nsigma * est.stderr, floor)
        add(CheckResult(f"weights: closed form m={m}", ok,
                        f"mc {est.value:.6f} +- {est.stderr:.6f} vs exact {target:.6f}"))

    # slice invariance
    for enc, j in SLICE_BATTERY:
        graph = ShoikhetGraph.decode(enc)
        base = _weight(graph, IntegrationSpec(samples=samples, seed=seed, jobs=jobs), cache)
        other = _weight(
            graph, IntegrationSpec(samples=samples, seed=seed, slice_index=j, jobs=jobs), cache
        )
        sigma = math.sqrt(base.stderr**2 + other.stderr**2)
        delta = abs(base.value - other.value)
        ok = delta <= max(nsigma * sigma, floor)
        add(CheckResult(f"weights: slice invariance {enc} @{j}", ok,
                        f"delta {delta:.6f}, sigma {sigma:.6f}"))

    # variance scaling ~ 1/sqrt(N)
    graph = ShoikhetGraph.decode("1,1;0>1,0>1b|1>1b")
    n_small = 20_000
    e1 = compute_weight(graph, IntegrationSpec(samples=n_small, seed=seed, jobs=jobs))
    e2 = compute_weight(graph, IntegrationSpec(samples=4 * n_small, seed=seed, jobs=jobs))
    ratio = e1.stderr / e2.stderr if e2.stderr else math.inf
    ok = 2.0 / 1.5 <= ratio <= 2.0 * 1.5
    add(CheckResult("weights: error scales like 1/sqrt(N)", ok,
                    f"stderr ratio at 4x samples: {ratio:.2f} (expect about 2)"))
    return report


def _rand_disk_point(rng: random.Random) -> complex:
    while True:
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if 1e-6 < abs(z) < 0.999:
            return z


def _weight(graph: ShoikhetGraph, spec: IntegrationSpec, cache: WeightCache | None):
    if cache is not None:
        return weight_cache_get_or_compute(graph, spec, cache)
    return compute_weight(graph, spec)


# -- suite: lemma33 -------------------------------------------------------------


LEMMA_BATTERY = [
    "0,2;0>1b,0>2b",
    "0,3;0>1b,0>2b,0>3b",
    "1,2;0>1,0>2b|1>1b,1>2b",
]


def check_lemma33(samples: int = 1_000_000, seed: int = 42,
                  cache: WeightCache | None = None, jobs: int = 1,
                  nsigma: float = 4.0, floor: float = 5e-3) -> SuiteReport:
    """Both routes of the weight identity: the signed cyclic-shift sum
    against the averaged deleted-edge sum on the stabilized graph."""
    report = SuiteReport("lemma33")
    spec = IntegrationSpec(samples=samples, seed=seed, jobs=jobs)
    provider = MonteCarloWeights(spec, cache)
    for enc in LEMMA_BATTERY:
        graph = ShoikhetGraph.decode(enc)
        if graph.in_edges(-1):
            raise ValueError(f"battery graph {enc} violates the hypothesis")
        cycle = graph.m  # number of cycled boundary labels
        n_sign = graph.m - 1  # chain length parameter in the signs
        combo: dict[str, Fraction] = {}
        for i in range(cycle):
            shifted = shift_graph_power(graph, -i)
            sgn, key = canonical_weight_key(shifted)
            s = Fraction(sgn) if (i * n_sign) % 2 == 0 else Fraction(-sgn)
            combo[key] = combo.get(key, Fraction(0)) + s
        stab = stabilize_graph(graph)
        p = len(stab.central_star)
        for i in range(1, p + 1):
            reduced = delete_central_edge(stab, i)
            sgn, key = canonical_weight_key(reduced)
            s = Fraction(sgn, p) if (i + 1) % 2 == 0 else Fraction(-sgn, p)
            combo[key] = combo.get(key, Fraction(0)) - s
        value = 0.0
        variance = 0.0
        for key, coeff in combo.items():
            w, var = provider.numeric(key)
            value += float(coeff) * w
            variance += float(coeff) ** 2 * var
        sigma = math.sqrt(variance)
        ok = abs(value) <= max(nsigma * sigma, floor)
        report.checks.append(
            CheckResult(f"lemma33: {enc}", ok, f"delta {value:.6f}, sigma {sigma:.6f}")
        )
    return report


# -- suite: theorem34 -----------------------------------------------------------


@dataclass(frozen=True)
class BatteryCase:
    tier: str
    name: str
    inp: MorphismInput
    samples: int
    seed: int


def load_battery(name: str = "default") -> list[BatteryCase]:
    if "/" in name or name.endswith(".txt"):
        text = open(name, "r", encoding="utf-8").read()
    else:
        text = (
            importlib.resources.files("cycform")
            .joinpath(f"battery/{name}.txt")
            .read_text()
        )
    cases = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 8:
            raise ValueError(f"battery line {lineno}: expected 8 fields")
        tier, cname, dim_s, xi_s, gammas_s, chain_s, samples_s, seed_s = fields
        dim = int(dim_s)
        xi = parse_polyvector(xi_s, dim)
        gammas = tuple(
            parse_polyvector(g, dim) for g in gammas_s.split(";") if g.strip()
        )
        chain = parse_chain(chain_s, dim)
        cases.append(
            BatteryCase(tier, cname, MorphismInput(xi, gammas, chain),
                        int(samples_s), int(seed_s))
        )
    return cases


def check_theorem34(battery: str = "default", samples: int | None = None,
                    seed: int | None = None, cache: WeightCache | None = None,
                    jobs: int = 1, nsigma: float = 4.0, floor: float = 5e-3,
                    tiers: tuple[str, ...] = ("exact", "numeric")) -> SuiteReport:
    """The flagship identity, three routes pairwise: derivative side, B
    side, and the deleted-edge middle expression."""
    report = SuiteReport("theorem34")
    exact_provider = ExactCentralWeights()
    for case in load_battery(battery):
        if case.tier not in tiers:
            continue
        lhs = lhs_d_side(case.inp)
        rhs = rhs_B_side(case.inp)
        mid = middle_expression(case.inp)
        if case.tier == "exact":
            l_poly = lhs.resolve_exact(exact_provider)
            r_poly = rhs.resolve_exact(exact_provider)
            m_poly = mid.resolve_exact(exact_provider)
            ok = l_poly == r_poly == m_poly
            detail = "exact equality" if ok else (
                f"lhs={l_poly} rhs={r_poly} mid={m_poly}"
            )
            report.checks.append(CheckResult(f"theorem34[exact]: {case.name}", ok, detail))
            continue
        spec = IntegrationSpec(
            samples=samples if samples is not None else case.samples,
            seed=seed if seed is not None else case.seed,
            jobs=jobs,
        )
        provider = MonteCarloWeights(spec, cache)
        for label, a, b in (("lhs-rhs", lhs, rhs), ("lhs-mid", lhs, mid), ("rhs-mid", rhs, mid)):
            rep = ComparisonReport.compare(label, a, b, provider, nsigma, floor)
            report.checks.append(
                CheckResult(
                    f"theorem34[numeric]: {case.name} {label}",
                    rep.passed,
                    f"max |delta| {rep.max_abs_delta:.6f}, max sigma-ratio {rep.max_sigma:.2f}",
                )
            )
    return report


SUITES = {
    "algebra": check_algebra,
    "mixed": check_mixed,
    "weights": check_weights,
    "lemma33": check_lemma33,
    "theorem34": check_theorem34,
}
