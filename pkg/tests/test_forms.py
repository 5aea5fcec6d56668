import random
from fractions import Fraction

from cycform.conventions import CONVENTIONS
from cycform.forms import DiffForm, contract, de_rham, evaluate, lie_derivative
from cycform.polynomials import Polynomial
from cycform.polyvectors import PolyVector, schouten_bracket

rng = random.Random(9)


def rand_poly(dim, deg=2, terms=2):
    p = Polynomial.zero(dim)
    for _ in range(terms):
        exps = tuple(rng.randint(0, deg) for _ in range(dim))
        p = p + Polynomial(dim, {exps: Fraction(rng.randint(-3, 3))})
    return p


def rand_form(dim, k, terms=1):
    w = DiffForm.zero(dim)
    for _ in range(terms):
        w = w + DiffForm.term(rand_poly(dim), tuple(rng.sample(range(dim), k)))
    return w


def rand_pv(dim, k, terms=1):
    v = PolyVector.zero(dim)
    for _ in range(terms):
        v = v + PolyVector.term(rand_poly(dim), tuple(rng.sample(range(dim), k)))
    return v


def test_d_example():
    # d(x dy) = dx ^ dy
    dim = 2
    x, _ = Polynomial.variables(dim)
    om = DiffForm.term(x, (1,))
    assert de_rham(om) == DiffForm.term(Polynomial.one(dim), (0, 1))


def test_d_squared_zero():
    for _ in range(30):
        dim = rng.randint(2, 3)
        om = rand_form(dim, rng.randint(0, dim - 1), 2)
        assert de_rham(de_rham(om)).is_zero()


def test_contract_function_is_multiplication():
    dim = 2
    f = rand_poly(dim)
    om = rand_form(dim, 1, 2)
    assert contract(PolyVector.from_function(f), om) == om * f


def test_lie_derivative_example():
    # L_{d_x}(x dy) = dy
    dim = 2
    x, _ = Polynomial.variables(dim)
    om = DiffForm.term(x, (1,))
    out = lie_derivative(PolyVector.basis_vector(dim, 0), om)
    assert out == DiffForm.term(Polynomial.one(dim), (1,))


def test_evaluation_examples():
    dim = 2
    one = Polynomial.one(dim)
    dxdy = DiffForm.term(one, (0, 1))
    assert evaluate(dxdy, PolyVector.term(one, (0, 1))) == one
    assert evaluate(dxdy, PolyVector.term(one, (1, 0))) == -one
    f_dx = DiffForm.term(rand_poly(dim), (0,))
    assert evaluate(f_dx, PolyVector.basis_vector(dim, 1)).is_zero()


def test_eval_vs_contraction_convention():
    for _ in range(30):
        dim = rng.randint(2, 3)
        k = rng.randint(1, dim)
        om = rand_form(dim, k)
        xi = rand_pv(dim, k)
        sign = CONVENTIONS.eval_vs_iota_sign ** ((k * (k - 1) // 2) % 2)
        assert contract(xi, om) == DiffForm.from_function(evaluate(om, xi) * sign)


def test_module_law():
    for _ in range(25):
        dim = rng.randint(2, 3)
        k1, k2 = rng.randint(0, 2), rng.randint(0, 2)
        g1, g2 = rand_pv(dim, k1), rand_pv(dim, k2)
        om = rand_form(dim, rng.randint(0, dim))
        s = -1 if ((k1 - 1) * (k2 - 1)) % 2 else 1
        lhs = lie_derivative(g1, lie_derivative(g2, om)) - s * lie_derivative(
            g2, lie_derivative(g1, om)
        )
        rhs = DiffForm.zero(dim)
        for idx, coeff in schouten_bracket(g1, g2).items():
            rhs = rhs + lie_derivative(PolyVector(dim, {idx: coeff}), om)
        assert lhs == rhs
