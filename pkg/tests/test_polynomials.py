from fractions import Fraction

import pytest

from cycform.polynomials import Polynomial
from cycform.textio import ParseError, parse_polynomial


def test_arithmetic_exact():
    x, y = Polynomial.variables(2)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero()
    assert (x * Fraction(1, 3)) * 3 == x


def test_no_zero_terms_stored():
    x, _ = Polynomial.variables(2)
    p = x - x
    assert p.is_zero()
    assert list(p.items()) == []


def test_diff():
    x, y = Polynomial.variables(2)
    p = x * x * y
    assert p.diff(0) == 2 * x * y
    assert p.diff(1) == x * x
    assert p.diff_multi((1, 1)) == 2 * x
    assert p.diff_multi((0, 2)).is_zero()


def test_eval():
    x, y = Polynomial.variables(2)
    p = 2 * x * x + y
    assert p.eval([Fraction(1, 2), 3]) == Fraction(7, 2)


def test_constant_handling():
    x, _ = Polynomial.variables(2)
    p = x + 5
    assert p.constant_coefficient() == 5
    assert p.without_constant_term() == x
    assert Polynomial.constant(2, 7).is_constant()
    assert not p.is_constant()


def test_pow():
    x, y = Polynomial.variables(2)
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x**0) == Polynomial.one(2)


def test_parse_round_trip():
    for text in ["2*x^2*y - y", "x + y + z", "1/2*x*y^3 - 3", "-x^2 + 2"]:
        p = parse_polynomial(text, 3)
        again = parse_polynomial(str(p), 3)
        assert p == again


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_polynomial("x +* y", 2)
    with pytest.raises(ParseError):
        parse_polynomial("q", 2)


def test_dimension_mismatch():
    x1 = Polynomial.variable(1, 0)
    x2 = Polynomial.variable(2, 0)
    with pytest.raises(ValueError):
        _ = x1 + x2
