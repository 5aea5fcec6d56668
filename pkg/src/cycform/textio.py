"""Text syntax for polynomials, polyvectors, forms, and chains.

Polynomials: `2*x^2*y - 1/3*z`, variables x, y, z, w (dim <= 4) or x1, x2,
...  Polyvectors: coefficient followed by a wedge of directions, `x*y Dx^Dy`
(the unicode form `∂x^∂y` is accepted too).  Forms: `x dx^dy`.  Chains: slot
polynomials joined by the tensor token `(x)`, e.g. `x^2 (x) y*y`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .chains import HochschildChain
from .forms import DiffForm
from .polynomials import Polynomial, var_name
from .polyvectors import PolyVector


class ParseError(ValueError):
    pass


def _var_index(name: str, dim: int) -> int:
    names = [var_name(i, dim) for i in range(dim)]
    if name in names:
        return names.index(name)
    raise ParseError(f"unknown variable {name!r} in dimension {dim}")


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<deriv>(?:∂|D)(?P<dvar>x\d+|[xyzw]))"
    r"|(?P<form>d(?P<fvar>x\d+|[xyzw]))"
    r"|(?P<var>x\d+|[xyzw])"
    r"|(?P<op>[*^+()-]))"
)


def _tokenize(text: str, allow_deriv: bool, allow_form: bool):
    pos = 0
    out = []
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        pos = match.end()
        if match.group("number"):
            out.append(("num", Fraction(match.group("number"))))
        elif match.group("deriv"):
            if not allow_deriv:
                raise ParseError("direction symbol not allowed here")
            out.append(("deriv", match.group("dvar")))
        elif match.group("form") and allow_form:
            out.append(("formd", match.group("fvar")))
        elif match.group("form") and not allow_form:
            # in polynomial context `dx` is not meaningful
            raise ParseError(f"unexpected token {match.group('form')!r}")
        elif match.group("var"):
            out.append(("var", match.group("var")))
        else:
            out.append(("op", match.group("op")))
    return out


class _Parser:
    """Recursive descent over +, -, *, ^ with parentheses."""

    def __init__(self, tokens, dim: int):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def parse_sum(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            sign = -1
        elif tok == ("op", "+"):
            self.take()
        total = self.parse_product() * sign
        while True:
            tok = self.peek()
            if tok == ("op", "+"):
                self.take()
                total = total + self.parse_product()
            elif tok == ("op", "-"):
                self.take()
                total = total - self.parse_product()
            else:
                return total

    def parse_product(self) -> Polynomial:
        total = self.parse_power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                total = total * self.parse_power()
            elif tok is not None and tok[0] in ("num", "var") or tok == ("op", "("):
                # implicit product like `2x` or `x y`
                total = total * self.parse_power()
            else:
                return total

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        tok = self.peek()
        if tok == ("op", "^"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or exp_tok[1].denominator != 1:
                raise ParseError("exponent must be a nonnegative integer")
            return base ** int(exp_tok[1])
        return base

    def parse_atom(self) -> Polynomial:
        tok = self.take()
        if tok[0] == "num":
            return Polynomial.constant(self.dim, tok[1])
        if tok[0] == "var":
            return Polynomial.variable(self.dim, _var_index(tok[1], self.dim))
        if tok == ("op", "("):
            inner = self.parse_sum()
            closing = self.take()
            if closing != ("op", ")"):
                raise ParseError("missing closing parenthesis")
            return inner
        if tok == ("op", "-"):
            return -self.parse_atom()
        raise ParseError(f"unexpected token {tok!r}")


def parse_polynomial(text: str, dim: int) -> Polynomial:
    tokens = _tokenize(text, allow_deriv=False, allow_form=False)
    if not tokens:
        return Polynomial.zero(dim)
    parser = _Parser(tokens, dim)
    poly = parser.parse_sum()
    if parser.peek() is not None:
        raise ParseError(f"trailing tokens in polynomial {text!r}")
    return poly


def _split_top_terms(tokens):
    """Split a token list at top-level +/- (outside parentheses)."""
    groups = []
    current = []
    sign = 1
    depth = 0
    for tok in tokens:
        if tok == ("op", "("):
            depth += 1
        elif tok == ("op", ")"):
            depth -= 1
        if depth == 0 and tok[0] == "op" and tok[1] in "+-" and current:
            groups.append((sign, current))
            current = []
            sign = 1 if tok[1] == "+" else -1
            continue
        if depth == 0 and tok[0] == "op" and tok[1] in "+-" and not current:
            sign = sign if tok[1] == "+" else -sign
            continue
        current.append(tok)
    if current:
        groups.append((sign, current))
    return groups


def parse_polyvector(text: str, dim: int) -> PolyVector:
    tokens = _tokenize(text, allow_deriv=True, allow_form=False)
    out = PolyVector.zero(dim)
    for sign, group in _split_top_terms(tokens):
        split = next((i for i, t in enumerate(group) if t[0] == "deriv"), len(group))
        coeff_tokens, deriv_tokens = group[:split], group[split:]
        if coeff_tokens:
            parser = _Parser(coeff_tokens, dim)
            coeff = parser.parse_sum()
            if parser.peek() is not None:
                raise ParseError(f"bad coefficient in {text!r}")
        else:
            coeff = Polynomial.one(dim)
        indices = []
        expect_deriv = True
        for tok in deriv_tokens:
            if expect_deriv:
                if tok[0] != "deriv":
                    raise ParseError(f"expected direction symbol in {text!r}")
                indices.append(_var_index(tok[1], dim))
            else:
                if tok != ("op", "^"):
                    raise ParseError(f"expected ^ between directions in {text!r}")
            expect_deriv = not expect_deriv
        out = out + PolyVector.term(coeff * sign, tuple(indices))
    return out


def parse_form(text: str, dim: int) -> DiffForm:
    tokens = _tokenize(text, allow_deriv=False, allow_form=True)
    out = DiffForm.zero(dim)
    for sign, group in _split_top_terms(tokens):
        split = next((i for i, t in enumerate(group) if t[0] == "formd"), len(group))
        coeff_tokens, form_tokens = group[:split], group[split:]
        if coeff_tokens:
            parser = _Parser(coeff_tokens, dim)
            coeff = parser.parse_sum()
            if parser.peek() is not None:
                raise ParseError(f"bad coefficient in {text!r}")
        else:
            coeff = Polynomial.one(dim)
        indices = []
        expect_d = True
        for tok in form_tokens:
            if expect_d:
                if tok[0] != "formd":
                    raise ParseError(f"expected differential in {text!r}")
                indices.append(_var_index(tok[1], dim))
            else:
                if tok != ("op", "^"):
                    raise ParseError(f"expected ^ between differentials in {text!r}")
            expect_d = not expect_d
        out = out + DiffForm.term(coeff * sign, tuple(indices))
    return out


_TENSOR_SPLIT = re.compile(r"\(x\)")


def parse_chain(text: str, dim: int) -> HochschildChain:
    """Slot polynomials joined by the tensor token `(x)`."""
    slots = [s.strip() for s in _TENSOR_SPLIT.split(text)]
    if not slots or any(not s for s in slots):
        raise ParseError(f"malformed chain {text!r}")
    return HochschildChain.elementary([parse_polynomial(s, dim) for s in slots])
