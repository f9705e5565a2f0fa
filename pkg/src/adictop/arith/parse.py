"""Text syntax for ground elements and polynomials.

Grammar (recursive descent)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor | factor)*     # juxtaposition multiplies
    factor := atom ('^' ['-'] (INT | '(' expr ')'))?
    atom   := INT | NAME | '(' expr ')'

``t`` always denotes the transcendental of Q(t); other names are looked up
in the caller's environment (polynomial variables, bound values).
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import Poly, RationalFunction, T
from .valuation import Valuation

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^(),=;]))")


def tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            # point at the first non-space character
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, env: dict):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[0] != "op" or tok[1] != value:
            raise ParseError(f"expected {value!r}", self.text, tok[2])
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("+", "-"):
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if rhs == 0:
                        raise self.error("division by zero", tok)
                    value = value / rhs
            elif tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "("):
                value = value * self.factor()
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.factor()

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            neg = False
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "-":
                self.take()
                neg = True
                nxt = self.peek()
            if nxt[0] == "int":
                self.take()
                e = nxt[1]
            elif nxt[0] == "op" and nxt[1] == "(":
                self.take()
                ev = self.expr()
                self.expect(")")
                ev = Fraction(ev) if isinstance(ev, (int, Fraction)) else ev
                if not isinstance(ev, Fraction) or ev.denominator != 1:
                    raise self.error("exponent must be an integer", nxt)
                e = int(ev)
            else:
                raise self.error("expected an integer exponent")
            e = -e if neg else e
            if e < 0 and base == 0:
                raise self.error("zero to a negative power", tok)
            return base ** e
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return Fraction(tok[1])
        if tok[0] == "name":
            name = tok[1]
            if name in self.env:
                return self.env[name]
            if name == "t":
                return T
            raise ParseError(f"unknown name {name!r}", self.text, tok[2])
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError("expected a number, name or '('", self.text, tok[2])


def _normalize(x):
    if isinstance(x, RationalFunction) and x.is_constant():
        return x.constant_value()
    return x


def parse_element(text: str, env: dict | None = None):
    """Parse an element of Q or Q(t).  Constants come back as Fraction."""
    if not isinstance(text, str):
        return as_element(text)
    env = {k: as_element(v) if isinstance(v, (str, int)) else v for k, v in (env or {}).items()}
    return _normalize(_Parser(text, env).parse())


def evaluate(text: str, env: dict | None = None):
    """Evaluate an expression whose free names are bound in ``env``.

    Values in ``env`` may themselves be element strings.
    """
    return parse_element(text, env)


def parse_poly(text: str, variables):
    """Parse a polynomial in the given variable names (coefficients in Q(t))."""
    from .mpoly import MPoly

    variables = tuple(variables)
    env = {v: MPoly.generator(variables, v) for v in variables}
    value = _Parser(text, env).parse()
    if not isinstance(value, MPoly):
        value = MPoly.constant(variables, value)
    return value


def parse_system(text: str, variables):
    """Semicolon-separated polynomials."""
    return [parse_poly(part, variables) for part in text.split(";") if part.strip()]


def as_element(x):
    """Coerce ints, strings and polynomials to a canonical ground element."""
    if isinstance(x, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Poly):
        return _normalize(RationalFunction(x))
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, str):
        return parse_element(x)
    raise TypeError(f"cannot interpret {x!r} as an element of Q or Q(t)")


def format_element(x) -> str:
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, RationalFunction):
        return str(x)
    raise TypeError(f"cannot format {x!r}")


def parse_valuation(text: str) -> Valuation:
    """``p5``, ``5``, ``t``, ``pi(t^2+1)`` or ``inf``."""
    s = text.strip()
    if s in ("t", "t-adic"):
        return Valuation.tadic()
    if s in ("inf", "infinity"):
        return Valuation("inf")
    m = re.fullmatch(r"p?(\d+)(?:-adic)?", s)
    if m:
        return Valuation.padic(int(m.group(1)))
    m = re.fullmatch(r"pi\((.*)\)", s)
    if m:
        f = parse_element(m.group(1))
        rf = RationalFunction._coerce(f)
        if not rf.is_polynomial():
            raise ParseError("pi(...) needs a polynomial", text, 3)
        return Valuation.pi_adic(rf.num)
    raise ParseError(f"unknown valuation {text!r}", text, 0)
