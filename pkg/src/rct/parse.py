"""Text grammar for polynomials.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := RATIONAL | VAR | '(' expr ')' | '-' factor

VAR is [A-Za-z_][A-Za-z0-9_]*.  RATIONAL is an integer literal with an
optional /denominator, e.g. 7 or -3/2 (the sign comes from the grammar,
the slash from the token).  Multiplication is always explicit.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import SparsePoly


class PolyParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("rat"):
            lit = m.group("rat").replace(" ", "")
            tokens.append(("rat", Fraction(lit), m.start()))
        elif m.group("var"):
            tokens.append(("var", m.group("var"), m.start()))
        else:
            tokens.append(("op", m.group("op"), m.start()))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", pos)

    def parse(self) -> SparsePoly:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"trailing input {val!r}", pos)
        return p

    def expr(self) -> SparsePoly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            p = -self.term()
        else:
            p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> SparsePoly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> SparsePoly:
        p = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "rat" or val.denominator != 1 or val < 0:
                raise PolyParseError("exponent must be a non-negative integer", pos)
            p = p ** int(val)
        return p

    def atom(self) -> SparsePoly:
        kind, val, pos = self.take()
        if kind == "rat":
            return SparsePoly.constant(val)
        if kind == "var":
            return SparsePoly.variable(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise PolyParseError("expected a rational, variable, or parenthesis", pos)


def parse_poly(text: str) -> SparsePoly:
    """Parse the polynomial grammar into a SparsePoly (exact coefficients)."""
    return _Parser(text).parse()


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' (optionally signed) into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
