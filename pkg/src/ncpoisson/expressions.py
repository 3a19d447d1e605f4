"""Tiny expression language for bracket operands.

Grammar (standard precedence, left associative):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER | NAME | '(' expr ')' | '-' atom

NUMBER is an exact rational p or p/q; NAME must be a generator of the
target algebra.  '*' is the (noncommutative) word product.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .graded_core import Element, FreeDGAlgebra


class ExpressionError(Exception):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos]!r} at position {pos}")
        if m.group("number"):
            out.append(("number", m.group("number")))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, alg: FreeDGAlgebra, text: str):
        self.alg = alg
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ExpressionError(f"expected {op!r}, found {val or 'end of input'!r}")

    def parse(self) -> Element:
        e = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionError(f"trailing input at {self.peek()[1]!r}")
        return e

    def expr(self) -> Element:
        out = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Element:
        out = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            out = self.alg.multiply(out, self.factor())
        return out

    def factor(self) -> Element:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "number" or "/" in val:
                raise ExpressionError("exponent must be a nonnegative integer")
            power = int(val)
            out = self.alg.one()
            for _ in range(power):
                out = self.alg.multiply(out, base)
            return out
        return base

    def atom(self) -> Element:
        kind, val = self.take()
        if kind == "number":
            return self.alg.one().scale(Fraction(*map(int, val.split("/"))) if "/" in val else Fraction(int(val)))
        if kind == "name":
            if val not in self.alg.index:
                raise ExpressionError(f"unknown generator {val!r}")
            return self.alg.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "op" and val == "-":
            return -self.atom()
        raise ExpressionError(f"unexpected token {val or 'end of input'!r}")


def parse_expression(alg: FreeDGAlgebra, text: str) -> Element:
    return _Parser(alg, text).parse()
