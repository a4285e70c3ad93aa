"""Text syntax for polynomials.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*     # "/" only by a nonzero constant
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

``NAME`` must be one of the ring's variable names.  Rationals are written
as quotients of integers, e.g. ``3/4*x^2 - y + 1``.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .poly import Polynomial, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str, line):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, start + 1)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, line):
        self.ring = ring
        self.line = line
        self.tokens = _tokenize(text, line)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            self.fail(f"expected {want}, found {got}", tok)
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.line, tok[2] + 1)

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op[0] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division only by a nonzero constant", op)
                value = value.scale(1 / rhs.constant_value())
        return value

    def unary(self) -> Polynomial:
        if self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return self.ring.const(int(tok[1]))
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.ring.names:
                self.fail(f"unknown variable {tok[1]!r}", tok)
            return self.ring.var(tok[1])
        if tok[0] == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        self.fail("expected a number, variable, or '('", tok)


def parse_polynomial(text: str, ring: Ring, line: int | None = None) -> Polynomial:
    parser = _Parser(text, ring, line)
    if parser.peek()[0] == "end":
        parser.fail("empty polynomial")
    value = parser.expr()
    parser.take("end")
    return value
