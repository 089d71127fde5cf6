"""Recursive-descent parser for polynomial expressions."""
from __future__ import annotations

import re
from typing import Sequence

from .poly import Poly
from .scalars import GAUSSIAN, I, MODES, RATIONAL

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, names, mode):
        self.toks = _tokenize(text)
        self.k = 0
        self.names = {n: j for j, n in enumerate(names)}
        self.n = len(names)
        self.mode = mode

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_op(self, ch):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            raise ParseError(f"expected {ch!r}", t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return p

    def expr(self):
        p = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if t[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                p = p * self.unary()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                q = self.unary()
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by nonzero constants", t[2])
                p = p.scale_div(q.constant_coefficient())
            else:
                return p

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.unary()
            return -p if t[1] == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a nonnegative integer literal", e[2])
            p = p ** e[1]
        return p

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return Poly.const(val, self.n)
        if kind == "id":
            if val in self.names:
                return Poly.var(self.names[val], self.n)
            if val == "i":
                if self.mode != GAUSSIAN:
                    raise ParseError("literal i is only allowed in gaussian mode", pos)
                return Poly.const(I, self.n)
            raise ParseError(f"unknown variable {val!r}", pos)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, names: Sequence[str], mode: str = RATIONAL) -> Poly:
    """Parse ``text`` into a :class:`Poly` over the variables ``names``.

    Accepts ``+ - * / ^``, parentheses, integer literals (fractions via ``/``)
    and, in gaussian mode, the imaginary unit ``i``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}")
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    if mode == GAUSSIAN and "i" in names:
        raise ValueError("'i' cannot be a variable name in gaussian mode")
    return _Parser(text, list(names), mode).parse()
