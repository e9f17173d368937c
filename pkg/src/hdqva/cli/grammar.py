"""State expressions for the command line (see docs/grammar.md).

    state   := term (('+' | '-') term)*
    term    := ['-'] product
    product := factor (['*'] factor)*
    factor  := 'D' ['^' INT] factor | atom ['^' INT]
    atom    := INT ['/' INT] | 'h' | 'g' INT | 'E(' ['-'] INT ')' | '(' state ')'
"""
from __future__ import annotations

import re
from typing import List, Tuple

from gmpy2 import mpq

from ..fdcalc.render import q_str
from ..hopf import VElem, VMono, d_action, mono_str, multiply

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<g>g\d+)|(?P<name>[EhD])|(?P<op>[-+*/^()]))")


class StateSyntaxError(ValueError):
    pass


def tokenize(text: str) -> List[Tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].lstrip()
            raise StateSyntaxError("unexpected %r at position %d" % (rest[:1], len(text) - len(rest)))
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.text = text

    def peek(self, value=None):
        if self.i >= len(self.toks):
            return None
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            return None
        return tok

    def take(self, value=None):
        tok = self.peek(value)
        if tok is None:
            want = repr(value) if value else "more input"
            raise StateSyntaxError("expected %s in %r" % (want, self.text))
        self.i += 1
        return tok

    def integer(self) -> int:
        kind, v = self.take()
        if kind != "int":
            raise StateSyntaxError("expected an integer, got %r" % v)
        return int(v)

    def state(self) -> VElem:
        out = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> VElem:
        neg = False
        if self.peek("-"):
            self.take()
            neg = True
        v = self.product()
        return -v if neg else v

    def _starts_factor(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok[0] in ("int", "g", "name") or tok[1] == "(")

    def product(self) -> VElem:
        out = self.factor()
        while True:
            if self.peek("*"):
                self.take()
            elif not self._starts_factor():
                return out
            out = _mul(out, self.factor())

    def factor(self) -> VElem:
        if self.peek("D"):
            self.take()
            k = 1
            if self.peek("^"):
                self.take()
                k = self.integer()
            return d_action(self.factor(), k)
        base = self.atom()
        if self.peek("^"):
            self.take()
            k = self.integer()
            out = VElem.one()
            for _ in range(k):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> VElem:
        kind, v = self.take()
        if kind == "int":
            c = mpq(int(v))
            if self.peek("/"):
                self.take()
                d = self.integer()
                if d == 0:
                    raise StateSyntaxError("division by zero")
                c = c / d
            return VElem.one().scale(c)
        if kind == "g":
            return VElem.mono(_g(int(v[1:])))
        if v == "h":
            return VElem.mono(_g(0))
        if v == "E":
            self.take("(")
            sign = 1
            if self.peek("-"):
                self.take()
                sign = -1
            m = sign * self.integer()
            self.take(")")
            return VElem.mono(VMono(m, ()))
        if v == "(":
            out = self.state()
            self.take(")")
            return out
        raise StateSyntaxError("unexpected %r" % v)


def _g(n: int) -> VMono:
    return VMono(0, (0,) * n + (1,))


def _mul(a: VElem, b: VElem) -> VElem:
    return multiply(a, b)


def parse_state(text: str) -> VElem:
    p = _Parser(text)
    if not p.toks:
        raise StateSyntaxError("empty state expression")
    out = p.state()
    if p.i != len(p.toks):
        raise StateSyntaxError("trailing input %r" % p.toks[p.i][1])
    return out


def format_state(v: VElem) -> str:
    """Coefficients that are constant through the truncation order print bare."""
    if not v.terms:
        return "0"
    parts = []
    for mono, c in v.items():
        ms = mono_str(mono)
        if hasattr(c, "is_const") and c.is_const():
            c = c.f.num.const_value()
        if isinstance(c, mpq) or isinstance(c, int):
            if c == 1:
                s = ms
            elif c == -1:
                s = "-" + ms
            else:
                s = q_str(mpq(c)) if ms == "1" else "%s*%s" % (q_str(mpq(c)), ms)
        else:
            s = "[%s]*%s" % (c, ms)
        parts.append(s)
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out
