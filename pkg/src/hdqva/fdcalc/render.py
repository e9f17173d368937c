"""Deterministic text forms.  The output reparses with ``parse_expr``."""
from __future__ import annotations

from typing import List, Sequence, Tuple

from gmpy2 import mpq

from .poly import Poly, var_key


def q_str(c: mpq) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(int(c.numerator))
    return "%d/%d" % (int(c.numerator), int(c.denominator))


def mono_str(vars: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append("%s^%d" % (v, e) if e > 0 else "%s^(%d)" % (v, e))
    return "*".join(parts)


def _term(c: mpq, m: str) -> Tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not m:
        return sign, q_str(a)
    if a == 1:
        return sign, m
    return sign, q_str(a) + "*" + m


def join_terms(terms: List[Tuple[str, str]]) -> str:
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, body in terms[1:]:
        if s == "+" and body.startswith("-"):
            s, body = "-", body[1:]
        out += (" - " if s == "-" else " + ") + body
    return out


def poly_str(p: Poly) -> str:
    return join_terms([_term(c, mono_str(p.vars, e)) for e, c in p.sorted_items()])


def form_str(form) -> str:
    out = ""
    for i, (v, c) in enumerate(form):
        if c < 0:
            out += "-"
        elif i:
            out += "+"
        if abs(c) != 1:
            out += "%d*" % abs(c)
        out += v
    return out


def _split_monomial_den(num: Poly):
    """num = poly / monomial with poly free of negative exponents."""
    mins = {v: num.min_exp(v) for v in num.vars}
    den = {v: -e for v, e in mins.items() if e < 0}
    if den:
        p = num
        for v, e in den.items():
            p = p.shift_exp(v, e)
        return p, den
    return num, {}


def ratfun_parts(num: Poly, den, prefix: str = "") -> Tuple[str, str]:
    """(sign, body) for prefix * num / den."""
    p, mden = _split_monomial_den(num)
    factors = []
    for v in sorted(mden, key=var_key):
        factors.append(v if mden[v] == 1 else "%s^%d" % (v, mden[v]))
    for f, e in den:
        factors.append("(%s)" % form_str(f) + ("^%d" % e if e != 1 else ""))
    dstr = ""
    if factors:
        dstr = "/" + (factors[0] if len(factors) == 1 else "(" + "*".join(factors) + ")")
    items = p.sorted_items()
    if len(items) == 1:
        (exps, c), = items
        m = mono_str(p.vars, exps)
        m = "*".join(x for x in (prefix, m) if x)
        sign, body = _term(c, m)
        return sign, body + dstr
    inner = join_terms([_term(c, mono_str(p.vars, e)) for e, c in items])
    if prefix:
        return "+", prefix + "*(" + inner + ")" + dstr
    if dstr:
        return "+", "(" + inner + ")" + dstr
    return "+", inner


def ratfun_str(f) -> str:
    if not f.num:
        return "0"
    s, body = ratfun_parts(f.num, f.den)
    return ("-" if s == "-" else "") + body


def tseries_str(s) -> str:
    terms = []
    for k, c in sorted(s.coeffs.items()):
        prefix = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
        terms.append(ratfun_parts(c.num, c.den, prefix))
    tail = "O(t^%d)" % (s.T + 1)
    if not terms:
        return tail
    return join_terms(terms + [("+", tail)])
