"""Reading rational expressions in z-type variables and t into TSeries."""
from __future__ import annotations

import re

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from gmpy2 import mpq

from .poly import Poly
from .ratfun import RatFun
from .tseries import TSeries

_TRANSFORMS = standard_transformations + (convert_xor,)
_BIGO = re.compile(r"\s*[+]\s*O\(t\^\{?(\d+)\}?\)\s*$|^\s*O\(t\^\{?(\d+)\}?\)\s*$")


def _names(text: str):
    return sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)) - {"O"})


def sympy_to_tseries(expr, T: int) -> TSeries:
    if expr.is_Symbol:
        return TSeries.from_poly(Poly.var(expr.name), T)
    if expr.is_Rational:
        return TSeries.const(mpq(int(expr.p), int(expr.q)), T)
    if expr.is_Add:
        out = TSeries.zero(T)
        for a in expr.args:
            out = out + sympy_to_tseries(a, T)
        return out
    if expr.is_Mul:
        out = TSeries.one(T)
        for a in expr.args:
            out = out * sympy_to_tseries(a, T)
        return out
    if expr.is_Pow:
        base, e = expr.args
        if not e.is_Integer:
            raise ValueError("only integer powers are supported: %s" % expr)
        e = int(e)
        if base.is_Symbol:
            return TSeries.from_poly(Poly.var(base.name, e), T)
        return sympy_to_tseries(base, T) ** e
    raise ValueError("unsupported expression: %s" % expr)


def parse_tseries(text: str, T: int) -> TSeries:
    """Parse e.g. ``"(z1-z2)/(1-t*z2/z1)"``; a trailing ``+ O(t^k)`` is accepted."""
    m = _BIGO.search(text)
    if m:
        text = text[: m.start()] or "0"
    local = {n: sympy.Symbol(n) for n in _names(text)}
    expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=False)
    return sympy_to_tseries(expr, T)


def parse_ratfun(text: str) -> RatFun:
    """Parse a t-free rational expression."""
    if "t" in _names(text):
        raise ValueError("t is not allowed here")
    return parse_tseries(text, 0).coeff(0)
