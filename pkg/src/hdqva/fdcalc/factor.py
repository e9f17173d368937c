"""Bridge to sympy for factoring numerators into linear factors.

Only used off the hot path: inverting a non-monomial numerator and
reading user-supplied expressions.
"""
from __future__ import annotations

from typing import Dict, Tuple

import sympy
from gmpy2 import mpq

from .errors import NotInvertible
from .poly import Poly, sort_vars
from .ratfun import Form, normalize_form


def poly_to_sympy(p: Poly):
    syms = [sympy.Symbol(v) for v in p.vars]
    expr = sympy.Integer(0)
    for exps, c in p.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, exps):
            if e:
                term *= s ** e
        expr += term
    return expr


def sympy_to_poly(expr, vars) -> Poly:
    """Laurent polynomial expression in the given symbols to Poly."""
    expr = sympy.expand(expr)
    syms = [sympy.Symbol(v) for v in vars]
    data: Dict[Tuple[int, ...], mpq] = {}
    for term in sympy.Add.make_args(expr):
        c, rest = term.as_coeff_Mul()
        exps = [0] * len(syms)
        for f in sympy.Mul.make_args(rest):
            if f == 1:
                continue
            b, e = f.as_base_exp()
            if b not in syms or not e.is_integer:
                raise ValueError("not a Laurent monomial: %s" % term)
            exps[syms.index(b)] += int(e)
        c = sympy.Rational(c)
        key = tuple(exps)
        data[key] = data.get(key, mpq(0)) + mpq(int(c.p), int(c.q))
    return Poly.from_dict(tuple(vars), data)


def classify_linear(expr, allowed) -> Tuple[mpq, str, object]:
    """Return normalize_form output for a homogeneous linear expression."""
    poly = sympy.Poly(expr, *[sympy.Symbol(v) for v in allowed])
    if poly.total_degree() != 1:
        raise NotInvertible("factor %s is not linear" % expr)
    coefs: Dict[str, int] = {}
    for monom, c in poly.terms():
        if sum(monom) != 1:
            raise NotInvertible("factor %s is not homogeneous linear" % expr)
        c = sympy.Rational(c)
        if c.q != 1:
            raise NotInvertible("non-integer coefficient in %s" % expr)
        coefs[allowed[monom.index(1)]] = int(c.p)
    return normalize_form(coefs)


def factor_poly(p: Poly):
    """Factor a Laurent polynomial as c * monomial * prod(form^e).

    Raises NotInvertible if some irreducible factor is not a linear form.
    """
    vars = p.trim().vars
    if not vars:
        return p.const_value(), {}, {}
    shift = {v: p.min_exp(v) for v in vars}
    expr = poly_to_sympy(p.trim())
    c, factors = sympy.factor_list(sympy.together(expr * sympy.Mul(*[sympy.Symbol(v) ** -shift[v] for v in vars])))
    const = mpq(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
    mono: Dict[str, int] = {v: shift[v] for v in vars if shift[v]}
    forms: Dict[Form, int] = {}
    for f, e in factors:
        s, kind, payload = classify_linear(f, vars)
        const *= s ** e
        if kind == "mono":
            mono[payload] = mono.get(payload, 0) + e
        elif kind == "form":
            forms[payload] = forms.get(payload, 0) + e
    mono = {v: e for v, e in mono.items() if e}
    return const, dict(sorted(mono.items(), key=lambda ve: sort_vars(mono).index(ve[0]))), forms
