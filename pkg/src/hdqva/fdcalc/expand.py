"""Expansion of rational functions in a modulus-ordered region, and residues."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

from .errors import UnexpandableFactor
from .poly import BIAS, MASK, Poly, codec, sort_vars
from .ratfun import RatFun, form_coef, form_vars
from .tseries import TSeries


@dataclass(frozen=True)
class ExpansionRegion:
    """Variables ordered from largest to smallest modulus, plus an exponent window."""

    order: Tuple[str, ...]
    window: Tuple[Tuple[str, int, int], ...]

    @staticmethod
    def of(order: Sequence[str], bound: int = 4, window: Optional[Mapping[str, Tuple[int, int]]] = None) -> "ExpansionRegion":
        order = tuple(order)
        win = dict(window or {})
        rows = []
        for v in order:
            lo, hi = win.get(v, (-bound, bound))
            if lo > hi:
                raise ValueError("empty window for %s" % v)
            rows.append((v, lo, hi))
        return ExpansionRegion(order, tuple(rows))

    def bounds(self, var: str) -> Tuple[int, int]:
        for v, lo, hi in self.window:
            if v == var:
                return lo, hi
        raise KeyError(var)

    def without(self, var: str) -> "ExpansionRegion":
        return ExpansionRegion(tuple(v for v in self.order if v != var), tuple(r for r in self.window if r[0] != var))

    def __str__(self) -> str:
        return "|" + "|>|".join(self.order) + "|"


class LaurentWindow:
    """The part of an expansion whose region exponents lie in the window."""

    __slots__ = ("poly", "region")

    def __init__(self, poly: Poly, region: ExpansionRegion):
        self.poly = poly
        self.region = region

    def coeff(self, exps: Mapping[str, int]) -> Poly:
        p = self.poly
        for v, e in exps.items():
            p = p.coeff(v, e)
        return p

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentWindow):
            return NotImplemented
        return self.region == other.region and self.poly == other.poly

    def __add__(self, other: "LaurentWindow") -> "LaurentWindow":
        return LaurentWindow(self.poly + other.poly, self.region)

    def __sub__(self, other: "LaurentWindow") -> "LaurentWindow":
        return LaurentWindow(self.poly - other.poly, self.region)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def restrict(self, region: ExpansionRegion) -> "LaurentWindow":
        return LaurentWindow(restrict(self.poly, region), region)

    def __str__(self) -> str:
        from .render import poly_str
        return poly_str(self.poly)


def restrict(p: Poly, region: ExpansionRegion) -> Poly:
    cd = p.codec
    checks = [(cd.shift[cd.index[v]], lo + BIAS, hi + BIAS) for v, lo, hi in region.window if v in cd.index]
    missing_ok = all(lo <= 0 <= hi for v, lo, hi in region.window if v not in cd.index)
    if not missing_ok:
        return Poly(p.vars, {})
    out = {}
    for k, c in p.terms.items():
        for s, lo, hi in checks:
            e = (k >> s) & MASK
            if e < lo or e > hi:
                break
        else:
            out[k] = c
    return Poly(p.vars, out)


def _pweight(p: Poly, pos: Dict[str, int]):
    cd = p.codec
    idx = [(cd.shift[cd.index[v]], w) for v, w in pos.items() if v in cd.index]

    def weight(k: int) -> int:
        return sum((((k >> s) & MASK) - BIAS) * w for s, w in idx)
    return weight


def _prune(p: Poly, weight, limit: int) -> Poly:
    return Poly(p.vars, {k: c for k, c in p.terms.items() if weight(k) <= limit})


def expand(f, region: ExpansionRegion) -> LaurentWindow:
    """Expand f (TSeries, RatFun or Poly) in the region; exact inside the window."""
    if isinstance(f, TSeries):
        f = f.f
    if isinstance(f, Poly):
        f = RatFun(f, ())
    pos = {v: i + 1 for i, v in enumerate(region.order)}
    used = set(f.num.vars)
    for form, _ in f.den:
        used.update(form_vars(form))
    vs = sort_vars(tuple(used) + region.order)
    num = f.num.align(vs)
    if not f.den:
        return LaurentWindow(restrict(num, region), region)
    weight = _pweight(num, pos)
    pmax = sum(pos[v] * region.bounds(v)[1] for v in region.order)
    base = Poly.const(1, vs)
    parts = []
    for form, e in f.den:
        fv = form_vars(form)
        if any(v not in pos for v in fv):
            raise UnexpandableFactor("form %s has variables outside the region %s" % (form, region))
        lead = min(fv, key=pos.get)
        c = form_coef(form, lead)
        base = base * Poly.monomial(vs, [(-e if v == lead else 0) for v in vs], mpq(c) ** -e)
        cd = codec(vs)
        unit_lead = 1 << cd.shift[cd.index[lead]]
        rest = Poly(vs, {cd.zero_key + (1 << cd.shift[cd.index[v]]) - unit_lead: mpq(d, c) for v, d in form if v != lead})
        parts.append((rest, e))
    bw = _pweight(base, pos)
    (kb,) = base.terms
    budget = pmax - min(weight(k) for k in num.terms) - bw(kb)
    if budget < 0:
        return LaurentWindow(Poly(vs, {}), region)
    total = Poly.const(1, vs)
    for rest, e in parts:
        series = Poly.const(1, vs)
        cur = Poly.const(1, vs)
        k = 0
        while True:
            k += 1
            cur = _prune(cur * rest, weight, budget)
            if not cur:
                break
            coef = (-1) ** k * comb(e + k - 1, k)
            series = series + cur.scale(coef)
        total = _prune(total * series, weight, budget)
    out = restrict(num * (total * base), region)
    return LaurentWindow(out, region)


def residue(f, var: str, region: Optional[ExpansionRegion] = None):
    """Coefficient of var^-1.

    LaurentWindow and Poly inputs are read off directly.  For a TSeries the
    result is exact: forms not involving ``var`` are kept, forms involving
    it are expanded in the region (``var`` must be the largest or the
    smallest variable of every such form, consistently).
    """
    if isinstance(f, LaurentWindow):
        return LaurentWindow(f.poly.coeff(var, -1), f.region.without(var))
    if isinstance(f, Poly):
        return f.coeff(var, -1)
    T = None
    if isinstance(f, TSeries):
        T = f.T
        f = f.f
    hit = [(form, e) for form, e in f.den if var in form_vars(form)]
    if not hit:
        out = RatFun.make(f.num.coeff(var, -1), dict(f.den))
        return TSeries.make(out, T) if T is not None else out
    if region is None:
        raise UnexpandableFactor("a region is needed to take this residue")
    pos = {v: i + 1 for i, v in enumerate(region.order)}
    for form, _ in hit:
        if any(v not in pos for v in form_vars(form)):
            raise UnexpandableFactor("form outside region")
    dom = [min(form_vars(form), key=pos.get) == var for form, _ in hit]
    if any(dom) and not all(dom):
        raise UnexpandableFactor("residue in %s is not a finite sum here" % var)
    keep = {form: e for form, e in f.den if var not in form_vars(form)}
    num = f.num
    terms = [(num, keep)]
    for form, e in hit:
        c_v = form_coef(form, var)
        new_terms = []
        if all(dom):
            # form^-e = (c z)^-e sum_k binom(-e,k) (rest/(c z))^k
            vs = sort_vars(num.vars + form_vars(form))
            rest = Poly.from_dict(form_vars(form), {tuple(1 if w == v else 0 for w, _ in form): d for v, d in form if v != var}).align(vs)
            for p, den in terms:
                smax = p.max_exp(var) - e
                kmax = smax + 1
                acc = Poly(p.vars, {})
                power = Poly.const(1, vs)
                for k in range(0, max(kmax, -1) + 1):
                    coef = mpq((-1) ** k * comb(e + k - 1, k)) * mpq(c_v) ** (-e - k)
                    acc = acc + (p.align(vs) * power).shift_exp(var, -e - k).scale(coef)
                    power = power * rest
                new_terms.append((acc, den))
        else:
            # form^-e = L0^-e sum_k binom(-e,k) (c_v z / L0)^k, L0 = form - c_v z
            rest = {v: d for v, d in form if v != var}
            for p, den in terms:
                kmax = -1 - p.min_exp(var)
                acc = RatFun.const(0)
                for k in range(0, max(kmax, -1) + 1):
                    coef = mpq((-1) ** k * comb(e + k - 1, k)) * mpq(c_v) ** k
                    piece = RatFun.make(p.shift_exp(var, k).scale(coef), dict(den)) * RatFun.inv_linear(rest, e + k)
                    acc = acc + piece
                new_terms.append((acc.num, dict(acc.den)))
        terms = new_terms
    total = RatFun.const(0)
    for p, den in terms:
        total = total + RatFun.make(p.coeff(var, -1), dict(den))
    return TSeries.make(total, T) if T is not None else total
