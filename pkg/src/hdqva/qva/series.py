"""V-valued Laurent polynomials that are exact inside a box of exponents.

A ``VSeries`` maps basis monomials to Laurent polynomials (``Poly``) in
formal variables and t.  Every producer documents the box (per-variable
upper exponent bound) inside which its coefficients are exact; lower
exponents are bounded by construction, so "the box" is only ever an
upper bound per variable.
"""
from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Tuple

from gmpy2 import mpq

from ..bichar import BicharBase
from ..fdcalc import ExpansionRegion, Poly, RatFun, TSeries, TVAR, expand
from ..fdcalc.ratfun import form_vars
from ..hopf import VElem, VMono, _add_into, mono_coproduct, mono_dpow, mono_key, mono_mul, mono_str

LOW = -60  # lower window edge for expansions; never binding at desk scale


def laurent(c) -> Poly:
    """A coefficient without linear-form denominators as a Laurent Poly."""
    if isinstance(c, Poly):
        return c
    if isinstance(c, TSeries):
        c = c.f
    if isinstance(c, RatFun):
        if c.den:
            raise ValueError("coefficient is not a Laurent polynomial: %r" % (c,))
        return c.num
    return Poly.const(c)


def tmul(p: Poly, q: Poly, T: int) -> Poly:
    return p.mul_trunc(q, TVAR, T) if p.vars and q.vars and p.vars[-1] == TVAR == q.vars[-1] else (p * q).truncate(TVAR, T)


class VSeries:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[VMono, Poly]] = None):
        self.terms = {k: p for k, p in (terms or {}).items() if p}

    @staticmethod
    def of(x) -> "VSeries":
        if isinstance(x, VSeries):
            return x
        if isinstance(x, VMono):
            return VSeries({x: Poly.const(1)})
        return VSeries({k: laurent(c) for k, c in x.terms.items()})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "VSeries") -> "VSeries":
        out = dict(self.terms)
        for k, p in other.terms.items():
            _add_into(out, k, p)
        return VSeries(out)

    def __neg__(self) -> "VSeries":
        return VSeries({k: -p for k, p in self.terms.items()})

    def __sub__(self, other: "VSeries") -> "VSeries":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VSeries):
            return NotImplemented
        return not (self - other).terms

    def mul(self, p: Poly, T: int) -> "VSeries":
        return VSeries({k: tmul(c, p, T) for k, c in self.terms.items()})

    def restrict(self, top: Mapping[str, int], cap: Optional[int] = None, T: Optional[int] = None) -> "VSeries":
        out = {}
        for k, p in self.terms.items():
            if cap is not None and k.weight > cap:
                continue
            for v, hi in top.items():
                p = p.truncate(v, hi)
            if T is not None:
                p = p.truncate(TVAR, T)
            out[k] = p
        return VSeries(out)

    def coeff(self, var: str, e: int) -> "VSeries":
        return VSeries({k: p.coeff(var, e).trim() for k, p in self.terms.items()})

    def min_exp(self, var: str) -> Optional[int]:
        vals = [p.min_exp(var) for p in self.terms.values() if var in p.used_vars()]
        zero = [p for p in self.terms.values() if var not in p.used_vars()]
        if zero:
            vals.append(0)
        return min(vals) if vals else None

    def map(self, fn) -> "VSeries":
        return VSeries({k: fn(p) for k, p in self.terms.items()})

    def to_velem(self, T: int) -> VElem:
        return VElem({k: TSeries.from_poly(p.trim(), T) for k, p in self.terms.items()})

    def diff_report(self, other: "VSeries"):
        d = self - other
        if not d.terms:
            return None
        k = min(d.terms, key=mono_key)
        return mono_str(k), self.terms.get(k), other.terms.get(k)

    def __str__(self) -> str:
        from ..fdcalc.render import poly_str
        if not self.terms:
            return "0"
        return " + ".join("[%s]*%s" % (poly_str(p), mono_str(k)) for k, p in self.items())

    __repr__ = __str__


class YLaurent:
    """Values r_{z,0}(a (x) b) as Laurent polynomials in z, cached."""

    def __init__(self, ybichar: BicharBase):
        self.y = ybichar
        self.var = ybichar.varpair[0]
        self._memo: Dict[Tuple[VMono, VMono], Poly] = {}

    def __call__(self, a: VMono, b: VMono) -> Poly:
        key = (a, b)
        p = self._memo.get(key)
        if p is None:
            p = laurent(self.y.eval_mono(a, b))
            self._memo[key] = p
        return p

    def low(self, a: VMono, b: VMono) -> Optional[int]:
        """Lowest z-exponent of Y(a,z)b (None if it vanishes identically)."""
        out = None
        for a1, a2, _ in mono_coproduct(a):
            for b1, b2, _ in mono_coproduct(b):
                p = self(a2, b2)
                if p:
                    e = p.min_exp(self.var)
                    out = e if out is None else min(out, e)
        return out


def y_series(yl: YLaurent, A, B, top: int, T: int, cap: Optional[int] = None) -> Tuple[VSeries, Optional[int]]:
    """Y(A, z)B with z = yl.var, exact for z-exponents <= top.

    A and B may carry Laurent coefficients in other variables.  With a
    weight ``cap`` only output monomials of weight <= cap are produced
    (those are exact).  Returns the series and the true lowest z-exponent.
    """
    var = yl.var
    A, B = VSeries.of(A), VSeries.of(B)
    out: Dict[VMono, Poly] = {}
    low = None
    for a, ca in A.terms.items():
        for v, cv in B.terms.items():
            cc = tmul(ca, cv, T)
            m = abs(a.m + v.m)
            groups: Dict[Tuple[VMono, VMono], Poly] = {}
            for a1, a2, x in mono_coproduct(a):
                for v1, v2, y in mono_coproduct(v):
                    p = yl(a2, v2)
                    if not p:
                        continue
                    e = p.min_exp(var)
                    low = e if low is None else min(low, e)
                    _add_into(groups, (a1, v1), p.scale(x * y))
            for (a1, v1), p in groups.items():
                emin = p.min_exp(var)
                kmax = top - emin
                if cap is not None:
                    kmax = min(kmax, cap - m - a1.gweight - v1.gweight)
                if kmax < 0:
                    continue
                q = tmul(p, cc, T).truncate(var, top)
                for k in range(kmax + 1):
                    qk = q.shift_exp(var, k).truncate(var, top) if k else q
                    if not qk:
                        continue
                    for d, c in mono_dpow(a1, k):
                        _add_into(out, mono_mul(d, v1), qk.scale(c))
    return VSeries(out), low


# windowed products with expansions of rational functions ----------------
def degree_range(f: TSeries, vars: Iterable[str]) -> Tuple[int, int]:
    """Range of total degree in ``vars`` over the terms of f (forms count -1)."""
    vars = tuple(vars)
    rf = f.f
    num = rf.num
    cd = num.codec
    idx = [cd.index[v] for v in vars if v in cd.index]
    shift = sum(e for _, e in rf.den)
    degs = [sum(cd.exp(k, i) for i in idx) - shift for k in num.terms]
    if not degs:
        return 0, 0
    return min(degs), max(degs)


def small_low(f: TSeries, small: str) -> int:
    """Lowest exponent of ``small`` in any expansion where it is the smallest variable."""
    rf = f.f
    e = rf.num.min_exp(small)
    for form, k in rf.den:
        if form_vars(form) == (small,):
            e -= k
    return e


def expand_window(f: TSeries, order: Tuple[str, ...], window: Mapping[str, Tuple[int, int]]) -> Poly:
    region = ExpansionRegion.of(order, window=window)
    return expand(f, region).poly


class WindowProduct:
    """Bounds for P * i_{big;small} R, exact in the box {big <= hb, small <= hs}.

    P is built as an outer vertex operator in ``big`` applied to an inner
    one in ``small``; it must be exact for small <= ``inner_top`` and
    big <= ``outer_top(p_small_low)``.
    """

    def __init__(self, R: TSeries, big: str, small: str, hb: int, hs: int):
        self.R, self.big, self.small, self.hb, self.hs = R, big, small, hb, hs
        self.rs = small_low(R, small)
        self.dmin, self.dmax = degree_range(R, (big, small))

    @property
    def inner_top(self) -> int:
        return self.hs - self.rs

    def outer_top(self, p_small_low: int) -> int:
        return self.hb - (self.dmin - (self.hs - p_small_low))

    def times(self, P: VSeries, p_small_low: Optional[int], T: int) -> VSeries:
        if not P or p_small_low is None:
            return VSeries()
        s_hi = self.hs - p_small_low
        if s_hi < self.rs:
            return VSeries()
        b_lo = self.dmin - s_hi
        b_hi = self.dmax - self.rs
        Rp = expand_window(self.R, (self.big, self.small), {self.big: (b_lo, b_hi), self.small: (self.rs, s_hi)})
        if not Rp:
            return VSeries()
        return P.mul(Rp, T).restrict({self.big: self.hb, self.small: self.hs})


def expand_velem(x: VElem, order: Tuple[str, ...], top: Mapping[str, int], cap: Optional[int] = None) -> VSeries:
    """Region expansion of a V-valued rational element, exact in the box."""
    window = {v: (LOW, top[v]) for v in order}
    out = {}
    for k, c in x.terms.items():
        if cap is not None and k.weight > cap:
            continue
        out[k] = expand_window(c, order, window)
    return VSeries(out)


def scalar(c, T: int) -> TSeries:
    return c if isinstance(c, TSeries) else TSeries.const(mpq(c), T)
