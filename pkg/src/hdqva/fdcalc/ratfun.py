"""Rational functions whose denominators are products of linear forms.

Single-variable denominators are stored as negative exponents of the
Laurent numerator.  The remaining denominator factors are homogeneous
integer linear forms with at least two terms, coprime coefficients and a
positive leading coefficient (leading in the fixed variable order).  A
value is kept in lowest terms, so equality is structural.
"""
from __future__ import annotations

from functools import lru_cache, reduce
from math import gcd
from typing import Dict, Mapping, Optional, Tuple

from gmpy2 import mpq

from .errors import PoleAtSubstitution
from .poly import Poly, codec, sort_vars, to_q, var_key

Form = Tuple[Tuple[str, int], ...]
_P = (1 << 61) - 1


def normalize_form(coefs: Mapping[str, int]):
    """Split a linear form into (scalar, kind, payload).

    kind is 'zero', 'mono' (payload = variable name) or 'form'
    (payload = canonical Form).
    """
    items = sorted(((v, int(c)) for v, c in coefs.items() if c), key=lambda vc: var_key(vc[0]))
    if not items:
        return mpq(0), "zero", None
    if len(items) == 1:
        return mpq(items[0][1]), "mono", items[0][0]
    g = reduce(gcd, (abs(c) for _, c in items))
    if items[0][1] < 0:
        g = -g
    return mpq(g), "form", tuple((v, c // g) for v, c in items)


def form_vars(form: Form) -> Tuple[str, ...]:
    return tuple(v for v, _ in form)


def form_coef(form: Form, var: str) -> int:
    for v, c in form:
        if v == var:
            return c
    return 0


@lru_cache(maxsize=65536)
def form_poly(form: Form, vars: Tuple[str, ...], power: int = 1) -> Poly:
    cd = codec(vars)
    lin = Poly(vars, {cd.zero_key + (1 << cd.shift[cd.index[v]]): mpq(c) for v, c in form})
    return lin ** power


def _pt(var: str, salt: int) -> int:
    h = 1469598103934665603 + salt * 1099511628211
    for ch in var:
        h = ((h ^ ord(ch)) * 1099511628211) & ((1 << 64) - 1)
    return h % _P or 7


def _vanishes_on(num: Poly, form: Form) -> bool:
    """Cheap necessary test for divisibility of num by the form."""
    lead, lc = form[0]
    for salt in range(3):
        point = {v: _pt(v, salt) for v in num.vars}
        s = 0
        for v, c in form[1:]:
            s += c * point.get(v, _pt(v, salt))
        x = (-s * pow(lc, -1, _P)) % _P
        if x == 0:
            continue
        point[lead] = x
        for v, _ in form:
            point.setdefault(v, _pt(v, salt))
        try:
            return num.eval_mod(point, _P) == 0
        except ValueError:
            continue
    return True


def div_form(num: Poly, form: Form) -> Optional[Poly]:
    """Exact quotient num / form, or None when it does not divide."""
    vs = sort_vars(num.vars + form_vars(form))
    num = num.align(vs)
    lead, lc = form[0]
    cd = codec(vs)
    rest = Poly(vs, {cd.zero_key + (1 << cd.shift[cd.index[v]]): mpq(c) for v, c in form[1:]})
    parts = num.split(lead)
    if not parts:
        return num
    hi, lo = max(parts), min(parts)
    inv = mpq(1, lc)
    q: Dict[int, Poly] = {}
    prev = None  # q_j
    for j in range(hi, lo, -1):
        nj = parts.get(j, Poly(vs, {}))
        if prev is not None:
            nj = nj - rest * prev
        qj1 = nj.scale(inv)
        q[j - 1] = qj1
        prev = qj1
    last = parts.get(lo, Poly(vs, {}))
    if prev is not None:
        last = last - rest * prev
    if last:
        return None
    out = Poly(vs, {})
    for j, p in q.items():
        if p:
            out = out + p.shift_exp(lead, j)
    return out


def _den_key(item):
    form, _ = item
    return (len(form), [var_key(v) for v, _ in form], [-c for _, c in form])


class RatFun:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Tuple[Tuple[Form, int], ...] = ()):
        # trusted: already canonical
        self.num = num
        self.den = den
        self._hash = None

    # construction
    @staticmethod
    def make(num: Poly, den: Mapping[Form, int]) -> "RatFun":
        den = {f: e for f, e in den.items() if e}
        if not num:
            return RatFun(num, ())
        for f in list(den):
            if den[f] < 0:
                num = num * form_poly(f, sort_vars(num.vars + form_vars(f)), -den.pop(f))
        for f in list(den):
            e = den[f]
            while e and _vanishes_on(num, f):
                q = div_form(num, f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                den[f] = e
            else:
                del den[f]
        vs = num.vars
        extra = [v for f in den for v in form_vars(f) if v not in vs]
        if extra:
            num = num.align(sort_vars(vs + tuple(extra)))
        return RatFun(num, tuple(sorted(den.items(), key=_den_key)))

    @staticmethod
    def from_poly(p: Poly) -> "RatFun":
        return RatFun(p, ())

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c), ())

    @staticmethod
    def linear(coefs: Mapping[str, int]) -> "RatFun":
        s, kind, payload = normalize_form(coefs)
        if kind == "zero":
            return RatFun(Poly.zero(), ())
        if kind == "mono":
            return RatFun(Poly.var(payload, 1, s), ())
        return RatFun(form_poly(payload, sort_vars(form_vars(payload))).scale(s), ())

    @staticmethod
    def inv_linear(coefs: Mapping[str, int], power: int = 1) -> "RatFun":
        """(linear form)^(-power)."""
        s, kind, payload = normalize_form(coefs)
        if kind == "zero":
            raise ZeroDivisionError("inverse of the zero form")
        if kind == "mono":
            return RatFun(Poly.var(payload, -power, s ** -power), ())
        vs = sort_vars(form_vars(payload))
        return RatFun(Poly.const(s ** -power, vs), ((payload, power),))

    # views
    @property
    def vars(self) -> Tuple[str, ...]:
        return self.num.vars

    def den_dict(self) -> Dict[Form, int]:
        return dict(self.den)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_laurent(self) -> bool:
        return not self.den

    def den_poly(self, vars: Tuple[str, ...]) -> Poly:
        out = Poly.const(1, vars)
        for f, e in self.den:
            out = out * form_poly(f, vars, e)
        return out

    # arithmetic
    def __add__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if not self.den and not other.den:
            return RatFun(self.num + other.num, ())
        if self.den == other.den:
            return RatFun.make(self.num + other.num, dict(self.den))
        da, db = dict(self.den), dict(other.den)
        common = dict(da)
        for f, e in db.items():
            if e > common.get(f, 0):
                common[f] = e
        vs = sort_vars(self.num.vars + other.num.vars + tuple(v for f in common for v in form_vars(f)))
        na = self.num.align(vs)
        nb = other.num.align(vs)
        for f, e in common.items():
            ea, eb = e - da.get(f, 0), e - db.get(f, 0)
            if ea:
                na = na * form_poly(f, vs, ea)
            if eb:
                nb = nb * form_poly(f, vs, eb)
        return RatFun.make(na + nb, common)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return (-self) + other

    def scale(self, c) -> "RatFun":
        c = to_q(c)
        if not c:
            return RatFun(Poly.zero(), ())
        return RatFun(self.num.scale(c), self.den)

    def __mul__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            if isinstance(other, Poly):
                other = RatFun(other, ())
            else:
                return self.scale(other)
        if not self.num or not other.num:
            return RatFun(Poly.zero(), ())
        if not self.den and not other.den:
            return RatFun(self.num * other.num, ())
        den = dict(self.den)
        for f, e in other.den:
            den[f] = den.get(f, 0) + e
        return RatFun.make(self.num * other.num, den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        if not isinstance(other, RatFun):
            return self.scale(1 / to_q(other))
        return self * other.inverse()

    def inverse(self) -> "RatFun":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        if self.num.is_monomial():
            num = self.num ** -1
            vs = sort_vars(num.vars + tuple(v for f, _ in self.den for v in form_vars(f)))
            return RatFun(num.align(vs) * self.den_poly(vs), ())
        from .factor import factor_poly
        c, mono, forms = factor_poly(self.num)
        base = RatFun(Poly.from_dict(tuple(mono), {tuple(-e for e in mono.values()): 1 / c}) if mono else Poly.const(1 / c), ())
        vs = sort_vars(base.num.vars + tuple(v for f, _ in self.den for v in form_vars(f)))
        num = base.num.align(vs) * self.den_poly(vs)
        return RatFun.make(num, {f: e for f, e in forms.items()})

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFun.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            if isinstance(other, (int, mpq)):
                return not self.den and self.num == other
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def cross_equal(self, other: "RatFun") -> bool:
        """Equality by cross-multiplication (representation independent)."""
        vs = sort_vars(self.vars + other.vars)
        return (self.num.align(vs) * other.den_poly(vs)) == (other.num.align(vs) * self.den_poly(vs))

    # calculus
    def diff(self, var: str, order: int = 1) -> "RatFun":
        out = self
        for _ in range(order):
            out = out._diff1(var)
        return out

    def _diff1(self, var: str) -> "RatFun":
        dn = self.num.diff(var)
        hit = [(f, e, form_coef(f, var)) for f, e in self.den if form_coef(f, var)]
        if not hit:
            return RatFun(dn, self.den) if dn else RatFun(Poly.zero(), ())
        vs = sort_vars(self.num.vars + tuple(v for f, _, _ in hit for v in form_vars(f)))
        n = self.num.align(vs)
        prod_all = Poly.const(1, vs)
        for f, _, _ in hit:
            prod_all = prod_all * form_poly(f, vs)
        total = dn.align(vs) * prod_all
        for f, e, c in hit:
            others = Poly.const(1, vs)
            for g, _, _ in hit:
                if g != f:
                    others = others * form_poly(g, vs)
            total = total - n * others.scale(e * c)
        den = dict(self.den)
        for f, _, _ in hit:
            den[f] += 1
        return RatFun.make(total, den)

    def divided_diff(self, var: str, order: int) -> "RatFun":
        from math import factorial
        return self.diff(var, order).scale(mpq(1, factorial(order)))

    def subs(self, mapping: Mapping[str, Mapping[str, int]]) -> "RatFun":
        """Simultaneous substitution var -> homogeneous integer linear form."""
        mapping = {v: dict(m) for v, m in mapping.items() if v in self.vars or any(v in form_vars(f) for f, _ in self.den)}
        if not mapping:
            return self
        if all(len(m) == 1 and m.get(v) == 1 for v, m in mapping.items()):
            return self
        targets = set()
        for m in mapping.values():
            targets.update(v for v, c in m.items() if c)
        keep = [v for v in self.vars if v not in mapping]
        vs = sort_vars(tuple(keep) + tuple(targets))
        scalar = mpq(1)
        den: Dict[Form, int] = {}
        mono_extra: Dict[str, int] = {}
        # denominator forms
        for f, e in self.den:
            lin: Dict[str, int] = {}
            for v, c in f:
                img = mapping.get(v, {v: 1})
                for u, d in img.items():
                    lin[u] = lin.get(u, 0) + c * d
            s, kind, payload = normalize_form(lin)
            if kind == "zero":
                raise PoleAtSubstitution("denominator factor vanishes under substitution")
            scalar = scalar * s ** -e
            if kind == "mono":
                mono_extra[payload] = mono_extra.get(payload, 0) - e
            else:
                den[payload] = den.get(payload, 0) + e
                vs = sort_vars(vs + form_vars(payload))
        # numerator, variable by variable
        num = self.num
        images = {}
        for v, m in mapping.items():
            s, kind, payload = normalize_form(m)
            images[v] = (s, kind, payload)
        work = num.align(sort_vars(num.vars + vs))
        allvs = work.vars
        out = Poly.zero(allvs)
        # group by the exponents of substituted variables
        cd = work.codec
        subs_idx = [(v, cd.index[v]) for v in mapping if v in cd.index]
        groups: Dict[Tuple[int, ...], Dict[int, mpq]] = {}
        for k, c in work.terms.items():
            es = tuple(cd.exp(k, i) for _, i in subs_idx)
            base = k
            for (_, i), e in zip(subs_idx, es):
                base -= e << cd.shift[i]
            groups.setdefault(es, {})[base] = c
        lift: Dict[str, int] = {}
        for (v, i) in subs_idx:
            s, kind, payload = images[v]
            mn = min((es[subs_idx.index((v, i))] for es in groups), default=0)
            if kind == "zero" and mn < 0:
                raise PoleAtSubstitution("negative power of %s sent to zero" % v)
            if kind == "form" and mn < 0:
                lift[v] = -mn
                den[payload] = den.get(payload, 0) - mn
                scalar = scalar * s ** mn
        for es, d in groups.items():
            part = Poly(allvs, d)
            for (v, i), e in zip(subs_idx, es):
                s, kind, payload = images[v]
                ee = e + lift.get(v, 0)
                if kind == "zero":
                    if ee:
                        part = Poly.zero(allvs)
                        break
                elif kind == "mono":
                    part = part.shift_exp(payload, ee).scale(s ** ee) if ee else part
                else:
                    if ee:
                        part = part * form_poly(payload, allvs, ee).scale(s ** ee)
            out = out + part
        for v, e in mono_extra.items():
            out = out.shift_exp(v, e)
        final_vs = sort_vars(tuple(keep) + tuple(targets) + tuple(u for f in den for u in form_vars(f)))
        out = out.align(sort_vars(out.vars + final_vs))
        drop = [v for v in out.vars if v in mapping and v not in targets]
        if drop:
            out = out.align(tuple(v for v in out.vars if v not in drop))
        return RatFun.make(out.scale(scalar), den)

    def rename(self, mapping: Mapping[str, str]) -> "RatFun":
        return self.subs({a: {b: 1} for a, b in mapping.items()})

    def trim(self) -> "RatFun":
        keep = set(self.num.used_vars())
        for f, _ in self.den:
            keep.update(form_vars(f))
        return RatFun(self.num.align(sort_vars(keep)), self.den)

    def __repr__(self) -> str:
        from .render import ratfun_str
        return ratfun_str(self)
