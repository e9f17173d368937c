"""Bicharacters on V and the maps S^rho on V (x) V.

A covariant bicharacter is fixed by its value sigma on E(1) (x) E(1).
``Bicharacter`` stores sigma in factored form (constant, monomial, powers
of linear forms, unit series) so that every integer power and the
logarithmic derivatives are available exactly.  The convolution group
operations exist twice: in closed form on sigma, and literally through
coproduct sums (``Convolution``, ``Inverse``, ``Transposed``,
``Shifted``).  Tests compare the two.
"""
from __future__ import annotations

from typing import Dict, Mapping, Optional, Tuple

from gmpy2 import mpq

from .fdcalc import Poly, RatFun, TSeries, parse_tseries
from .fdcalc.errors import NotInvertible, PoleAtSubstitution
from .fdcalc.factor import factor_poly
from .fdcalc.poly import sort_vars
from .fdcalc.ratfun import Form, form_coef, form_poly, form_vars, normalize_form
from .hopf import ONE, Tensor, VElem, VMono, _add_into, mono_antipode, mono_coproduct


class VOViolation(Exception):
    """The bicharacter has a pole at z2 = 0, so Y cannot be formed."""


def _lin_subs(form_items, mapping) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for v, c in form_items:
        for u, d in mapping.get(v, {v: 1}).items():
            out[u] = out.get(u, 0) + c * d
    return out


class Base:
    """sigma = const * prod v^a * prod L^e * unit, unit = 1 + O(t)."""

    __slots__ = ("const", "mono", "forms", "unit", "_pow", "_value")

    def __init__(self, const, mono: Mapping[str, int], forms: Mapping[Form, int], unit: TSeries):
        self.const = mpq(const)
        self.mono = {v: e for v, e in mono.items() if e}
        self.forms = {f: e for f, e in forms.items() if e}
        if unit.coeff(0) != 1:
            raise ValueError("unit factor must be 1 + O(t)")
        self.unit = unit
        self._pow: Dict[int, TSeries] = {}
        self._value = None

    @property
    def T(self) -> int:
        return self.unit.T

    @staticmethod
    def from_tseries(s: TSeries) -> "Base":
        """Factor a series whose t^0 term is c * monomial * prod(forms)."""
        c0 = s.coeff(0)
        if not c0:
            raise NotInvertible("sigma has no t^0 term")
        c, mono, forms = factor_poly(c0.num)
        forms = dict(forms)
        for f, e in c0.den:
            forms[f] = forms.get(f, 0) - e
        b = Base(c, mono, forms, TSeries.one(s.T))
        unit = s * b.value().inverse()
        return Base(c, mono, forms, unit)

    @staticmethod
    def parse(text: str, T: int) -> "Base":
        return Base.from_tseries(parse_tseries(text, T))

    def value(self) -> TSeries:
        if self._value is None:
            self._value = self.power(1)
        return self._value

    def power(self, k: int) -> TSeries:
        if k in self._pow:
            return self._pow[k]
        T = self.T
        if k == 0:
            out = TSeries.one(T)
        else:
            num = Poly.const(self.const ** k)
            for v, e in self.mono.items():
                num = num * Poly.var(v, e * k)
            den = {}
            for f, e in self.forms.items():
                if e * k > 0:
                    num = num * form_poly(f, sort_vars(form_vars(f)), e * k)
                else:
                    den[f] = -e * k
            lead = TSeries.make(RatFun.make(num, den), T)
            out = lead * self._unit_pow(k)
        self._pow[k] = out
        return out

    def _unit_pow(self, k: int) -> TSeries:
        key = ("u", k)
        cache = self._pow
        if key in cache:
            return cache[key]
        if k == 1:
            out = self.unit
        elif k == -1:
            out = self.unit.inverse()
        elif k > 0:
            half = self._unit_pow(k // 2)
            out = half * half
            if k % 2:
                out = out * self.unit
        else:
            out = self._unit_pow(-1) ** -k
        cache[key] = out
        return out

    def dlog(self, var: str) -> TSeries:
        """d/dvar log sigma."""
        T = self.T
        out = TSeries.zero(T)
        if var in self.mono:
            out = out + TSeries.from_poly(Poly.var(var, -1, self.mono[var]), T)
        for f, e in self.forms.items():
            c = form_coef(f, var)
            if c:
                out = out + TSeries(RatFun.inv_linear(dict(f)).scale(e * c), T)
        if not self.unit.is_const():
            out = out + self.unit.diff(var) * self._unit_pow(-1)
        return out

    def __mul__(self, other: "Base") -> "Base":
        mono = dict(self.mono)
        for v, e in other.mono.items():
            mono[v] = mono.get(v, 0) + e
        forms = dict(self.forms)
        for f, e in other.forms.items():
            forms[f] = forms.get(f, 0) + e
        return Base(self.const * other.const, mono, forms, self.unit * other.unit)

    def inverse(self) -> "Base":
        return Base(1 / self.const, {v: -e for v, e in self.mono.items()},
                    {f: -e for f, e in self.forms.items()}, self._unit_pow(-1))

    def subs(self, mapping: Mapping[str, Mapping[str, int]]) -> "Base":
        const = self.const
        mono: Dict[str, int] = {}
        forms: Dict[Form, int] = {}

        def put(lin, e):
            nonlocal const
            s, kind, payload = normalize_form(lin)
            if kind == "zero":
                raise PoleAtSubstitution("factor of sigma vanishes under substitution")
            const = const * s ** e
            if kind == "mono":
                mono[payload] = mono.get(payload, 0) + e
            else:
                forms[payload] = forms.get(payload, 0) + e

        for v, e in self.mono.items():
            put(dict(mapping.get(v, {v: 1})), e)
        for f, e in self.forms.items():
            put(_lin_subs(f, mapping), e)
        return Base(const, mono, forms, self.unit.subs(mapping))

    def __eq__(self, other) -> bool:
        return isinstance(other, Base) and self.value() == other.value()

    def __str__(self) -> str:
        return str(self.value())


class BicharBase:
    """Common interface: eval_mono(a, b) -> TSeries, plus derived helpers."""

    T: int
    varpair: Tuple[str, str]

    def eval_mono(self, a: VMono, b: VMono) -> TSeries:
        raise NotImplementedError

    def eval(self, a: VElem, b: VElem) -> TSeries:
        out = TSeries.zero(self.T)
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                v = self.eval_mono(ka, kb)
                if v:
                    out = out + v * (ca * cb)
        return out

    __call__ = eval


class Bicharacter(BicharBase):
    """H_D (x) H_D-covariant bicharacter determined by sigma = r(E(1) (x) E(1))."""

    def __init__(self, base: Base, varpair: Tuple[str, str] = ("z1", "z2"), name: Optional[str] = None):
        self.base = base
        self.varpair = tuple(varpair)
        self.name = name or "sigma"
        self.T = base.T
        self._memo: Dict[Tuple[VMono, VMono], TSeries] = {}
        self._l1: Dict[int, TSeries] = {}
        self._l2: Dict[int, TSeries] = {}
        self._l12: Dict[Tuple[int, int], TSeries] = {}
        self._dlog = None

    @staticmethod
    def from_sigma(sigma, T: int, varpair=("z1", "z2"), name=None) -> "Bicharacter":
        if isinstance(sigma, str):
            base = Base.parse(sigma, T)
        elif isinstance(sigma, TSeries):
            base = Base.from_tseries(sigma)
        else:
            base = sigma
        return Bicharacter(base, varpair, name)

    @property
    def sigma(self) -> TSeries:
        return self.base.value()

    # covariant building blocks
    def _dl(self):
        if self._dlog is None:
            x, y = self.varpair
            self._dlog = (self.base.dlog(x), self.base.dlog(y))
        return self._dlog

    def l1(self, k: int) -> TSeries:
        """d^(k)_x d_x log sigma."""
        if k not in self._l1:
            self._l1[k] = self._dl()[0].divided_diff(self.varpair[0], k) if k else self._dl()[0]
        return self._l1[k]

    def l2(self, l: int) -> TSeries:
        if l not in self._l2:
            self._l2[l] = self._dl()[1].divided_diff(self.varpair[1], l) if l else self._dl()[1]
        return self._l2[l]

    def l12(self, k: int, l: int) -> TSeries:
        key = (k, l)
        if key not in self._l12:
            x, y = self.varpair
            if k == 0 and l == 0:
                v = self._dl()[0].diff(y)
            elif k:
                v = self.l12(k - 1, l).diff(x).scale(mpq(1, k))
            else:
                v = self.l12(k, l - 1).diff(y).scale(mpq(1, l))
            self._l12[key] = v
        return self._l12[key]

    def eval_mono(self, a: VMono, b: VMono) -> TSeries:
        key = (a, b)
        memo = self._memo
        v = memo.get(key)
        if v is not None:
            return v
        T = self.T
        if a == ONE or b == ONE:
            other = b if a == ONE else a
            v = TSeries.one(T) if not other.g else TSeries.zero(T)
        elif a.g:
            k = next(i for i, e in enumerate(a.g) if e)
            rest = _drop(a, k)
            v = TSeries.zero(T)
            if b.m:
                v = v + self.l1(k).scale(b.m) * self.eval_mono(rest, b)
            for l, e in enumerate(b.g):
                if e:
                    v = v + self.l12(k, l).scale(e) * self.eval_mono(rest, _drop(b, l))
        elif b.g:
            l = next(i for i, e in enumerate(b.g) if e)
            v = self.l2(l).scale(a.m) * self.eval_mono(a, _drop(b, l)) if a.m else TSeries.zero(T)
        else:
            v = self.base.power(a.m * b.m)
        memo[key] = v
        return v

    # closed-form group operations
    def at(self, x: str, y: str) -> "Bicharacter":
        """Same bicharacter in the variable pair (x, y)."""
        if (x, y) == self.varpair:
            return self
        ox, oy = self.varpair
        mapping = {ox: {x: 1}, oy: {y: 1}}
        return Bicharacter(self.base.subs(mapping), (x, y), self.name)

    def transpose(self) -> "Bicharacter":
        x, y = self.varpair
        return Bicharacter(self.base.subs({x: {y: 1}, y: {x: 1}}), self.varpair, self.name + "^tau")

    def inverse(self) -> "Bicharacter":
        return Bicharacter(self.base.inverse(), self.varpair, self.name + "^-1")

    def __mul__(self, other: "Bicharacter") -> "Bicharacter":
        if other.varpair != self.varpair:
            raise ValueError("variable pairs differ")
        return Bicharacter(self.base * other.base, self.varpair, "(%s*%s)" % (self.name, other.name))

    def shifted(self, mapping: Mapping[str, Mapping[str, int]], name: Optional[str] = None) -> "Bicharacter":
        return Bicharacter(self.base.subs(mapping), self.varpair, name or self.name + "^shift")

    def gamma_shift(self, gamma: str = "gamma", sign: int = 1) -> "Bicharacter":
        x, y = self.varpair
        return self.shifted({x: {x: 1, gamma: sign}, y: {y: 1, gamma: sign}}, self.name + "^" + gamma)

    def y_values(self) -> "YBichar":
        return YBichar(self)


def _drop(a: VMono, n: int) -> VMono:
    g = list(a.g)
    g[n] -= 1
    while g and not g[-1]:
        g.pop()
    return VMono(a.m, tuple(g))


def braiding_R(r: Bicharacter) -> Bicharacter:
    """R = r^-1 * r^tau."""
    out = r.inverse() * r.transpose()
    out.name = "R"
    return out


def translation_Rgamma(r: Bicharacter, gamma: str = "gamma") -> Bicharacter:
    """R^gamma = r^-1 * r^gamma with r^gamma_{z1,z2} = r_{z1+gamma, z2+gamma}."""
    out = r.inverse() * r.gamma_shift(gamma)
    out.name = "R^" + gamma
    return out


class YBichar(BicharBase):
    """r_{z,0}: the first variable renamed to ``z``, second set to 0."""

    def __init__(self, r: BicharBase, z: str = "z"):
        self.r = r
        self.T = r.T
        self.varpair = (z, "0")
        x, y = r.varpair
        self._map = {y: {}, x: {z: 1}} if x != z else {y: {}}
        self._memo: Dict[Tuple[VMono, VMono], TSeries] = {}

    def eval_mono(self, a: VMono, b: VMono) -> TSeries:
        key = (a, b)
        v = self._memo.get(key)
        if v is None:
            try:
                v = self.r.eval_mono(a, b).subs(self._map)
            except PoleAtSubstitution:
                raise VOViolation("bicharacter has a pole at %s = 0" % self.r.varpair[1]) from None
            self._memo[key] = v
        return v


# literal (coproduct) realizations of the group operations ---------------
class Convolution(BicharBase):
    """(r*s)(a (x) b) = sum r(a' (x) b') s(a'' (x) b'')."""

    def __init__(self, r: BicharBase, s: BicharBase):
        self.r, self.s = r, s
        self.T = min(r.T, s.T)
        self.varpair = r.varpair
        self._memo = {}

    def eval_mono(self, a, b):
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        out = TSeries.zero(self.T)
        for a1, a2, ca in mono_coproduct(a):
            for b1, b2, cb in mono_coproduct(b):
                x = self.r.eval_mono(a1, b1)
                if not x:
                    continue
                y = self.s.eval_mono(a2, b2)
                if y:
                    out = out + (x * y).scale(ca * cb)
        self._memo[key] = out
        return out


class Inverse(BicharBase):
    """r^-1(a (x) b) = r(S(a) (x) b)."""

    def __init__(self, r: BicharBase):
        self.r = r
        self.T = r.T
        self.varpair = r.varpair

    def eval_mono(self, a, b):
        sa, sign = mono_antipode(a)
        return self.r.eval_mono(sa, b).scale(sign)


class Transposed(BicharBase):
    """r^tau_{z1,z2}(a (x) b) = r_{z2,z1}(b (x) a)."""

    def __init__(self, r: BicharBase):
        self.r = r
        self.T = r.T
        self.varpair = r.varpair
        x, y = r.varpair
        self._swap = {x: {y: 1}, y: {x: 1}}

    def eval_mono(self, a, b):
        return self.r.eval_mono(b, a).subs(self._swap)


class Shifted(BicharBase):
    """Values of r with a substitution applied afterwards."""

    def __init__(self, r: BicharBase, mapping, varpair=None):
        self.r = r
        self.T = r.T
        self.varpair = tuple(varpair or r.varpair)
        self.mapping = mapping
        self._memo = {}

    def eval_mono(self, a, b):
        key = (a, b)
        if key not in self._memo:
            self._memo[key] = self.r.eval_mono(a, b).subs(self.mapping)
        return self._memo[key]


class Counit(BicharBase):
    """The unit bicharacter epsilon (x) epsilon."""

    def __init__(self, T: int, varpair=("z1", "z2")):
        self.T = T
        self.varpair = varpair

    def eval_mono(self, a, b):
        return TSeries.one(self.T) if not a.g and not b.g else TSeries.zero(self.T)


# S maps -------------------------------------------------------------------
class SMap:
    """S^rho(a (x) b) = a' (x) b' rho(a'' (x) b'')."""

    def __init__(self, rho: BicharBase):
        self.rho = rho
        self._memo: Dict[Tuple[VMono, VMono], Tuple] = {}

    def on_pair(self, a: VMono, b: VMono):
        key = (a, b)
        v = self._memo.get(key)
        if v is None:
            acc: dict = {}
            for a1, a2, ca in mono_coproduct(a):
                for b1, b2, cb in mono_coproduct(b):
                    x = self.rho.eval_mono(a2, b2)
                    if x:
                        _add_into(acc, (a1, b1), x.scale(ca * cb))
            v = tuple(acc.items())
            self._memo[key] = v
        return v

    def __call__(self, t: Tensor, i: int = 0, j: int = 1) -> Tensor:
        """Apply on legs i < j of a tensor (legs of an n-tensor)."""
        out: dict = {}
        for key, c in t.terms.items():
            for (x, y), v in self.on_pair(key[i], key[j]):
                nk = list(key)
                nk[i], nk[j] = x, y
                _add_into(out, tuple(nk), v * c if isinstance(c, TSeries) else v.scale(c))
        return Tensor(out, t.n)


def s_map(rho: BicharBase, t: Tensor, i: int = 0, j: int = 1) -> Tensor:
    return SMap(rho)(t, i, j)


def main_example(T: int) -> Bicharacter:
    """sigma = (z1 - z2) / (1 - t z2 / z1)."""
    unit = TSeries.from_poly(Poly.const(1) - Poly.from_dict(("z1", "z2", "t"), {(-1, 1, 1): 1}), T).inverse()
    base = Base(1, {}, {(("z1", 1), ("z2", -1)): 1}, unit)
    return Bicharacter(base, ("z1", "z2"), "jing")


def lattice_example(T: int) -> Bicharacter:
    """sigma = z1 - z2 (no t dependence)."""
    base = Base(1, {}, {(("z1", 1), ("z2", -1)): 1}, TSeries.one(T))
    return Bicharacter(base, ("z1", "z2"), "lattice")
