"""Truncated power series in t with rational-function coefficients.

A series is stored as one RatFun whose numerator carries ``t`` as its
last variable (t never occurs in a denominator), together with the
truncation order T.  Per-order payloads are derived on demand.
"""
from __future__ import annotations

from typing import Dict, Mapping

from gmpy2 import mpq

from .errors import NotInvertible
from .poly import Poly, sort_vars, to_q
from .ratfun import RatFun

TVAR = "t"


class TSeries:
    __slots__ = ("f", "T", "_coeffs", "_hash")

    def __init__(self, f: RatFun, T: int):
        # trusted: f canonical and truncated at T
        self.f = f
        self.T = T
        self._coeffs = None
        self._hash = None

    @staticmethod
    def make(f: RatFun, T: int) -> "TSeries":
        if T < 0:
            raise ValueError("truncation order must be non-negative")
        num = f.num
        if TVAR in num.vars:
            if num.min_exp(TVAR) < 0:
                raise ValueError("negative power of t")
            if num.max_exp(TVAR) > T:
                num = num.truncate(TVAR, T)
                f = RatFun.make(num, dict(f.den))
        return TSeries(f, T)

    @staticmethod
    def from_ratfun(f: RatFun, T: int) -> "TSeries":
        return TSeries.make(f, T)

    @staticmethod
    def from_poly(p: Poly, T: int) -> "TSeries":
        return TSeries.make(RatFun(p, ()), T)

    @staticmethod
    def const(c, T: int) -> "TSeries":
        return TSeries(RatFun.const(c), T)

    @staticmethod
    def zero(T: int) -> "TSeries":
        return TSeries(RatFun.const(0), T)

    @staticmethod
    def one(T: int) -> "TSeries":
        return TSeries(RatFun.const(1), T)

    @staticmethod
    def t(T: int, power: int = 1) -> "TSeries":
        return TSeries.from_poly(Poly.var(TVAR, power), T)

    @staticmethod
    def from_coeffs(coeffs: Mapping[int, RatFun], T: int) -> "TSeries":
        out = RatFun.const(0)
        for k, c in coeffs.items():
            if k <= T:
                out = out + c * RatFun(Poly.var(TVAR, k), ())
        return TSeries.make(out, T)

    # views
    @property
    def vars(self):
        return tuple(v for v in self.f.vars if v != TVAR)

    @property
    def coeffs(self) -> Dict[int, RatFun]:
        if self._coeffs is None:
            num = self.f.num
            out = {}
            parts = num.split(TVAR) if TVAR in num.vars else ({0: num} if num else {})
            keep = tuple(v for v in num.vars if v != TVAR)
            for k in sorted(parts):
                p = parts[k].align(keep) if TVAR in num.vars else parts[k]
                c = RatFun.make(p, dict(self.f.den)) if self.f.den else RatFun(p, ())
                if c:
                    out[k] = c
            self._coeffs = out
        return self._coeffs

    def coeff(self, k: int) -> RatFun:
        return self.coeffs.get(k, RatFun.const(0))

    def valuation(self) -> int:
        cs = self.coeffs
        return min(cs) if cs else self.T + 1

    def __bool__(self) -> bool:
        return bool(self.f.num)

    def is_zero(self) -> bool:
        return not self.f.num

    def is_laurent(self) -> bool:
        return not self.f.den

    def is_const(self) -> bool:
        return not self.f.den and self.f.num.is_const()

    def with_order(self, T: int) -> "TSeries":
        if T == self.T:
            return self
        if T > self.T:
            raise ValueError("cannot raise truncation order")
        return TSeries.make(self.f, T)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, TSeries):
            return other
        if isinstance(other, RatFun):
            return TSeries.make(other, self.T)
        if isinstance(other, Poly):
            return TSeries.from_poly(other, self.T)
        return TSeries.const(other, self.T)

    def __add__(self, other) -> "TSeries":
        other = self._coerce(other)
        T = min(self.T, other.T)
        a, b = self, other
        if a.T != T:
            a = a.with_order(T)
        if b.T != T:
            b = b.with_order(T)
        return TSeries(a.f + b.f, T)

    __radd__ = __add__

    def __neg__(self) -> "TSeries":
        return TSeries(-self.f, self.T)

    def __sub__(self, other) -> "TSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TSeries":
        return (-self) + other

    def scale(self, c) -> "TSeries":
        return TSeries(self.f.scale(c), self.T)

    def __mul__(self, other) -> "TSeries":
        if not isinstance(other, (TSeries, RatFun, Poly)):
            return self.scale(other)
        other = self._coerce(other)
        T = min(self.T, other.T)
        a, b = self.f, other.f
        if not a.num or not b.num:
            return TSeries.zero(T)
        num = a.num.mul_trunc(b.num, TVAR, T) if _t_last(a.num, b.num) else (a.num * b.num).truncate(TVAR, T)
        if not a.den and not b.den:
            return TSeries(RatFun(num, ()), T)
        den = dict(a.den)
        for f, e in b.den:
            den[f] = den.get(f, 0) + e
        return TSeries(RatFun.make(num, den), T)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out = TSeries.one(self.T)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self) -> "TSeries":
        c0 = self.coeff(0)
        if not c0:
            raise NotInvertible("constant term in t vanishes")
        inv0 = TSeries.make(c0.inverse(), self.T)
        u = TSeries.one(self.T) - self * inv0
        acc = TSeries.one(self.T)
        for _ in range(self.T):
            acc = TSeries.one(self.T) + u * acc
        return inv0 * acc

    def __truediv__(self, other) -> "TSeries":
        if isinstance(other, (TSeries, RatFun, Poly)):
            return self * self._coerce(other).inverse()
        return self.scale(1 / to_q(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, TSeries):
            return self.T == other.T and self.f == other.f
        if isinstance(other, (int, mpq)):
            return self.f == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.T, self.f))
        return self._hash

    # calculus
    def diff(self, var: str, order: int = 1) -> "TSeries":
        if var == TVAR:
            raise ValueError("differentiate in t through coefficients instead")
        return TSeries(self.f.diff(var, order), self.T)

    def divided_diff(self, var: str, order: int) -> "TSeries":
        return TSeries(self.f.divided_diff(var, order), self.T)

    def subs(self, mapping) -> "TSeries":
        if TVAR in mapping:
            raise ValueError("t cannot be substituted")
        return TSeries(self.f.subs(mapping), self.T)

    def rename(self, mapping) -> "TSeries":
        return TSeries(self.f.rename(mapping), self.T)

    def __str__(self) -> str:
        from .render import tseries_str
        return tseries_str(self)

    def __repr__(self) -> str:
        return "TSeries(%s)" % self


def _t_last(a: Poly, b: Poly) -> bool:
    vs = a.vars if a.vars == b.vars else sort_vars(a.vars + b.vars)
    return bool(vs) and vs[-1] == TVAR
