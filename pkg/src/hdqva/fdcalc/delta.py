"""Formal delta distributions sum_n c_n d^(n)_{z2} delta(z1, z2)."""
from __future__ import annotations

from math import comb
from typing import Dict, Mapping

from gmpy2 import mpq

from .errors import BadPoleStructure, PoleAtSubstitution, SingularAtDiagonal
from .poly import Poly
from .ratfun import RatFun, form_poly, normalize_form
from .tseries import TSeries


def _is_zero(c) -> bool:
    return not c


class Distribution:
    """Finite sum of divided-power derivatives of delta(z1, z2).

    Coefficients are TSeries or any V-valued container with the same
    calculus methods (``divided_diff``, ``subs``, ``vars``).
    """

    __slots__ = ("terms", "z1", "z2")

    def __init__(self, terms: Mapping[int, object], z1: str = "z1", z2: str = "z2"):
        self.terms = {n: c for n, c in sorted(terms.items()) if not _is_zero(c)}
        self.z1 = z1
        self.z2 = z2

    def is_normal(self) -> bool:
        return all(self.z1 not in _vars(c) for c in self.terms.values())

    def normalize(self) -> "Distribution":
        return normalize_distribution(self)

    def max_order(self) -> int:
        d = self.normalize()
        return max(d.terms) if d.terms else -1

    def __bool__(self) -> bool:
        return bool(self.normalize().terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        if set(a.terms) != set(b.terms):
            return False
        return all(a.terms[n] == b.terms[n] for n in a.terms)

    def __add__(self, other: "Distribution") -> "Distribution":
        out = dict(self.terms)
        for n, c in other.terms.items():
            out[n] = out[n] + c if n in out else c
        return Distribution(out, self.z1, self.z2)

    def __neg__(self) -> "Distribution":
        return Distribution({n: -c for n, c in self.terms.items()}, self.z1, self.z2)

    def __sub__(self, other: "Distribution") -> "Distribution":
        return self + (-other)

    def scale(self, f) -> "Distribution":
        """Multiply every coefficient by a function (TSeries/RatFun/Poly/scalar); result is raw."""
        return Distribution({n: c * f for n, c in self.terms.items()}, self.z1, self.z2)

    def times_diagonal_power(self, N: int) -> "Distribution":
        """(z1 - z2)^N times this distribution, normalized."""
        p = form_poly(((self.z1, 1), (self.z2, -1)), (self.z1, self.z2), N)
        return self.scale(p).normalize()

    def pair(self, m: int):
        """Res_{z1} z1^m * (this); returns a coefficient in z2."""
        d = self.normalize()
        out = None
        for n, c in d.terms.items():
            b = comb(m, n) if m >= 0 else (-1) ** n * comb(n - m - 1, n)
            if not b:
                continue
            term = c * Poly.var(self.z2, m - n, b)
            out = term if out is None else out + term
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, c in self.terms.items():
            d = "delta" if n == 0 else "d%s^(%d) delta" % (self.z2, n)
            parts.append("[%s] %s" % (c, d))
        return " + ".join(parts)

    __repr__ = __str__


def _vars(c):
    if hasattr(c, "vars"):
        return c.vars
    return ()


def _unwrap(f):
    if isinstance(f, TSeries):
        return f.f, f.T
    if isinstance(f, RatFun):
        return f, None
    raise TypeError(type(f))


def _allowed_form(z1: str, z2: str):
    return normalize_form({z1: 1, z2: -1})[2]


def delta_raw(f, z1: str = "z1", z2: str = "z2") -> Dict[int, object]:
    """Per-coefficient raw delta extraction of a scalar TSeries/RatFun.

    With f = N / (z1-z2)^k and N Laurent, delta(f) = N d^(k-1) delta.
    """
    rf, T = _unwrap(f)
    target = _allowed_form(z1, z2)
    k = 0
    for form, e in rf.den:
        if form != target:
            raise BadPoleStructure("factor %s is not z1, z2 or z1-z2" % (form,))
        k = e
    sign = mpq(1)
    if target[0][0] != z1:
        sign = mpq(-1) ** k  # canonical form is z2-z1
    if k == 0:
        return {}
    num = RatFun(rf.num.scale(sign), ())
    return {k - 1: TSeries.make(num, T) if T is not None else num}


def delta_extract(f, normalize: bool = True, z1: str = "z1", z2: str = "z2") -> Distribution:
    """delta(f) = (i_{z1;z2} - i_{z2;z1}) f.

    f may be a scalar TSeries/RatFun or a V-valued container exposing
    ``items()`` and constructible from a dict.
    """
    if isinstance(f, (TSeries, RatFun)):
        d = Distribution(delta_raw(f, z1, z2), z1, z2)
    else:
        cls = type(f)
        acc: Dict[int, dict] = {}
        for mono, c in f.items():
            for n, v in delta_raw(c, z1, z2).items():
                acc.setdefault(n, {})[mono] = v
        d = Distribution({n: cls(v) for n, v in acc.items()}, z1, z2)
    return normalize_distribution(d) if normalize else d


def normalize_distribution(d: Distribution) -> Distribution:
    """f(z1,z2) d^(n) delta = sum_j (d^(j)_{z1} f)|_{z1=z2} d^(n-j) delta."""
    out: Dict[int, object] = {}

    def add(n, c):
        if _is_zero(c):
            return
        out[n] = out[n] + c if n in out else c

    for n, c in d.terms.items():
        if d.z1 not in _vars(c):
            add(n, c)
            continue
        for j in range(n + 1):
            cj = c.divided_diff(d.z1, j) if j else c
            try:
                add(n - j, cj.subs({d.z1: {d.z2: 1}}))
            except PoleAtSubstitution as exc:
                raise SingularAtDiagonal(str(exc)) from None
    return Distribution(out, d.z1, d.z2)
