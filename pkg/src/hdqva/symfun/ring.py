"""Symmetric functions in the power-sum basis over Q(t)."""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Mapping, Tuple

import sympy
from gmpy2 import mpq
from sympy import QQ
from sympy.polys.fields import field

from .partitions import Partition, partitions

K, t = field("t", QQ)
Coef = type(t)


def coef(c) -> Coef:
    if isinstance(c, Coef):
        return c
    if isinstance(c, mpq):
        return K(QQ(int(c.numerator), int(c.denominator)))
    return K(c)


def coef_str(c: Coef) -> str:
    return str(sympy.factor(c.as_expr()))


def at_t(c: Coef, value) -> mpq:
    """Evaluate a coefficient at t = value (the denominator must not vanish)."""
    num = c.numer.evaluate(c.numer.ring.gens[0], QQ(value)) if c.numer else QQ(0)
    den = c.denom.evaluate(c.denom.ring.gens[0], QQ(value))
    if den == 0:
        raise ZeroDivisionError("pole at t = %s" % value)
    return mpq(num) / mpq(den)


def _poly_coeffs(p) -> Dict[int, mpq]:
    return {e[0]: mpq(c) for e, c in p.terms()}


def series(c: Coef, T: int) -> List[mpq]:
    """Coefficients of t^0..t^T of the power series of c (denominator regular at t = 0)."""
    num, den = _poly_coeffs(c.numer), _poly_coeffs(c.denom)
    d0 = den.get(0, mpq(0))
    if not d0:
        raise ZeroDivisionError("coefficient is not regular at t = 0")
    out: List[mpq] = []
    for k in range(T + 1):
        v = num.get(k, mpq(0)) - sum(den.get(j, 0) * out[k - j] for j in range(1, k + 1))
        out.append(v / d0)
    return out


def v_factor(lam: Partition) -> Coef:
    """v_lambda = prod_i 1/(1 - t^{lambda_i})."""
    out = K.one
    for k in lam:
        out = out / (1 - t ** k)
    return out


class SymFun:
    """Finite sum of c_lambda p_lambda, c_lambda in Q(t)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Partition, object] = None):
        out: Dict[Partition, Coef] = {}
        for lam, c in (terms or {}).items():
            c = coef(c)
            if c:
                lam = lam if isinstance(lam, Partition) else Partition(lam)
                out[lam] = out.get(lam, K.zero) + c
        self.terms = {k: v for k, v in out.items() if v}

    @staticmethod
    def p(*parts: int) -> "SymFun":
        return SymFun({Partition(parts): 1})

    @staticmethod
    def one() -> "SymFun":
        return SymFun({Partition(): 1})

    @staticmethod
    def zero() -> "SymFun":
        return SymFun()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymFun):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "SymFun") -> "SymFun":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, K.zero) + c
        return SymFun(out)

    def __neg__(self) -> "SymFun":
        return SymFun({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SymFun") -> "SymFun":
        return self + (-other)

    def scale(self, c) -> "SymFun":
        c = coef(c)
        return SymFun({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymFun):
            return self.scale(other)
        out: Dict[Partition, Coef] = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                k = a.union(b)
                out[k] = out.get(k, K.zero) + c * e
        return SymFun(out)

    __rmul__ = scale

    def __truediv__(self, c) -> "SymFun":
        return self.scale(1 / coef(c))

    def d_p(self, k: int) -> "SymFun":
        """Partial derivative with respect to p_k."""
        out: Dict[Partition, Coef] = {}
        for lam, c in self.terms.items():
            m = lam.multiplicities().get(k, 0)
            if m:
                mu = lam.remove_part(k)
                out[mu] = out.get(mu, K.zero) + c * m
        return SymFun(out)

    def degree(self) -> int:
        return max((lam.weight for lam in self.terms), default=-1)

    def homogeneous(self, n: int) -> "SymFun":
        return SymFun({k: c for k, c in self.terms.items() if k.weight == n})

    def coeff(self, lam) -> Coef:
        return self.terms.get(Partition(lam), K.zero)

    def map_coeffs(self, fn) -> "SymFun":
        return SymFun({k: fn(c) for k, c in self.terms.items()})

    def at_t(self, value) -> Dict[Partition, mpq]:
        return {k: c for k, c in ((k, at_t(c, value)) for k, c in self.terms.items()) if c}

    def to_m(self) -> Dict[Partition, Coef]:
        out: Dict[Partition, Coef] = {}
        for lam, c in self.terms.items():
            for mu, e in p_to_m(lam).items():
                out[mu] = out.get(mu, K.zero) + c * e
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def from_m(terms: Mapping[Partition, object]) -> "SymFun":
        out = SymFun()
        for mu, c in terms.items():
            out = out + m_basis(Partition(mu)).scale(c)
        return out

    def items(self) -> List[Tuple[Partition, Coef]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].weight, tuple(-p for p in kv[0])))

    def render(self, basis: str = "p") -> str:
        items = self.items() if basis == "p" else sorted(self.to_m().items(),
                                                       key=lambda kv: (kv[0].weight, tuple(-p for p in kv[0])))
        if not items:
            return "0"
        parts = []
        for lam, c in items:
            name = "%s%s" % (basis, lam) if lam else "1"
            cs = coef_str(c)
            if not lam:
                parts.append(cs)
            elif cs == "1":
                parts.append(name)
            elif cs == "-1":
                parts.append("-" + name)
            else:
                parts.append("(%s)*%s" % (cs, name))
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.render()

    __repr__ = __str__


# basis transitions ------------------------------------------------------------------
def _count_fillings(parts: Tuple[int, ...], bins: Tuple[int, ...]) -> int:
    """Ways to send each (labelled) part to a bin so that bin sums are exactly ``bins``."""

    @lru_cache(maxsize=None)
    def rec(i, caps):
        if i == len(parts):
            return 1 if not any(caps) else 0
        total = 0
        for j, c in enumerate(caps):
            if c >= parts[i]:
                nxt = list(caps)
                nxt[j] -= parts[i]
                total += rec(i + 1, tuple(nxt))
        return total

    return rec(0, bins)


@lru_cache(maxsize=None)
def p_to_m(lam: Partition) -> Dict[Partition, int]:
    """p_lambda = sum_mu L_{lambda mu} m_mu."""
    out = {}
    for mu in partitions(lam.weight):
        n = _count_fillings(tuple(lam), tuple(mu))
        if n:
            out[mu] = n
    return out


@lru_cache(maxsize=None)
def _m_to_p_table(n: int) -> Dict[Partition, Dict[Partition, mpq]]:
    ps = partitions(n)
    L = sympy.Matrix([[p_to_m(lam).get(mu, 0) for mu in ps] for lam in ps])
    inv = L.inv()
    # m_mu = sum_lambda inv[mu, lambda] p_lambda
    return {mu: {lam: mpq(int(inv[j, i].p), int(inv[j, i].q)) for i, lam in enumerate(ps) if inv[j, i] != 0}
            for j, mu in enumerate(ps)}


def m_basis(mu: Partition) -> SymFun:
    """The monomial symmetric function m_mu in the p-basis."""
    return SymFun(_m_to_p_table(mu.weight)[mu])


# inner product ------------------------------------------------------------------------
def deformed_inner(f: SymFun, g: SymFun) -> Coef:
    """<p_lambda, p_mu>_t = delta z_lambda v_lambda, extended bilinearly."""
    out = K.zero
    for lam, c in f.terms.items():
        e = g.terms.get(lam)
        if e is not None:
            out += c * e * lam.z * v_factor(lam)
    return out


# Schur functions via characters (independent of the Gram-Schmidt route) ---------------
def _beta(lam: Partition, n: int) -> Tuple[int, ...]:
    parts = list(lam) + [0] * (n - len(lam))
    return tuple(parts[i] + n - 1 - i for i in range(n))


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """chi^lambda(mu) by border-strip removal on beta-numbers."""
    if lam.weight != mu.weight:
        return 0
    if not mu:
        return 1
    r, rest = mu[0], Partition(mu[1:])
    n = len(lam)
    beta = set(_beta(lam, n))
    total = 0
    for b in beta:
        if b - r >= 0 and b - r not in beta:
            sign = (-1) ** sum(1 for c in beta if b - r < c < b)
            nb = sorted((beta - {b}) | {b - r}, reverse=True)
            new = Partition(nb[i] - (n - 1 - i) for i in range(n))
            total += sign * character(new, rest)
    return total


def schur(lam: Partition) -> SymFun:
    return SymFun({mu: mpq(character(lam, mu), mu.z) for mu in partitions(lam.weight) if character(lam, mu)})

