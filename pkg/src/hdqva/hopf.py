"""The H_D-Hopf algebra V of the lattice example.

V is the polynomial algebra on g_n = D^(n) h (n >= 0) tensored with the
group algebra of Z (group-likes E(m) = e^{m alpha}).  Basis monomials are
``VMono(m, g)`` with ``g`` the exponent tuple (e0, e1, ...) of g0, g1, ...
without trailing zeros.  Elements are sparse dicts from monomials to
coefficients; coefficients are rationals or TSeries.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Dict, List, NamedTuple, Tuple

from gmpy2 import mpq

from .fdcalc import Poly, TSeries


class VMono(NamedTuple):
    m: int
    g: Tuple[int, ...]

    @property
    def gweight(self) -> int:
        return sum((n + 1) * e for n, e in enumerate(self.g))

    @property
    def weight(self) -> int:
        return self.gweight + abs(self.m)

    @property
    def degree(self) -> int:
        """Number of g factors."""
        return sum(self.g)

    def __str__(self) -> str:
        return mono_str(self)


ONE = VMono(0, ())


def _trim(g) -> Tuple[int, ...]:
    g = list(g)
    while g and not g[-1]:
        g.pop()
    return tuple(g)


def gmono(m: int = 0, **gs) -> VMono:
    """gmono(1, g0=2, g3=1) -> g0^2 g3 E(1)."""
    top = max((int(k[1:]) for k in gs), default=-1)
    g = [0] * (top + 1)
    for k, e in gs.items():
        g[int(k[1:])] = e
    return VMono(m, _trim(g))


def mono_mul(a: VMono, b: VMono) -> VMono:
    n = max(len(a.g), len(b.g))
    g = tuple((a.g[i] if i < len(a.g) else 0) + (b.g[i] if i < len(b.g) else 0) for i in range(n))
    return VMono(a.m + b.m, g)


def mono_key(a: VMono):
    return (a.weight, abs(a.m), -a.m, tuple(-e for e in a.g))


def mono_str(a: VMono) -> str:
    parts = []
    for n, e in enumerate(a.g):
        if e:
            name = "h" if n == 0 else "g%d" % n
            parts.append(name if e == 1 else "%s^%d" % (name, e))
    if a.m:
        parts.append("E(%d)" % a.m)
    return " ".join(parts) if parts else "1"


def monomials(max_weight: int, exact: bool = False) -> List[VMono]:
    """All basis monomials of weight <= max_weight (or == when exact)."""
    out = []
    for w in range(0 if not exact else max_weight, max_weight + 1):
        for m in range(-w, w + 1):
            for g in _gexps(w - abs(m)):
                out.append(VMono(m, g))
    return sorted(out, key=mono_key)


def _gexps(gw: int) -> List[Tuple[int, ...]]:
    # exponent tuples of g-weight exactly gw (partitions of gw, part n+1 <-> g_n)
    res = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            g = [0] * (max(acc) if acc else 0)
            for p in acc:
                g[p - 1] += 1
            res.append(_trim(g))
            return
        for p in range(min(rem, maxpart), 0, -1):
            rec(rem - p, p, acc + [p])
    rec(gw, gw, [])
    return res


# coalgebra / D-action on monomials ------------------------------------
@lru_cache(maxsize=None)
def mono_coproduct(a: VMono) -> Tuple[Tuple[VMono, VMono, int], ...]:
    out = []
    for js in product(*[range(e + 1) for e in a.g]):
        c = 1
        for e, j in zip(a.g, js):
            c *= comb(e, j)
        left = VMono(a.m, _trim(js))
        right = VMono(a.m, _trim(tuple(e - j for e, j in zip(a.g, js))))
        out.append((left, right, c))
    return tuple(out)


@lru_cache(maxsize=None)
def mono_d(a: VMono) -> Tuple[Tuple[VMono, int], ...]:
    """D on a monomial: D E(m) = m g0 E(m), D g_n = (n+1) g_{n+1}."""
    out: Dict[VMono, int] = {}
    g = list(a.g)
    if a.m:
        h = list(g) or [0]
        h[0] += 1
        k = VMono(a.m, _trim(h))
        out[k] = out.get(k, 0) + a.m
    for n, e in enumerate(g):
        if not e:
            continue
        h = list(g) + [0] * (n + 2 - len(g))
        h[n] -= 1
        h[n + 1] += 1
        k = VMono(a.m, _trim(h))
        out[k] = out.get(k, 0) + e * (n + 1)
    return tuple((k, c) for k, c in out.items() if c)


@lru_cache(maxsize=None)
def mono_dpow(a: VMono, k: int) -> Tuple[Tuple[VMono, mpq], ...]:
    """Divided power D^(k) = D^k / k! on a monomial."""
    if k == 0:
        return ((a, mpq(1)),)
    prev = mono_dpow(a, k - 1)
    out: Dict[VMono, mpq] = {}
    for b, c in prev:
        for d, e in mono_d(b):
            out[d] = out.get(d, mpq(0)) + c * e
    return tuple((b, c / k) for b, c in out.items() if c)


def mono_antipode(a: VMono) -> Tuple[VMono, int]:
    return VMono(-a.m, a.g), (-1) ** a.degree


def mono_counit(a: VMono) -> int:
    return 1 if not a.g else 0


# elements --------------------------------------------------------------
def _add_into(d: dict, k, c):
    v = d.get(k)
    if v is None:
        if c:
            d[k] = c
    else:
        v = v + c
        if v:
            d[k] = v
        else:
            del d[k]


class VElem:
    """Finite linear combination of basis monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, VMono):
            terms = {terms: mpq(1)}
        self.terms = {k: c for k, c in terms.items() if c}

    @staticmethod
    def mono(a: VMono, c=1) -> "VElem":
        return VElem({a: mpq(c) if not isinstance(c, TSeries) else c})

    @staticmethod
    def one() -> "VElem":
        return VElem({ONE: mpq(1)})

    @staticmethod
    def e(m: int) -> "VElem":
        return VElem({VMono(m, ()): mpq(1)})

    @staticmethod
    def g(n: int, m: int = 0) -> "VElem":
        return VElem({VMono(m, (0,) * n + (1,)): mpq(1)})

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "VElem") -> "VElem":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return VElem(out)

    def __neg__(self) -> "VElem":
        return VElem({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "VElem") -> "VElem":
        return self + (-other)

    def scale(self, c) -> "VElem":
        return VElem({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, VElem):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return VElem({k: other * v for k, v in self.terms.items()})

    def max_weight(self) -> int:
        return max((k.weight for k in self.terms), default=0)

    def restrict_weight(self, cap: int) -> "VElem":
        return VElem({k: c for k, c in self.terms.items() if k.weight <= cap})

    def map_coeffs(self, fn) -> "VElem":
        return VElem({k: fn(c) for k, c in self.terms.items()})

    # calculus on coefficients (used when coefficients are TSeries)
    @property
    def vars(self):
        vs = set()
        for c in self.terms.values():
            if isinstance(c, TSeries):
                vs.update(c.vars)
        return tuple(sorted(vs))

    def divided_diff(self, var: str, order: int) -> "VElem":
        return self.map_coeffs(lambda c: c.divided_diff(var, order))

    def diff(self, var: str, order: int = 1) -> "VElem":
        return self.map_coeffs(lambda c: c.diff(var, order))

    def subs(self, mapping) -> "VElem":
        return self.map_coeffs(lambda c: c.subs(mapping))

    def __str__(self) -> str:
        return velem_str(self)

    __repr__ = __str__


def velem_str(a: VElem) -> str:
    from .fdcalc.render import q_str
    if not a.terms:
        return "0"
    parts = []
    for k, c in a.items():
        ms = mono_str(k)
        if isinstance(c, TSeries):
            parts.append("[%s]*%s" % (c, ms))
        elif c == 1:
            parts.append(ms)
        elif c == -1:
            parts.append("-" + ms)
        else:
            parts.append("%s*%s" % (q_str(c), ms) if ms != "1" else q_str(c))
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


def multiply(a: VElem, b: VElem) -> VElem:
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            _add_into(out, mono_mul(ka, kb), ca * cb)
    return VElem(out)


def counit(a: VElem):
    return sum((c for k, c in a.terms.items() if not k.g), mpq(0))


def antipode(a: VElem) -> VElem:
    out: dict = {}
    for k, c in a.terms.items():
        b, s = mono_antipode(k)
        _add_into(out, b, c * s)
    return VElem(out)


def d_action(a: VElem, k: int = 1, divided: bool = False) -> VElem:
    """D^k a (or the divided power D^(k) a)."""
    out: dict = {}
    for b, c in a.terms.items():
        for d, e in mono_dpow(b, k):
            _add_into(out, d, c * (e if divided else e * factorial(k)))
    return VElem(out)


def exp_zD(a: VElem, var: str, weight_cap: int) -> Dict[VMono, Poly]:
    """sum_k var^k D^(k) a, keeping output monomials of weight <= weight_cap."""
    out: Dict[VMono, Poly] = {}
    for b, c in a.terms.items():
        for k in range(0, weight_cap - b.weight + 1):
            for d, e in mono_dpow(b, k):
                p = Poly.var(var, k, e)
                term = c * p if isinstance(c, TSeries) else p.scale(c)
                out[d] = out[d] + term if d in out else term
    return {k: v for k, v in out.items() if v}


class Tensor:
    """Element of V^{(x)n}: dict from n-tuples of monomials to coefficients."""

    __slots__ = ("terms", "n")

    def __init__(self, terms, n: int):
        self.terms = {k: c for k, c in terms.items() if c}
        self.n = n

    @staticmethod
    def pure(*factors: VElem) -> "Tensor":
        out: dict = {}
        for combo in product(*[f.terms.items() for f in factors]):
            key = tuple(k for k, _ in combo)
            c = mpq(1)
            for _, v in combo:
                c = c * v
            _add_into(out, key, c)
        return Tensor(out, len(factors))

    @staticmethod
    def basis(*monos: VMono) -> "Tensor":
        return Tensor({tuple(monos): mpq(1)}, len(monos))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return Tensor(out, self.n)

    def __neg__(self):
        return Tensor({k: -c for k, c in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Tensor({k: v * c for k, v in self.terms.items()}, self.n)

    def map_coeffs(self, fn) -> "Tensor":
        return Tensor({k: fn(c) for k, c in self.terms.items()}, self.n)

    def permute(self, perm) -> "Tensor":
        """New factor i is old factor perm[i]."""
        return Tensor({tuple(k[p] for p in perm): c for k, c in self.terms.items()}, self.n)

    def swap(self, i: int, j: int) -> "Tensor":
        perm = list(range(self.n))
        perm[i], perm[j] = perm[j], perm[i]
        return self.permute(perm)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def diff_report(self, other: "Tensor"):
        """First differing key with both sides, or None."""
        for k in sorted(set(self.terms) | set(other.terms), key=lambda ks: [mono_key(x) for x in ks]):
            a, b = self.terms.get(k), other.terms.get(k)
            if (a is None) != (b is None) or (a is not None and a != b):
                return k, a, b
        return None

    def __str__(self) -> str:
        rows = []
        for k in sorted(self.terms, key=lambda ks: [mono_key(x) for x in ks]):
            rows.append("[%s] %s" % (self.terms[k], " (x) ".join(mono_str(x) for x in k)))
        return "\n".join(rows) if rows else "0"


def coproduct(a: VElem) -> Tensor:
    out: dict = {}
    for k, c in a.terms.items():
        for l, r, m in mono_coproduct(k):
            _add_into(out, (l, r), c * m)
    return Tensor(out, 2)


@lru_cache(maxsize=None)
def mono_coproduct_n(a: VMono, n: int) -> Tuple[Tuple[Tuple[VMono, ...], int], ...]:
    """Iterated coproduct into n legs."""
    if n == 1:
        return (((a,), 1),)
    out = []
    for l, r, c in mono_coproduct(a):
        for legs, d in mono_coproduct_n(r, n - 1):
            out.append(((l,) + legs, c * d))
    return tuple(out)
