"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Exponent vectors are packed into a single Python int (fixed-width biased
fields, one per variable) so that monomial multiplication is one integer
addition.  A polynomial carries its ordered variable tuple; binary
operations first align both operands to the union of their variables.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from gmpy2 import mpq, mpz

Q = mpq
FIELD = 20
BIAS = 1 << (FIELD - 1)
MASK = (1 << FIELD) - 1

_FAMILY = {"z": 0, "x": 1, "w": 2, "gamma": 3, "t": 9}
_NAME = re.compile(r"([A-Za-z_]+?)(\d*)")


def var_key(name: str):
    m = _NAME.fullmatch(name)
    if m is None:
        return (5, name, -1)
    stem, idx = m.group(1), m.group(2)
    return (_FAMILY.get(stem, 5), stem, int(idx) if idx else -1)


def sort_vars(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def to_q(c) -> mpq:
    if isinstance(c, mpq):
        return c
    return mpq(c)


class Codec:
    """Packing of exponent tuples for one ordered variable tuple."""

    __slots__ = ("vars", "n", "shift", "zero_key", "index")

    def __init__(self, vars: Tuple[str, ...]):
        self.vars = vars
        self.n = len(vars)
        self.shift = tuple(FIELD * i for i in range(self.n))
        self.zero_key = sum(BIAS << s for s in self.shift)
        self.index = {v: i for i, v in enumerate(vars)}

    def pack(self, exps: Sequence[int]) -> int:
        k = 0
        for e, s in zip(exps, self.shift):
            k |= (e + BIAS) << s
        return k

    def unpack(self, key: int) -> Tuple[int, ...]:
        return tuple(((key >> s) & MASK) - BIAS for s in self.shift)

    def exp(self, key: int, i: int) -> int:
        return ((key >> self.shift[i]) & MASK) - BIAS

    def unit(self, i: int) -> int:
        return 1 << self.shift[i]


@lru_cache(maxsize=None)
def codec(vars: Tuple[str, ...]) -> Codec:
    return Codec(vars)


@lru_cache(maxsize=4096)
def _realign_map(src: Tuple[str, ...], dst: Tuple[str, ...]):
    # variables missing from dst are dropped (their exponents must be zero)
    cs, cd = codec(src), codec(dst)
    return tuple((cs.shift[i], cd.shift[cd.index[v]]) for i, v in enumerate(src) if v in cd.index)


class Poly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Tuple[str, ...], terms: Dict[int, mpq]):
        # trusted constructor: keys packed for ``vars``, no zero values
        self.vars = vars
        self.terms = terms
        self._hash = None

    # construction
    @staticmethod
    def zero(vars: Tuple[str, ...] = ()) -> "Poly":
        return Poly(vars, {})

    @staticmethod
    def const(c, vars: Tuple[str, ...] = ()) -> "Poly":
        c = to_q(c)
        return Poly(vars, {codec(vars).zero_key: c} if c else {})

    @staticmethod
    def var(name: str, power: int = 1, coef=1) -> "Poly":
        return Poly.monomial((name,), (power,), coef)

    @staticmethod
    def monomial(vars: Tuple[str, ...], exps: Sequence[int], coef=1) -> "Poly":
        c = to_q(coef)
        return Poly(vars, {codec(vars).pack(exps): c} if c else {})

    @staticmethod
    def from_dict(vars: Sequence[str], data: Mapping[Tuple[int, ...], object]) -> "Poly":
        vars = tuple(vars)
        target = sort_vars(vars)
        perm = [vars.index(v) for v in target]
        cd = codec(target)
        out: Dict[int, mpq] = {}
        for exps, c in data.items():
            c = to_q(c)
            if not c:
                continue
            k = cd.pack([exps[i] for i in perm])
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(target, out)

    # views
    @property
    def codec(self) -> Codec:
        return codec(self.vars)

    def items(self) -> Iterator[Tuple[Tuple[int, ...], mpq]]:
        cd = self.codec
        for k, c in self.terms.items():
            yield cd.unpack(k), c

    def to_dict(self) -> Dict[Tuple[int, ...], mpq]:
        return dict(self.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.codec.zero_key in self.terms)

    def const_value(self) -> mpq:
        return self.terms.get(self.codec.zero_key, mpq(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def used_vars(self) -> Tuple[str, ...]:
        cd = self.codec
        used = set()
        for k in self.terms:
            for i in range(cd.n):
                if i not in used and cd.exp(k, i):
                    used.add(i)
        return tuple(self.vars[i] for i in sorted(used))

    # alignment
    def align(self, vars: Tuple[str, ...]) -> "Poly":
        if vars == self.vars:
            return self
        pairs = _realign_map(self.vars, vars)
        base = codec(vars).zero_key
        out = {}
        for k, c in self.terms.items():
            nk = base
            for s_old, s_new in pairs:
                nk += (((k >> s_old) & MASK) - BIAS) << s_new
            out[nk] = c
        return Poly(vars, out)

    def trim(self) -> "Poly":
        return self.align(self.used_vars())

    @staticmethod
    def common(a: "Poly", b: "Poly"):
        if a.vars == b.vars:
            return a, b
        vs = sort_vars(a.vars + b.vars)
        return a.align(vs), b.align(vs)

    # arithmetic
    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        a, b = Poly.common(self, other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out = dict(a.terms)
        for k, c in b.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Poly(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = to_q(c)
        if not c:
            return Poly(self.vars, {})
        if c == 1:
            return self
        return Poly(self.vars, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = Poly.common(self, other)
        if not a.terms or not b.terms:
            return Poly(a.vars, {})
        if len(a.terms) < len(b.terms):
            a, b = b, a
        z = codec(a.vars).zero_key
        out: Dict[int, mpq] = {}
        get = out.get
        bt = [(kb - z, cb) for kb, cb in b.terms.items()]
        for ka, ca in a.terms.items():
            for kb, cb in bt:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return Poly(a.vars, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def mul_trunc(self, other: "Poly", var: str, top: int) -> "Poly":
        """Product with all terms of ``var``-degree above ``top`` dropped.

        ``var`` must be the last variable of the common varset and occur
        with non-negative exponents only (this is how ``t`` is stored).
        """
        a, b = Poly.common(self, other)
        if not a.terms or not b.terms:
            return Poly(a.vars, {})
        cd = codec(a.vars)
        if a.vars[-1] != var:
            return (a * b).truncate(var, top)
        s = cd.shift[-1]
        z = cd.zero_key
        ba = _buckets(a.terms, s)
        bb = _buckets(b.terms, s)
        out: Dict[int, mpq] = {}
        get = out.get
        for da, ta in ba.items():
            for db, tb in bb.items():
                if da + db > top:
                    continue
                tb2 = [(kb - z, cb) for kb, cb in tb]
                for ka, ca in ta:
                    for kb, cb in tb2:
                        k = ka + kb
                        out[k] = get(k, 0) + ca * cb
        return Poly(a.vars, {k: v for k, v in out.items() if v})

    def truncate(self, var: str, top: int) -> "Poly":
        if var not in self.vars:
            return self
        cd = self.codec
        i = cd.index[var]
        s = cd.shift[i]
        lim = top + BIAS
        return Poly(self.vars, {k: c for k, c in self.terms.items() if ((k >> s) & MASK) <= lim})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial polynomial")
            (k, c), = self.terms.items()
            cd = self.codec
            exps = cd.unpack(k)
            return Poly(self.vars, {cd.pack([e * n for e in exps]): c ** n})
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if isinstance(other, (int, mpq, mpz)):
                return self.is_const() and self.const_value() == other
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        a, b = Poly.common(self, other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    # calculus and structure
    def diff(self, var: str, order: int = 1) -> "Poly":
        """Ordinary derivative (not divided)."""
        if var not in self.vars:
            return Poly(self.vars, {}) if order else self
        cd = self.codec
        i = cd.index[var]
        s = cd.shift[i]
        out = {}
        for k, c in self.terms.items():
            e = ((k >> s) & MASK) - BIAS
            f = 1
            for j in range(order):
                f *= e - j
            if f:
                out[k - (order << s)] = c * f
        return Poly(self.vars, out)

    def min_exp(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0
        cd = self.codec
        i = cd.index[var]
        return min(cd.exp(k, i) for k in self.terms)

    def max_exp(self, var: str) -> int:
        if var not in self.vars or not self.terms:
            return 0
        cd = self.codec
        i = cd.index[var]
        return max(cd.exp(k, i) for k in self.terms)

    def shift_exp(self, var: str, e: int) -> "Poly":
        """Multiply by ``var**e``."""
        p = self if var in self.vars else self.align(sort_vars(self.vars + (var,)))
        s = p.codec.shift[p.codec.index[var]]
        d = e << s
        return Poly(p.vars, {k + d: c for k, c in p.terms.items()})

    def split(self, var: str) -> Dict[int, "Poly"]:
        """Coefficients with respect to ``var`` (same varset, var exponent zeroed)."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        cd = self.codec
        i = cd.index[var]
        s = cd.shift[i]
        out: Dict[int, Dict[int, mpq]] = {}
        for k, c in self.terms.items():
            e = ((k >> s) & MASK) - BIAS
            out.setdefault(e, {})[k - (e << s)] = c
        return {e: Poly(self.vars, d) for e, d in out.items()}

    def coeff(self, var: str, e: int) -> "Poly":
        return self.split(var).get(e, Poly(self.vars, {}))

    def eval_mod(self, point: Mapping[str, int], p: int) -> int:
        cd = self.codec
        pw = []
        for v in self.vars:
            x = point[v] % p
            pw.append((x, pow(x, -1, p) if x else None))
        total = 0
        for k, c in self.terms.items():
            term = int(c.numerator) * pow(int(c.denominator), -1, p)
            for i, s in enumerate(cd.shift):
                e = ((k >> s) & MASK) - BIAS
                if e > 0:
                    term = term * pow(pw[i][0], e, p)
                elif e < 0:
                    term = term * pow(pw[i][1], -e, p)
            total += term
        return total % p

    def compose(self, var: str, value: "Poly") -> "Poly":
        """Substitute a polynomial for ``var``.  Negative exponents of ``var``
        are allowed only when ``value`` is a monomial."""
        parts = self.split(var)
        keep = tuple(v for v in self.vars if v != var)
        vs = sort_vars(keep + value.vars)
        out = Poly.zero(vs)
        for e, c in parts.items():
            if e < 0 and not value.is_monomial():
                raise ValueError("negative exponent substituted by non-monomial")
            out = out + c.align(sort_vars(self.vars + vs)) * (value ** e)
        return out.align(vs) if out.vars != vs else out

    def sorted_items(self):
        """Items in graded-lex order: descending total degree, then lex."""
        return sorted(self.items(), key=lambda ec: (-sum(ec[0]), tuple(-e for e in ec[0])))

    def __repr__(self) -> str:
        from .render import poly_str
        return "Poly(%s)" % poly_str(self)


def _buckets(terms: Dict[int, mpq], s: int):
    out: Dict[int, list] = {}
    for k, c in terms.items():
        out.setdefault((k >> s) - BIAS, []).append((k, c))
    return out
