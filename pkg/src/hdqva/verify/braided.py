"""Braided algebras (non-singular analogue) and two toy instances.

Tensors are dicts from tuples of basis labels to rationals.  Operators
written as products act right to left, e.g. ``S12 S13`` applies S13 first.
"""
from __future__ import annotations

import time
from itertools import permutations, product
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

from gmpy2 import mpq

from ..qva import TruncationSpec
from .axioms import AxiomReport
from .perm import reduced_words

Label = Hashable
Vec = Dict[tuple, mpq]


def _add(d: Vec, k, c):
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


class BraidedAlgebra:
    """Interface: ``basis``, ``unit``, ``mul(x, y)``, ``braid(x, y)``; optionally a group
    with ``act(g, x)``, ``braid_g(g, x, y)``, ``gmul``, ``ginv``, ``group``."""

    name = "braided algebra"
    basis: List[Label] = []
    unit: Label = None
    group: List = []

    def mul(self, x, y) -> Dict[Label, mpq]:
        raise NotImplementedError

    def braid(self, x, y) -> Dict[Tuple[Label, Label], mpq]:
        raise NotImplementedError

    def act(self, g, x) -> Dict[Label, mpq]:
        raise NotImplementedError

    def braid_g(self, g, x, y) -> Dict[Tuple[Label, Label], mpq]:
        raise NotImplementedError

    def gmul(self, g, h):
        raise NotImplementedError

    def ginv(self, g):
        raise NotImplementedError

    # tensor plumbing ----------------------------------------------------------
    @staticmethod
    def vec(*labels) -> Vec:
        return {tuple(labels): mpq(1)}

    def on_legs(self, fn: Callable, v: Vec, i: int, j: int) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            for (x, y), e in fn(k[i], k[j]).items():
                nk = list(k)
                nk[i], nk[j] = x, y
                _add(out, tuple(nk), c * e)
        return out

    def S(self, v: Vec, i: int, j: int) -> Vec:
        return self.on_legs(self.braid, v, i, j)

    def Sg(self, g, v: Vec, i: int, j: int) -> Vec:
        return self.on_legs(lambda x, y: self.braid_g(g, x, y), v, i, j)

    @staticmethod
    def tau(v: Vec, i: int, j: int) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            nk = list(k)
            nk[i], nk[j] = nk[j], nk[i]
            _add(out, tuple(nk), c)
        return out

    def m_at(self, v: Vec, i: int) -> Vec:
        """Multiply legs i and i+1."""
        out: Vec = {}
        for k, c in v.items():
            for z, e in self.mul(k[i], k[i + 1]).items():
                _add(out, k[:i] + (z,) + k[i + 2:], c * e)
        return out

    def m_n(self, v: Vec) -> Vec:
        """m_n = m (1 (x) m_{n-1})."""
        n = len(next(iter(v))) if v else 0
        for i in range(n - 2, -1, -1):
            v = self.m_at(v, i)
        return v

    def delta_n(self, g, v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            parts = [list(self.act(g, x).items()) for x in k]
            for combo in product(*parts):
                e = c
                for _, w in combo:
                    e = e * w
                _add(out, tuple(x for x, _ in combo), e)
        return out

    def S_perm(self, word: Sequence[int], v: Vec) -> Vec:
        """S(f) = S(w_{i_k}) ... S(w_{i_1}) for f = w_{i_1} ... w_{i_k}; S(w_i) = S tau on legs i, i+1."""
        for i in word:
            v = self.S(self.tau(v, i, i + 1), i, i + 1)
        return v


# instance (i): a super-commutative algebra ---------------------------------------
class SuperAlgebra(BraidedAlgebra):
    """Grassmann generators xi_1, xi_2 (odd) and y (even, y^3 = 0).

    Labels are (odd_set, y_power) with odd_set a sorted tuple.  The group of
    diagonal rescalings (xi_1, xi_2, y) -> (l1 xi_1, l2 xi_2, l3 y) acts by
    automorphisms with trivial braidings S^g.
    """

    name = "super-commutative"

    def __init__(self, n_odd: int = 2, y_nil: int = 3):
        self.n_odd = n_odd
        self.y_nil = y_nil
        odd_sets = [tuple(i for i in range(n_odd) if mask >> i & 1) for mask in range(1 << n_odd)]
        self.basis = [(s, p) for s in sorted(odd_sets, key=lambda s: (len(s), s)) for p in range(y_nil)]
        self.unit = ((), 0)
        scal = [mpq(1), mpq(-1), mpq(2)]
        self.group = [tuple(g) for g in product(scal, repeat=n_odd + 1)][:9]

    @staticmethod
    def parity(x) -> int:
        return len(x[0]) % 2

    def mul(self, x, y):
        (s, p), (u, r) = x, y
        if set(s) & set(u) or p + r >= self.y_nil:
            return {}
        inv = sum(1 for a in s for b in u if a > b)
        return {(tuple(sorted(s + u)), p + r): mpq((-1) ** inv)}

    def braid(self, x, y):
        return {(x, y): mpq((-1) ** (self.parity(x) * self.parity(y)))}

    def act(self, g, x):
        s, p = x
        c = mpq(1)
        for i in s:
            c *= g[i]
        return {x: c * g[-1] ** p}

    def braid_g(self, g, x, y):
        return {(x, y): mpq(1)}

    def gmul(self, g, h):
        return tuple(a * b for a, b in zip(g, h))

    def ginv(self, g):
        return tuple(1 / a for a in g)


# instance (ii): a bicharacter-twisted group algebra of Z^2 -------------------------
class TwistedLattice(BraidedAlgebra):
    """k[Z^2] with m_r(e^a (x) e^b) = q^{B(a,b)} e^{a+b} and S = S^{(R)}, R = r^-1 * r^tau.

    The dihedral group of the square acts on the lattice; S^g = S^{(R^g)}
    with R^g = r^-1 * r o Delta(g).
    """

    name = "twisted lattice"

    def __init__(self, q=mpq(2), form=((1, 2), (-1, 3)), box: int = 1):
        self.q = mpq(q)
        self.B = form
        rng = range(-box, box + 1)
        self.basis = [(i, j) for i in rng for j in rng]
        self.unit = (0, 0)
        rot = ((0, -1), (1, 0))
        ref = ((1, 0), (0, -1))
        grp = {((1, 0), (0, 1))}
        frontier = list(grp)
        while frontier:
            g = frontier.pop()
            for s in (rot, ref):
                h = self.gmul(s, g)
                if h not in grp:
                    grp.add(h)
                    frontier.append(h)
        self.group = sorted(grp)

    def form(self, a, b) -> int:
        return sum(a[i] * self.B[i][j] * b[j] for i in range(2) for j in range(2))

    def r(self, a, b) -> mpq:
        return self.q ** self.form(a, b)

    def mul(self, x, y):
        return {(x[0] + y[0], x[1] + y[1]): self.r(x, y)}

    def braid(self, x, y):
        return {(x, y): self.r(y, x) / self.r(x, y)}

    @staticmethod
    def apply(g, a):
        return (g[0][0] * a[0] + g[0][1] * a[1], g[1][0] * a[0] + g[1][1] * a[1])

    def act(self, g, x):
        return {self.apply(g, x): mpq(1)}

    def braid_g(self, g, x, y):
        return {(x, y): self.r(self.apply(g, x), self.apply(g, y)) / self.r(x, y)}

    @staticmethod
    def gmul(g, h):
        return tuple(tuple(sum(g[i][k] * h[k][j] for k in range(2)) for j in range(2)) for i in range(2))

    @staticmethod
    def ginv(g):
        (a, b), (c, d) = g
        det = a * d - b * c
        return ((d * det, -b * det), (-c * det, a * det))


# checks -----------------------------------------------------------------------------
def _first_diff(key, lhs: Vec, rhs: Vec):
    if lhs == rhs:
        return None
    ks = sorted(set(lhs) | set(rhs), key=repr)
    for k in ks:
        if lhs.get(k) != rhs.get(k):
            return (key, k, lhs.get(k), rhs.get(k))
    return None


class BraidedChecks:
    """``sigma_uses`` picks the braiding inside Sigma: "g" (S^g) or "plain" (S)."""

    def __init__(self, alg: BraidedAlgebra, sigma_uses: str = "g"):
        self.A = alg
        self.sigma_uses = sigma_uses

    def _sig(self, g, v: Vec, i: int, j: int) -> Vec:
        return self.A.Sg(g, v, i, j) if self.sigma_uses == "g" else self.A.S(v, i, j)

    def tuples(self, n: int):
        return list(product(self.A.basis, repeat=n))

    # braided algebra axioms
    def vacuum(self, key):
        (a,) = key
        A, one = self.A, self.A.unit
        for pair in ((a, one), (one, a)):
            w = _first_diff(key, A.S(A.vec(*pair), 0, 1), A.vec(*pair))
            if w:
                return w
        return None

    def braiding(self, key):
        A = self.A
        v = A.vec(*key)
        return _first_diff(key, A.m_n(A.S(v, 0, 1)), A.m_n(A.tau(v, 0, 1)))

    def unitarity(self, key):
        A = self.A
        v = A.vec(*key)
        return _first_diff(key, A.S(A.tau(A.S(A.tau(v, 0, 1), 0, 1), 0, 1), 0, 1), v)

    def yang_baxter(self, key):
        A = self.A
        v = A.vec(*key)
        lhs = A.S(A.S(A.S(v, 1, 2), 0, 2), 0, 1)
        rhs = A.S(A.S(A.S(v, 0, 1), 0, 2), 1, 2)
        return _first_diff(key, lhs, rhs)

    def compatibility(self, key):
        A = self.A
        v = A.vec(*key)
        w = _first_diff(key, A.S(A.m_at(v, 0), 0, 1), A.m_at(A.S(A.S(v, 0, 2), 1, 2), 0))
        if w:
            return ("S m12",) + w
        w = _first_diff(key, A.S(A.m_at(v, 1), 0, 1), A.m_at(A.S(A.S(v, 0, 2), 0, 1), 1))
        return None if w is None else ("S m23",) + w

    # derived statements
    def braided_commutativity(self, key):
        A = self.A
        v = A.vec(*key)
        return _first_diff(key, A.m_at(A.S(v, 0, 1), 0), A.m_at(A.tau(v, 0, 1), 0))

    def associativity(self, key):
        A = self.A
        v = A.vec(*key)
        return _first_diff(key, A.m_at(A.m_at(v, 1), 0), A.m_at(A.m_at(v, 0), 0))

    def perm_invariance(self, key):
        """S(f) independent of the word and m_n S(f) = m_n for every f in S_n."""
        A = self.A
        n = len(key)
        v = A.vec(*key)
        base = A.m_n(v)
        for f in permutations(range(n)):
            words = reduced_words(f) or [()]
            ref = A.S_perm(words[0], v)
            for w in words[1:]:
                d = _first_diff(key, A.S_perm(w, v), ref)
                if d:
                    return ("word", f, w) + d
            d = _first_diff(key, A.m_n(ref), base)
            if d:
                return ("m_n S(f)", f) + d
        return None

    def nonadjacent(self, key):
        """m_3 tau^13 = m_3 S12 S13 S23 (the braiding of the transposition (13))."""
        A = self.A
        v = A.vec(*key)
        return _first_diff(key, A.m_n(A.tau(v, 0, 2)), A.m_n(A.S(A.S(A.S(v, 1, 2), 0, 2), 0, 1)))

    def bare_s13_differs(self) -> bool:
        """Some triple has m_3 tau^13 != m_3 S13: the bare S13 is not the braiding of (13)."""
        A = self.A
        for key in self.tuples(3):
            v = A.vec(*key)
            if A.m_n(A.tau(v, 0, 2)) != A.m_n(A.S(v, 0, 2)):
                return True
        return False

    # group axioms
    def g_vacuum(self, key):
        (a,) = key
        A, one = self.A, self.A.unit
        for g in A.group:
            for pair in ((a, one), (one, a)):
                w = _first_diff(key, A.Sg(g, A.vec(*pair), 0, 1), A.vec(*pair))
                if w:
                    return (g,) + w
        return None

    def g_symmetry(self, key):
        """g m S^g = m Delta(g)."""
        A = self.A
        v = A.vec(*key)
        for g in A.group:
            w = _first_diff(key, A.delta_n(g, A.m_at(A.Sg(g, v, 0, 1), 0)), A.m_at(A.delta_n(g, v), 0))
            if w:
                return (g,) + w
        return None

    def multiplicativity(self, key):
        """S^{gh} = S^h Delta(h^-1) S^g Delta(h)."""
        A = self.A
        v = A.vec(*key)
        for g in A.group:
            for h in A.group:
                rhs = A.Sg(h, A.delta_n(A.ginv(h), A.Sg(g, A.delta_n(h, v), 0, 1)), 0, 1)
                w = _first_diff(key, A.Sg(A.gmul(g, h), v, 0, 1), rhs)
                if w:
                    return (g, h) + w
        return None

    def g_yang_baxter(self, key):
        A = self.A
        v = A.vec(*key)
        for g in A.group:
            lhs = A.Sg(g, A.Sg(g, A.Sg(g, v, 1, 2), 0, 2), 0, 1)
            rhs = A.Sg(g, A.Sg(g, A.Sg(g, v, 0, 1), 0, 2), 1, 2)
            w = _first_diff(key, lhs, rhs)
            if w:
                return (g,) + w
        return None

    def g_compatibility(self, key):
        A = self.A
        v = A.vec(*key)
        for g in A.group:
            w = _first_diff(key, A.Sg(g, A.m_at(v, 0), 0, 1), A.m_at(A.Sg(g, A.Sg(g, v, 0, 2), 1, 2), 0))
            if w:
                return (g, "S m12") + w
            w = _first_diff(key, A.Sg(g, A.m_at(v, 1), 0, 1), A.m_at(A.Sg(g, A.Sg(g, v, 0, 2), 0, 1), 1))
            if w:
                return (g, "S m23") + w
        return None

    # higher S^g_n (stated without proof; tested here)
    def sigma_first(self, g, v: Vec, n: int) -> Vec:
        """Sigma_{n-1} = S^g,12 S^g,13 ... S^g,1n on n legs."""
        for j in range(n - 1, 0, -1):
            v = self._sig(g, v, 0, j)
        return v

    def sigma_last(self, g, v: Vec, n: int) -> Vec:
        """tilde Sigma_{n-1}: the last leg braided past legs n-1, ..., 1 (S^g,1n applied first)."""
        for i in range(n - 1):
            v = self._sig(g, v, i, n - 1)
        return v

    def sigma_last_literal(self, g, v: Vec, n: int) -> Vec:
        """S^g,1n ... S^g,13 S^g,12 (S^g,12 applied first)."""
        for j in range(1, n):
            v = self._sig(g, v, 0, j)
        return v

    def S_g_n(self, g, v: Vec, n: int, side: str = "first") -> Vec:
        if n == 2:
            return self.A.Sg(g, v, 0, 1)
        if side == "first":
            return self.sigma_first(g, self._shifted(g, v, n), n)
        inner = self._prefix(g, v, n)
        if side == "last":
            return self.sigma_last(g, inner, n)
        return self.sigma_last_literal(g, inner, n)

    def _shifted(self, g, v: Vec, n: int) -> Vec:
        """(1 (x) S^g_{n-1}) applied on legs 2..n."""
        out: Vec = {}
        for k, c in v.items():
            for k2, e in self.S_g_n(g, {k[1:]: mpq(1)}, n - 1).items():
                _add(out, (k[0],) + k2, c * e)
        return out

    def _prefix(self, g, v: Vec, n: int) -> Vec:
        """(S^g_{n-1} (x) 1) on legs 1..n-1, built with the same (last) recursion."""
        out: Vec = {}
        for k, c in v.items():
            for k2, e in self.S_g_n(g, {k[:-1]: mpq(1)}, n - 1, "last").items():
                _add(out, k2 + (k[-1],), c * e)
        return out

    def higher_symmetry(self, key, side: str = "first"):
        """g m_n S^g_n = m_n Delta_n(g)."""
        A = self.A
        n = len(key)
        v = A.vec(*key)
        for g in A.group:
            lhs = A.delta_n(g, A.m_n(self.S_g_n(g, v, n, side)))
            w = _first_diff(key, lhs, A.m_n(A.delta_n(g, v)))
            if w:
                return (g,) + w
        return None

    def higher_recursions_agree(self, key, other: str = "last"):
        A = self.A
        n = len(key)
        v = A.vec(*key)
        for g in A.group:
            w = _first_diff(key, self.S_g_n(g, v, n, "first"), self.S_g_n(g, v, n, other))
            if w:
                return (g,) + w
        return None


AXIOMS = [
    ("vacuum", 1, "vacuum"),
    ("braiding", 3, "braiding"),
    ("unitarity", 2, "unitarity"),
    ("yang_baxter", 3, "yang_baxter"),
    ("compatibility", 3, "compatibility"),
    ("braided_commutativity", 2, "braided_commutativity"),
    ("associativity", 3, "associativity"),
    ("perm_invariance", 3, "perm_invariance"),
    ("nonadjacent_transposition", 3, "nonadjacent"),
    ("g_vacuum", 1, "g_vacuum"),
    ("g_symmetry", 2, "g_symmetry"),
    ("multiplicativity", 2, "multiplicativity"),
    ("g_yang_baxter", 3, "g_yang_baxter"),
    ("g_compatibility", 3, "g_compatibility"),
    ("higher_symmetry_3", 3, "higher_symmetry"),
    ("higher_recursions_agree_3", 3, "higher_recursions_agree"),
]

UNPROVEN = ("higher_symmetry_3", "higher_recursions_agree_3")


def _run(checks: BraidedChecks, name: str, arity: int, method: str, tuples=None) -> AxiomReport:
    return _run_fn(checks, name, getattr(checks, method), tuples if tuples is not None else checks.tuples(arity))


def braided_algebra_check(alg: BraidedAlgebra) -> List[AxiomReport]:
    """Axioms, derived identities and the higher G-braiding statement for ``alg``."""
    checks = BraidedChecks(alg)
    return [_run(checks, name, arity, method) for name, arity, method in AXIOMS]


def higher_braiding_reports(alg: BraidedAlgebra, n: int, stride: int = 1) -> Dict[str, AxiomReport]:
    """The n-fold G-braiding statement under each reading, on every ``stride``-th basis n-tuple.

    Keys: "first", "last", "literal" (route used for S^g_n in g m_n S^g_n = m_n Delta_n(g)),
    "agree" (first and last recursions coincide), "plain" (Sigma built from S instead of S^g).
    """
    tuples = BraidedChecks(alg).tuples(n)[::stride]
    out: Dict[str, AxiomReport] = {}
    for side in ("first", "last", "literal"):
        c = BraidedChecks(alg)
        out[side] = _run_fn(c, "higher_symmetry_%d_%s" % (n, side),
                            lambda k, c=c, s=side: c.higher_symmetry(k, s), tuples)
    out["agree"] = _run(BraidedChecks(alg), "higher_recursions_agree_%d" % n, n, "higher_recursions_agree", tuples)
    out["plain"] = _run(BraidedChecks(alg, "plain"), "higher_symmetry_%d_plain" % n, n, "higher_symmetry", tuples)
    return out


def _run_fn(checks: BraidedChecks, name: str, fn, tuples) -> AxiomReport:
    start = time.perf_counter()
    n, witness = 0, None
    for key in tuples:
        n += 1
        witness = fn(key)
        if witness is not None:
            break
    return AxiomReport(name, checks.A.name, n, TruncationSpec(0, 0, 0), witness is None, witness,
                       time.perf_counter() - start)


def instances() -> List[BraidedAlgebra]:
    return [SuperAlgebra(), TwistedLattice()]
