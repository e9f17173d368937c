"""Braiding maps S^f for permutations f of n tensor legs.

Permutations are 0-based tuples ``f`` with ``f[k] = f(k+1) - 1``; the
product ``f * g`` is the composite f(g(.)).  ``sigma_f`` sends
a_1 (x) ... (x) a_n to a_{f(1)} (x) ... (x) a_{f(n)} and f acts on a tuple of
variables the same way.
"""
from __future__ import annotations

import random
import time
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from ..fdcalc import TSeries
from ..hopf import Tensor, VMono, mono_str
from ..bichar import SMap
from ..qva import QVA
from .axioms import AxiomReport, _names, _tensor_witness
from .tuples import basis_tuples

Perm = Tuple[int, ...]
Word = Tuple[int, ...]  # simple transposition indices i (0-based: swaps legs i, i+1)


def compose(f: Perm, g: Perm) -> Perm:
    return tuple(f[g[k]] for k in range(len(f)))


def inverse(f: Perm) -> Perm:
    out = [0] * len(f)
    for k, v in enumerate(f):
        out[v] = k
    return tuple(out)


def identity(n: int) -> Perm:
    return tuple(range(n))


def simple(i: int, n: int) -> Perm:
    f = list(range(n))
    f[i], f[i + 1] = f[i + 1], f[i]
    return tuple(f)


def word_perm(word: Word, n: int) -> Perm:
    f = identity(n)
    for i in word:
        f = compose(f, simple(i, n))
    return f


def length(f: Perm) -> int:
    return sum(1 for i in range(len(f)) for j in range(i + 1, len(f)) if f[i] > f[j])


def reduced_words(f: Perm) -> List[Word]:
    """All reduced words of f, sorted."""
    n = len(f)
    out: List[Word] = []

    def rec(g: Perm, suffix: Word):
        if g == identity(n):
            out.append(suffix)
            return
        for i in range(n - 1):
            if g[i] > g[i + 1]:
                rec(compose(g, simple(i, n)), (i,) + suffix)

    rec(f, ())
    return sorted(set(out))


def act(f: Perm, vars: Sequence[str]) -> Tuple[str, ...]:
    return tuple(vars[f[k]] for k in range(len(f)))


def sigma(f: Perm, t: Tensor) -> Tensor:
    return t.permute(f)


class PermBraiding:
    """S^f built from a word in simple transpositions.

    ``realize_product`` uses the product formula S^k ... S^1 sigma_f^{-1} with
    S^l = S^{w_{i_l}}_{g_l(z)} tau_{i_l}; ``realize_recursive`` uses the
    composition rule S^{fg} = S^g sigma_g S^f_{g^{-1}(z)} sigma_g^{-1}.
    """

    def __init__(self, q: QVA, word: Word, n: int):
        if any(not 0 <= i < n - 1 for i in word):
            raise ValueError("word letter out of range")
        self.q = q
        self.word = tuple(word)
        self.n = n
        self.perm = word_perm(self.word, n)

    def _s_simple(self, i: int, vars: Sequence[str], t: Tensor) -> Tensor:
        return SMap(self.q.R_at(vars[i], vars[i + 1]))(t, i, i + 1)

    def realize_product(self, vars: Sequence[str], t: Tensor) -> Tensor:
        n, word = self.n, self.word
        t = sigma(inverse(self.perm), t)
        k = len(word)
        for l in range(k):  # S^1 first
            g = identity(n)
            for i in reversed(word[l + 1:]):
                g = compose(g, simple(i, n))
            i = word[l]
            t = self._s_simple(i, act(g, vars), t.swap(i, i + 1))
        return t

    def realize_recursive(self, vars: Sequence[str], t: Tensor) -> Tensor:
        return _recursive(self, self.word, tuple(vars), t)

    __call__ = realize_product


def _recursive(pb: PermBraiding, word: Word, vars: Tuple[str, ...], t: Tensor) -> Tensor:
    n = pb.n
    if not word:
        return t
    if len(word) == 1:
        return pb._s_simple(word[0], vars, t)
    f_word, g_word = word[:-1], word[-1:]
    g = word_perm(g_word, n)
    t = sigma(inverse(g), t)
    t = _recursive(pb, f_word, act(inverse(g), vars), t)
    t = sigma(g, t)
    return _recursive(pb, g_word, vars, t)


def perm_braiding(q: QVA, word: Word, n: int) -> PermBraiding:
    return PermBraiding(q, word, n)


def _basis(q: QVA, key) -> Tensor:
    return Tensor({tuple(key): TSeries.one(q.T)}, len(key))


VARS = ("z1", "z2", "z3", "z4")


def word_independence(q: QVA, f: Perm, tuples=None, max_weight: int = 2) -> AxiomReport:
    """All reduced words of f give the same S^f, by both realizations."""
    n = len(f)
    words = reduced_words(f)
    tuples = list(tuples) if tuples is not None else basis_tuples(n, max_weight)
    vars = VARS[:n]
    start = time.perf_counter()
    witness = None
    count = 0
    for key in tuples:
        count += 1
        t = _basis(q, key)
        ref = PermBraiding(q, words[0], n).realize_product(vars, t)
        for w in words:
            pb = PermBraiding(q, w, n)
            for route, got in (("product", pb.realize_product(vars, t)), ("recursive", pb.realize_recursive(vars, t))):
                wit = _tensor_witness(key, got, ref)
                if wit:
                    witness = (str(w), route) + wit
                    break
            if witness:
                break
        if witness:
            break
    return AxiomReport("word_independence", "S^f independent of the word for f = %s" % (f,), count, q.spec,
                       witness is None, witness, time.perf_counter() - start, {"words": [list(w) for w in words]})


def permutation_symmetry(q: QVA, f: Perm, tuples=None, max_weight: int = 2) -> AxiomReport:
    """X_{z_1..z_n} = X_{f(z)} S^f_{f(z)} sigma_f."""
    n = len(f)
    vars = VARS[:n]
    fz = act(f, vars)
    pb = PermBraiding(q, reduced_words(f)[0] if f != identity(n) else (), n)
    tuples = list(tuples) if tuples is not None else basis_tuples(n, max_weight)
    start = time.perf_counter()
    witness = None
    count = 0
    for key in tuples:
        count += 1
        lhs = q.xn(list(key), list(vars))
        t = pb.realize_product(fz, sigma(f, _basis(q, key)))
        rhs: Dict[VMono, TSeries] = {}
        for k, c in t.terms.items():
            for m, v in q.xn(list(k), list(fz)).terms.items():
                rhs[m] = rhs[m] + v * c if m in rhs else v * c
        d = lhs - type(lhs)(rhs)
        if d:
            m = sorted(d.terms, key=lambda x: (x.weight, str(x)))[0]
            witness = (_names(key), mono_str(m), str(lhs.terms.get(m)), str(rhs.get(m)))
            break
    return AxiomReport("permutation_symmetry", "X_z = X_{f(z)} S^f_{f(z)} sigma_f for f = %s" % (f,), count,
                       q.spec, witness is None, witness, time.perf_counter() - start)


def cyclic_symmetry(q: QVA, n: int = 3, tuples=None, max_weight: int = 2) -> AxiomReport:
    """The n-cycle (1 2 ... n) = w_1 w_2 ... w_{n-1}."""
    rep = permutation_symmetry(q, word_perm(tuple(range(n - 1)), n), tuples, max_weight)
    rep.axiom = "cyclic_symmetry"
    return rep


def sample_permutations(n: int, k: int, seed: int = 0) -> List[Perm]:
    """k distinct non-identity permutations of n, reproducibly sampled."""
    perms = [p for p in permutations(range(n)) if p != identity(n)]
    rng = random.Random(seed)
    return sorted(rng.sample(perms, min(k, len(perms))))
