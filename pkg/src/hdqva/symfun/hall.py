"""Hall-Littlewood functions by triangular Gram-Schmidt on the monomial basis."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from .partitions import Partition, order_key, partitions, partitions_upto
from .ring import K, SymFun, deformed_inner, m_basis


@dataclass
class HLBasis:
    max_weight: int
    H: Dict[Partition, SymFun]
    Q: Dict[Partition, SymFun]
    norms: Dict[Partition, object]  # <H_lambda, H_lambda>_t


@lru_cache(maxsize=None)
def _weight_block(n: int):
    H: Dict[Partition, SymFun] = {}
    norms = {}
    for lam in sorted(partitions(n), key=order_key):  # smallest in dominance first
        f = m_basis(lam)
        for mu, hm in H.items():
            c = deformed_inner(f, hm) / norms[mu]
            if c:
                f = f - hm.scale(c)
        H[lam] = f
        norms[lam] = deformed_inner(f, f)
    Q = {lam: H[lam].scale(1 / norms[lam]) for lam in H}
    return H, Q, norms


def hl_basis(max_weight: int) -> HLBasis:
    """H_lambda = m_lambda + lower terms, mutually orthogonal; Q_lambda the dual basis."""
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    H, Q, norms = {}, {}, {}
    for n in range(max_weight + 1):
        h, q, nm = _weight_block(n)
        H.update(h)
        Q.update(q)
        norms.update(nm)
    return HLBasis(max_weight, H, Q, norms)


def hl_Q(lam) -> SymFun:
    lam = Partition(lam)
    return _weight_block(lam.weight)[1][lam]


def hl_H(lam) -> SymFun:
    lam = Partition(lam)
    return _weight_block(lam.weight)[0][lam]


def duality_defects(basis: HLBasis):
    """Pairs (lambda, mu) with <H_lambda, Q_mu> != delta, and non-orthogonal H pairs."""
    bad = []
    lams = partitions_upto(basis.max_weight)
    for lam in lams:
        for mu in lams:
            if lam.weight != mu.weight:
                continue
            want = K.one if lam == mu else K.zero
            if deformed_inner(basis.H[lam], basis.Q[mu]) != want:
                bad.append(("dual", lam, mu))
            if lam != mu and deformed_inner(basis.H[lam], basis.H[mu]):
                bad.append(("orth", lam, mu))
    return bad
