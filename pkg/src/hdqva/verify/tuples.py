"""Exhaustive graded sources of basis tuples."""
from __future__ import annotations

from functools import lru_cache
from typing import List, Tuple

from ..hopf import VMono, mono_key, monomials


@lru_cache(maxsize=None)
def _by_weight(max_weight: int) -> Tuple[VMono, ...]:
    return tuple(sorted(monomials(max_weight), key=mono_key))


def basis_tuples(n: int, max_total: int, include_vacuum: bool = True) -> List[Tuple[VMono, ...]]:
    """All n-tuples of basis monomials with total weight <= max_total, in a fixed order."""
    monos = [m for m in _by_weight(max_total) if include_vacuum or m.weight]
    out: List[Tuple[VMono, ...]] = []

    def rec(prefix, budget):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for m in monos:
            if m.weight <= budget:
                rec(prefix + [m], budget - m.weight)

    rec([], max_total)
    return out


def generators() -> Tuple[VMono, ...]:
    """1, h, e^alpha, e^-alpha."""
    return (VMono(0, ()), VMono(0, (1,)), VMono(1, ()), VMono(-1, ()))
