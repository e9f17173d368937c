"""Integer partitions."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterable, List, Tuple


class InvalidShape(ValueError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive parts (zeros dropped on construction)."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise InvalidShape("negative part in %r" % (parts,))
        parts = tuple(sorted((p for p in parts if p), reverse=True))
        return super().__new__(cls, parts)

    @classmethod
    def strict(cls, parts: Iterable[int]) -> "Partition":
        """Like the constructor but rejects sequences that are not already weakly decreasing."""
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidShape("%r is not a partition" % (parts,))
        return cls(parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    @property
    def z(self) -> int:
        """z_lambda = prod_i i^{m_i} m_i!"""
        out = 1
        for i, m in self.multiplicities().items():
            out *= i ** m * factorial(m)
        return out

    def remove_part(self, k: int) -> "Partition":
        parts = list(self)
        parts.remove(k)
        return Partition(parts)

    def union(self, other: "Partition") -> "Partition":
        return Partition(tuple(self) + tuple(other))

    def dominates(self, other: "Partition") -> bool:
        if self.weight != other.weight:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def __repr__(self) -> str:
        return "Partition(%s)" % (",".join(map(str, self)) or "")

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Partition, ...]:
    """Partitions of n in decreasing lexicographic order, (n) first."""
    out: List[Partition] = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(Partition(acc))
            return
        for p in range(min(rem, maxpart), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(n, n, [])
    return tuple(out)


def partitions_upto(n: int) -> List[Partition]:
    return [lam for k in range(n + 1) for lam in partitions(k)]


def order_key(lam: Partition):
    """Graded, then increasing lexicographic: a linear extension of dominance."""
    return (lam.weight, tuple(lam))


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text:
        return Partition()
    return Partition.strict(int(x) for x in text.split(","))
