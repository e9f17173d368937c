"""Cross-checks between the truncated vertex-algebra side and the exact Fock side."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..hopf import ONE, VElem, VMono, d_action, gmono, monomials
from ..qva import QVA
from .fock import FockState, fock_from_velem, heisenberg_action, jing_constant_term, truncate, vertex_coeff

H = gmono(0, g0=1)


@dataclass
class BridgeReport:
    name: str
    tested: int
    ok: bool
    witness: Optional[tuple]
    seconds: float

    def line(self) -> str:
        return "%s %s: %d cases (%.2fs)" % ("PASS" if self.ok else "FAIL", self.name, self.tested, self.seconds)


def _same(a: FockState, b: FockState, T: int) -> bool:
    return truncate(a, T) == truncate(b, T)


def charge_states(max_weight: int, charges: Sequence[int] = (0,)) -> List[VMono]:
    return [m for m in monomials(max_weight + max(abs(c) for c in charges))
            if m.m in charges and m.gweight <= max_weight]


def heisenberg_identification(q: QVA, max_weight: int = 4, modes=range(-5, 6), charges=(0, 1, -1)) -> BridgeReport:
    """h_(m) b computed from Y(h, z) b agrees with heisenberg_action on the image of b."""
    start = time.perf_counter()
    n, witness = 0, None
    for b in charge_states(max_weight, charges):
        for m in modes:
            n += 1
            lhs = fock_from_velem(q.mode(H, m, b))
            rhs = heisenberg_action(m, fock_from_velem(VElem.mono(b)))
            if not _same(lhs, rhs, q.T):
                witness = (str(b), m, str(lhs), str(rhs))
                break
        if witness:
            break
    return BridgeReport("heisenberg_identification", n, witness is None, witness, time.perf_counter() - start)


def vertex_identification(q: QVA, max_weight: int = 2, charge: int = 1, sources=(0, -1, 1),
                          convention: str = "consistent") -> BridgeReport:
    """Coefficients of Y(E(n), z) b against the bosonized e^{n alpha}(z) on the image of b."""
    start = time.perf_counter()
    n, witness = 0, None
    a = VMono(charge, ())
    for b in charge_states(max_weight, sources):
        top = q.mode_bound(a, b)
        for k in range(-1 - top, -1 - top + max_weight + 2):
            n += 1
            lhs = fock_from_velem(q.mode(a, -k - 1, b))
            rhs = vertex_coeff(charge, k, fock_from_velem(VElem.mono(b)), convention)
            if not _same(lhs, rhs, q.T):
                witness = (str(b), k, str(lhs), str(rhs))
                break
        if witness:
            break
    return BridgeReport("vertex_identification_%s" % convention, n, witness is None, witness,
                        time.perf_counter() - start)


def jing_constant_term_v(q: QVA, mtilde: Tuple[int, ...]) -> VElem:
    """The same constant term from iterated (-1)-products on the vertex-algebra side."""
    state = VElem.mono(ONE)
    for m in reversed(mtilde):
        state = q.mode(d_action(VElem.e(1), m, divided=True), -1, state)
    return state


def jing_routes_agree(q: QVA, cases) -> BridgeReport:
    start = time.perf_counter()
    n, witness = 0, None
    for mt in cases:
        n += 1
        v = fock_from_velem(jing_constant_term_v(q, tuple(mt)))
        f = jing_constant_term(mt)
        if not _same(v, f, q.T):
            witness = (mt, str(v), str(f))
            break
    return BridgeReport("jing_routes_agree", n, witness is None, witness, time.perf_counter() - start)
