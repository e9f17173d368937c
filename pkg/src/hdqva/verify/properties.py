"""Consequences of the axioms: infinitesimal covariance, first-slot covariance
and vacuum absorption."""
from __future__ import annotations

import time
from typing import Dict, Optional

from ..fdcalc import TSeries
from ..hopf import ONE, Tensor, VElem, VMono, _add_into, d_action, mono_coproduct
from ..qva import QVA
from .axioms import AxiomChecker, AxiomReport, _names, _tensor_witness, _velem_witness
from .tuples import basis_tuples


class PropertyChecker(AxiomChecker):
    def infinitesimal_S(self, key, kind: str = "tau") -> Optional[tuple]:
        """(1 (x) D + d/dz2) S_{z1,z2} = S_{z1,z2} (1 (x) D)."""
        a, b = key
        sm = self.smap(kind, "z1", "z2")
        lhs: Dict[tuple, TSeries] = {}
        for (a1, b1), v in sm.on_pair(a, b):
            for d, e in d_action(VElem.mono(b1)).terms.items():
                _add_into(lhs, (a1, d), v.scale(e))
            _add_into(lhs, (a1, b1), v.diff("z2"))
        rhs: Dict[tuple, TSeries] = {}
        for d, e in d_action(VElem.mono(b)).terms.items():
            for (a1, b1), v in sm.on_pair(a, d):
                _add_into(rhs, (a1, b1), v.scale(e))
        w = _tensor_witness(key, Tensor(lhs, 2), Tensor(rhs, 2))
        return None if w is None else (kind,) + w

    def alpha(self, a: VMono, b: VMono, x: str = "z1", y: Optional[str] = "z2") -> Tensor:
        """alpha_{x,y}(a (x) b) = d/dgamma S^(gamma)_{x,y}(a (x) b) at gamma = 0."""
        rho = self.q.Rgamma_at(x, y, "gamma")
        out: Dict[tuple, TSeries] = {}
        for a1, a2, s in mono_coproduct(a):
            for b1, b2, u in mono_coproduct(b):
                v = rho.eval_mono(a2, b2)
                if v:
                    d = v.diff("gamma").subs({"gamma": {}})
                    if d:
                        _add_into(out, (a1, b1), d.scale(s * u))
        return Tensor(out, 2)

    def alpha_vacuum(self, key) -> Optional[tuple]:
        (a,) = key
        for pair in ((a, ONE), (ONE, a)):
            t = self.alpha(*pair)
            if t:
                return (_names(key), _names(pair), str(t))
        return None

    def infinitesimal_Y(self, key) -> Optional[tuple]:
        """D Y(a,z)b = d/dz Y(a,z)b + Y(a,z)Db - Y_z alpha_{z,0}(a (x) b)."""
        a, b = key
        q, cap = self.q, self.cap
        lhs = d_action(q.y(a, b, "z", cap - 1))
        rhs = q.y(a, b, "z", cap).diff("z") + q.y(a, d_action(VElem.mono(b)), "z", cap)
        acc: Dict[VMono, TSeries] = dict(rhs.terms)
        for (a1, b1), c in self.alpha(a, b, "z", None).terms.items():
            for m, v in q.y(a1, b1, "z", cap).terms.items():
                _add_into(acc, m, -(v * c))
        return _velem_witness(key, lhs.restrict_weight(cap), VElem(acc).restrict_weight(cap))

    def first_slot(self, key) -> Optional[tuple]:
        """X_{z1,z2}(Da (x) b) = d/dz1 X_{z1,z2}(a (x) b)."""
        a, b = key
        q = self.q
        lhs = q.xn([d_action(VElem.mono(a)), b], ["z1", "z2"])
        return _velem_witness(key, lhs, q.xn([a, b], ["z1", "z2"]).diff("z1"))

    def vacuum_absorption(self, key) -> Optional[tuple]:
        """X_{z1..zn,0}(A_n (x) 1) = X_{z1..zn}(A_n)."""
        q = self.q
        vars = ["z%d" % (i + 1) for i in range(len(key))]
        lhs = q.xn(list(key) + [ONE], vars + [None])
        return _velem_witness(key, lhs, q.xn(list(key), vars))


PROPERTIES = {
    "infinitesimal_S_tau": (2, lambda c, k: c.infinitesimal_S(k, "tau")),
    "infinitesimal_S_gamma": (2, lambda c, k: c.infinitesimal_S(k, "gamma")),
    "alpha_vacuum": (1, lambda c, k: c.alpha_vacuum(k)),
    "infinitesimal_Y": (2, lambda c, k: c.infinitesimal_Y(k)),
    "first_slot_covariance": (2, lambda c, k: c.first_slot(k)),
    "vacuum_absorption_1": (1, lambda c, k: c.vacuum_absorption(k)),
    "vacuum_absorption_2": (2, lambda c, k: c.vacuum_absorption(k)),
    "vacuum_absorption_3": (3, lambda c, k: c.vacuum_absorption(k)),
}


def verify_property(name: str, q: QVA, max_weight: int = 3) -> AxiomReport:
    arity, fn = PROPERTIES[name]
    checker = PropertyChecker(q)
    start = time.perf_counter()
    n, witness = 0, None
    for key in basis_tuples(arity, max_weight):
        n += 1
        witness = fn(checker, key)
        if witness is not None:
            break
    return AxiomReport(name, fn.__doc__ or name, n, q.spec, witness is None, witness, time.perf_counter() - start)
