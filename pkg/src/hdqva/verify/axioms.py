"""The axiom catalogue of an H_D-quantum vertex algebra, checked on basis tuples.

Both sides of every axiom are computed independently from the bicharacter
data and compared exactly.  Series in auxiliary shift variables (the
covariance and compatibility axioms) are compared order by order up to
``shift_order``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..bichar import BicharBase, Shifted, SMap
from ..fdcalc import Poly, TSeries
from ..hopf import ONE, Tensor, VElem, VMono, _add_into, d_action, exp_zD, mono_coproduct, mono_dpow, mono_mul, mono_str
from ..qva import QVA, TruncationSpec
from ..qva.compose import ordered, reordered
from ..qva.fields import Fields, diagonal_pole_order, diagonal_power
from .tuples import basis_tuples, generators


class UnknownAxiom(KeyError):
    pass


@dataclass
class AxiomReport:
    axiom: str
    statement: str
    tested: int
    spec: TruncationSpec
    ok: bool
    witness: Optional[tuple] = None
    seconds: float = 0.0
    detail: Dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = "%s %s: %d tuples (%.2fs)" % (status, self.axiom, self.tested, self.seconds)
        if self.witness is not None:
            out += "\n  witness: %s" % (self.witness,)
        return out

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "statement": self.statement,
            "tested": self.tested,
            "ok": self.ok,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
            "spec": {"t_order": self.spec.t_order, "z_window": self.spec.z_window,
                     "weight_cap": self.spec.weight_cap},
        }


def _names(key) -> str:
    return " (x) ".join(mono_str(m) for m in key)


def _tensor_witness(key, lhs: Tensor, rhs: Tensor):
    d = lhs.diff_report(rhs)
    if d is None:
        return None
    k, a, b = d
    return (_names(key), _names(k), str(a), str(b))


def _velem_witness(key, lhs: VElem, rhs: VElem):
    diff = lhs - rhs
    if not diff:
        return None
    k = sorted(diff.terms, key=lambda m: (m.weight, str(m)))[0]
    return (_names(key), mono_str(k), str(lhs.terms.get(k)), str(rhs.terms.get(k)))


# graded series: {(shift_degree, key): TSeries} ------------------------------
Graded = Dict[Tuple[int, tuple], TSeries]


def _gadd(acc: Graded, deg: int, key, c: TSeries):
    _add_into(acc, (deg, key), c)


def _gtensor(g: Graded, n: int) -> Dict[int, Tensor]:
    out: Dict[int, dict] = {}
    for (deg, key), c in g.items():
        _add_into(out.setdefault(deg, {}), key, c)
    return {d: Tensor(v, n) for d, v in out.items()}


def _power(var: str, k: int, T: int) -> TSeries:
    return TSeries.from_poly(Poly.var(var, k), T)


class AxiomChecker:
    """Axiom checks for the QVA ``q`` on basis tuples.

    ``shift_order`` bounds the order in the auxiliary shift variables
    (gamma in the covariance axiom, w1/w2 in compatibility).
    """

    def __init__(self, q: QVA, shift_order: int = 2):
        self.q = q
        self.T = q.T
        self.K = shift_order
        self._smaps: Dict[tuple, SMap] = {}

    @property
    def cap(self) -> int:
        return self.q.spec.weight_cap

    # S maps by name ------------------------------------------------------------
    def rho(self, kind: str, x: str, y: str, gamma: Optional[Dict[str, int]] = None) -> BicharBase:
        q = self.q
        if kind == "tau":
            return q.R_at(x, y)
        if kind == "gamma":
            ox, oy = q.Rgamma.varpair
            mp = {ox: {x: 1}, oy: {y: 1}, "gamma": dict(gamma) if gamma is not None else {"gamma": 1}}
            key = ("rho", x, y, tuple(sorted(mp["gamma"].items())))
            b = q._pairs.get(key)
            if b is None:
                b = Shifted(q.Rgamma, mp, (x, y))
                q._pairs[key] = b
            return b
        raise ValueError("unknown braiding kind %r" % kind)

    def smap(self, kind: str, x: str, y: str, gamma=None) -> SMap:
        key = (kind, x, y, None if gamma is None else tuple(sorted(gamma.items())))
        s = self._smaps.get(key)
        if s is None:
            s = SMap(self.rho(kind, x, y, gamma))
            self._smaps[key] = s
        return s

    def S(self, kind: str, t: Tensor, i: int, j: int, x: str, y: str, gamma=None) -> Tensor:
        return self.smap(kind, x, y, gamma)(t, i, j)

    def basis(self, *monos: VMono) -> Tensor:
        return Tensor({tuple(monos): TSeries.one(self.T)}, len(monos))

    # vacuum -----------------------------------------------------------------------
    def vacuum(self, key) -> Optional[tuple]:
        (a,) = key
        q, cap, T = self.q, self.cap, self.T
        ea = VElem.mono(a)
        for var, pair in (("z1", (a, ONE)), ("z2", (ONE, a))):
            lhs = q.xn(list(pair), ["z1", "z2"])
            rhs = VElem({k: TSeries.from_poly(p, T) for k, p in exp_zD(ea, var, cap).items()})
            w = _velem_witness(key, lhs, rhs)
            if w:
                return ("X",) + w
        for kind in ("tau", "gamma"):
            for pair in ((a, ONE), (ONE, a)):
                t = self.basis(*pair)
                w = _tensor_witness(key, self.S(kind, t, 0, 1, "z1", "z2"), t)
                if w:
                    return (kind,) + w
        return None

    # covariance -------------------------------------------------------------------
    def cov_X(self, key) -> Optional[tuple]:
        a, b = key
        q = self.q
        lhs = q.xn([a, d_action(VElem.mono(b))], ["z1", "z2"])
        rhs = q.xn([a, b], ["z1", "z2"]).diff("z2")
        return _velem_witness(key, lhs, rhs)

    def _taylor_on_pair(self, kind: str, a: VMono, b: VMono, x: str, y: str, coef: str, shift_slot: int,
                        gamma=None):
        """i-expansion of S_{x + w, y} (shift_slot 0) or S_{x, y + w} (slot 1) in w = coef,
        orders 0..K: list of (order, (a1, b1), value)."""
        sm = self.smap(kind, x, y, gamma)
        var = x if shift_slot == 0 else y
        out = []
        for (a1, b1), v in sm.on_pair(a, b):
            for j in range(self.K + 1):
                c = v.divided_diff(var, j) if j else v
                if c:
                    out.append((j, (a1, b1), c * _power(coef, j, self.T)))
        return out

    def cov_S(self, key, kind: str) -> Optional[tuple]:
        """(1 (x) e^{wD}) i S_{z1,z2+w} = S_{z1,z2}(1 (x) e^{wD}), orders w^k, k <= K."""
        a, b = key
        T = self.T
        lhs: Graded = {}
        for j, (a1, b1), c in self._taylor_on_pair(kind, a, b, "z1", "z2", "w", 1):
            for l in range(self.K - j + 1):
                for d, e in mono_dpow(b1, l):
                    _gadd(lhs, j + l, (a1, d), c * _power("w", l, T).scale(e))
        rhs: Graded = {}
        for k in range(self.K + 1):
            for d, e in mono_dpow(b, k):
                for (a1, b1), v in self.smap(kind, "z1", "z2").on_pair(a, d):
                    _gadd(rhs, k, (a1, b1), v * _power("w", k, T).scale(e))
        L, R = _gtensor(lhs, 2), _gtensor(rhs, 2)
        for k in range(self.K + 1):
            w = _tensor_witness(key, L.get(k, Tensor({}, 2)), R.get(k, Tensor({}, 2)))
            if w:
                return (kind, "order %d" % k) + w
        return None

    def cov_S_tau(self, key):
        return self.cov_S(key, "tau")

    def cov_S_gamma(self, key):
        return self.cov_S(key, "gamma")

    def cov_mult(self, key) -> Optional[tuple]:
        """e^{gamma D} X_{z1,z2} S^(gamma)_{z1,z2} = X_{z1+gamma,z2+gamma}."""
        a, b = key
        q, cap, T = self.q, self.cap, self.T
        lhs: Dict[VMono, TSeries] = {}
        for (a1, b1), v in self.smap("gamma", "z1", "z2").on_pair(a, b):
            for u, c in q.xn([a1, b1], ["z1", "z2"]).terms.items():
                for d, p in exp_zD(VElem.mono(u), "gamma", cap).items():
                    _add_into(lhs, d, c * v * TSeries.from_poly(p, T))
        shift = {"z1": {"z1": 1, "gamma": 1}, "z2": {"z2": 1, "gamma": 1}}
        rhs = q.xn([a, b], ["z1", "z2"]).subs(shift)
        return _velem_witness(key, VElem(lhs).restrict_weight(cap), rhs)

    # Yang-Baxter and unitarity ----------------------------------------------------
    def yang_baxter(self, key, kind: str = "tau") -> Optional[tuple]:
        t = self.basis(*key)
        S = self.S
        lhs = S(kind, S(kind, S(kind, t, 1, 2, "z2", "z3"), 0, 2, "z1", "z3"), 0, 1, "z1", "z2")
        rhs = S(kind, S(kind, S(kind, t, 0, 1, "z1", "z2"), 0, 2, "z1", "z3"), 1, 2, "z2", "z3")
        w = _tensor_witness(key, lhs, rhs)
        return None if w is None else (kind,) + w

    def yang_baxter_tau(self, key):
        return self.yang_baxter(key, "tau")

    def yang_baxter_gamma(self, key):
        return self.yang_baxter(key, "gamma")

    def unitarity(self, key) -> Optional[tuple]:
        """S_{z1,z2} tau S_{z2,z1} tau = id."""
        t = self.basis(*key)
        u = self.S("tau", t.swap(0, 1), 0, 1, "z2", "z1").swap(0, 1)
        return _tensor_witness(key, self.S("tau", u, 0, 1, "z1", "z2"), t)

    # group laws of the translation map ----------------------------------------------
    def gamma_group(self, key) -> Optional[tuple]:
        """S^(g1)_{z1,z2} S^(g2)_{z1+g1,z2+g1} = S^(g1+g2)_{z1,z2}."""
        a, b = key
        q = self.q
        t = self.basis(a, b)
        ox, oy = q.Rgamma.varpair
        shifted = Shifted(q.Rgamma, {ox: {"z1": 1, "g1": 1}, oy: {"z2": 1, "g1": 1}, "gamma": {"g2": 1}})
        inner = SMap(shifted)(t)
        lhs = self.S("gamma", inner, 0, 1, "z1", "z2", {"g1": 1})
        rhs = self.S("gamma", t, 0, 1, "z1", "z2", {"g1": 1, "g2": 1})
        return _tensor_witness(key, lhs, rhs)

    def s_at_zero(self, key) -> Optional[tuple]:
        t = self.basis(*key)
        return _tensor_witness(key, self.S("gamma", t, 0, 1, "z1", "z2", {}), t)

    # compatibility with multiplication ----------------------------------------------
    def _x_graded(self, a: VMono, b: VMono):
        """X_{w1,w2}(a (x) b) with the e^{wD} factors graded by D-order (<= K):
        list of (order, monomial, coefficient)."""
        T = self.T
        r = self.q.pair("w1", "w2")
        out: Dict[Tuple[int, VMono], TSeries] = {}
        for a1, a2, x in mono_coproduct(a):
            for b1, b2, y in mono_coproduct(b):
                v = r.eval_mono(a2, b2)
                if not v:
                    continue
                v = v.scale(x * y)
                for k1 in range(self.K + 1):
                    for da, ea in mono_dpow(a1, k1):
                        for k2 in range(self.K - k1 + 1):
                            for db, eb in mono_dpow(b1, k2):
                                c = v * TSeries.from_poly(Poly.from_dict(("w1", "w2"), {(k1, k2): ea * eb}), T)
                                _add_into(out, (k1 + k2, mono_mul(da, db)), c)
        return [(k, m, c) for (k, m), c in out.items()]

    def _shifted_leg(self, g: Graded, i: int, j: int, n: int, x: str, y: str, wvar: str, slot: int) -> Graded:
        """Apply the Taylor-expanded S^{ij} with the ``slot`` variable shifted by wvar."""
        out: Graded = {}
        for (deg, key), c in g.items():
            for o, (p, s), v in self._taylor_on_pair("tau", key[i], key[j], x, y, wvar, slot):
                if deg + o > self.K:
                    continue
                nk = list(key)
                nk[i], nk[j] = p, s
                _gadd(out, deg + o, tuple(nk), c * v)
        return out

    def compat_left(self, key, swapped: bool = False) -> Optional[tuple]:
        """S_{z1,z2}(X_{w1,w2} (x) 1) = (X_{w1,w2} (x) 1) i S^{23}_{z1+w_b,z2} S^{13}_{z1+w_a,z2}.

        The leg at position w1 (a) pairs with c at z1 + w1 and the leg at w2 (b)
        at z1 + w2; ``swapped`` exchanges the two shifts.
        """
        a, b, c = key
        sm = self.smap("tau", "z1", "z2")
        lhs: Graded = {}
        for o, u, cu in self._x_graded(a, b):
            for (p, s), v in sm.on_pair(u, c):
                _gadd(lhs, o, (p, s), cu * v)
        w13, w23 = ("w2", "w1") if swapped else ("w1", "w2")
        g: Graded = {(0, key): TSeries.one(self.T)}
        g = self._shifted_leg(g, 0, 2, 3, "z1", "z2", w13, 0)
        g = self._shifted_leg(g, 1, 2, 3, "z1", "z2", w23, 0)
        rhs: Graded = {}
        for (deg, (x, y, z)), cz in g.items():
            for o, u, cu in self._x_graded(x, y):
                if deg + o <= self.K:
                    _gadd(rhs, deg + o, (u, z), cz * cu)
        return self._graded_witness(key, lhs, rhs)

    def compat_right(self, key) -> Optional[tuple]:
        """S_{z1,z2}(1 (x) X_{w1,w2}) = (1 (x) X_{w1,w2}) i S^{12}_{z1,z2+w1} S^{13}_{z1,z2+w2}."""
        a, b, c = key
        sm = self.smap("tau", "z1", "z2")
        lhs: Graded = {}
        for o, u, cu in self._x_graded(b, c):
            for (p, s), v in sm.on_pair(a, u):
                _gadd(lhs, o, (p, s), cu * v)
        g: Graded = {(0, key): TSeries.one(self.T)}
        g = self._shifted_leg(g, 0, 2, 3, "z1", "z2", "w2", 1)
        g = self._shifted_leg(g, 0, 1, 3, "z1", "z2", "w1", 1)
        rhs: Graded = {}
        for (deg, (x, y, z)), cx in g.items():
            for o, u, cu in self._x_graded(y, z):
                if deg + o <= self.K:
                    _gadd(rhs, deg + o, (x, u), cx * cu)
        return self._graded_witness(key, lhs, rhs)

    def _graded_witness(self, key, lhs: Graded, rhs: Graded):
        L, R = _gtensor(lhs, 2), _gtensor(rhs, 2)
        for k in range(self.K + 1):
            w = _tensor_witness(key, L.get(k, Tensor({}, 2)), R.get(k, Tensor({}, 2)))
            if w:
                return ("order %d" % k,) + w
        return None

    # locality -----------------------------------------------------------------------
    def locality(self, key) -> Optional[tuple]:
        """(z1-z2)^N X_{z1,z2,0}(a(x)b(x)c) has no pole on the diagonal for
        N = locality_order(a, b); with the vacuum or generators as c the two
        box expansions also agree after multiplying by (z1-z2)^N."""
        a, b, c = key
        q = self.q
        N = locality_order(q, a, b, self.T)
        x = q.xn([a, b, c], ["z1", "z2", None])
        if diagonal_pole_order(x) > N:
            return (_names(key), "pole order %d > N = %d" % (diagonal_pole_order(x), N))
        if c in generators() and a.weight + b.weight <= 2:
            L = q.spec.z_window
            F = diagonal_power(N, self.T)
            box = {"z1": L, "z2": L}
            d = ordered(q, a, b, c, box, F=F) - reordered(q, a, b, c, box, F=F)
            if d:
                return (_names(key), "expansions differ", str(d)[:200])
        return None


def locality_order(q: QVA, a, b, k: Optional[int] = None) -> int:
    """Smallest N with (z1-z2)^N [a,b]_S = 0 mod t^{k+1}."""
    T = q.T if k is None else min(k, q.T)
    fd = Fields(q).scomm_closed(a, b)
    orders = []
    for n, v in fd.terms.items():
        if any(c.with_order(T) for c in v.terms.values()):
            orders.append(n)
    return max(orders) + 1 if orders else 0


# catalogue -------------------------------------------------------------------
@dataclass(frozen=True)
class Axiom:
    name: str
    arity: int
    statement: str
    method: str


CATALOGUE: Dict[str, Axiom] = {a.name: a for a in [
    Axiom("vacuum", 1, "X(a(x)1)=e^{z1 D}a, X(1(x)a)=e^{z2 D}a, S(a(x)1)=a(x)1, S(1(x)a)=1(x)a", "vacuum"),
    Axiom("cov_X", 2, "X_{z1,z2}(a(x)Db) = d/dz2 X_{z1,z2}(a(x)b)", "cov_X"),
    Axiom("cov_S_tau", 2, "(1(x)e^{wD}) S^tau_{z1,z2+w} = S^tau_{z1,z2}(1(x)e^{wD})", "cov_S_tau"),
    Axiom("cov_S_gamma", 2, "(1(x)e^{wD}) S^gamma_{z1,z2+w} = S^gamma_{z1,z2}(1(x)e^{wD})", "cov_S_gamma"),
    Axiom("cov_mult", 2, "e^{gamma D} X_{z1,z2} S^gamma_{z1,z2} = X_{z1+gamma,z2+gamma}", "cov_mult"),
    Axiom("yang_baxter", 3, "S12 S13 S23 = S23 S13 S12 (braiding map)", "yang_baxter_tau"),
    Axiom("yang_baxter_gamma", 3, "S12 S13 S23 = S23 S13 S12 (translation map)", "yang_baxter_gamma"),
    Axiom("compat_left", 3, "S(X_{w1,w2}(x)1) = (X_{w1,w2}(x)1) S23_{z1+w2,z2} S13_{z1+w1,z2}", "compat_left"),
    Axiom("compat_right", 3, "S(1(x)X_{w1,w2}) = (1(x)X_{w1,w2}) S12_{z1,z2+w1} S13_{z1,z2+w2}", "compat_right"),
    Axiom("unitarity", 2, "S_{z1,z2} tau S_{z2,z1} tau = 1", "unitarity"),
    Axiom("gamma_group", 2, "S^(g1)_{z1,z2} S^(g2)_{z1+g1,z2+g1} = S^(g1+g2)_{z1,z2}", "gamma_group"),
    Axiom("s_at_zero", 2, "S^(gamma=0) = 1", "s_at_zero"),
    Axiom("locality", 3, "(z1-z2)^N Y(a,z1)Y(b,z2)c = (z1-z2)^N Y(b,z2)Y(a,z1) S^tau(b(x)a)(x)c", "locality"),
]}


def verify_axiom(name: str, tuples: Optional[Iterable[tuple]] = None, spec: Optional[TruncationSpec] = None,
                 q: Optional[QVA] = None, max_weight: int = 4, shift_order: int = 2) -> AxiomReport:
    """Check the named axiom on every tuple (default: all basis tuples of total weight <= max_weight)."""
    if name not in CATALOGUE:
        raise UnknownAxiom(name)
    ax = CATALOGUE[name]
    if q is None:
        from ..bichar import main_example
        spec = spec or TruncationSpec()
        q = QVA(main_example(spec.t_order), spec)
    spec = q.spec
    checker = AxiomChecker(q, shift_order)
    fn: Callable = getattr(checker, ax.method)
    if tuples is None:
        tuples = basis_tuples(ax.arity, max_weight)
    start = time.perf_counter()
    n = 0
    witness = None
    for key in tuples:
        n += 1
        witness = fn(tuple(key))
        if witness is not None:
            break
    return AxiomReport(name, ax.statement, n, spec, witness is None, witness, time.perf_counter() - start)


def verify_all(q: QVA, max_weight: int = 4, shift_order: int = 2,
               names: Optional[Sequence[str]] = None) -> List[AxiomReport]:
    return [verify_axiom(n, q=q, max_weight=max_weight, shift_order=shift_order) for n in (names or CATALOGUE)]
