"""Singular multiplications X, vertex operators Y and modes for a bicharacter."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from ..bichar import (
    BicharBase,
    Bicharacter,
    Shifted,
    SMap,
    VOViolation,
    YBichar,
    braiding_R,
    translation_Rgamma,
)
from ..fdcalc import Poly, TSeries
from ..hopf import ONE, Tensor, VElem, VMono, _add_into, mono_coproduct_n, mono_dpow, mono_mul
from .series import VSeries, YLaurent, y_series

State = Union[VElem, VMono]


@dataclass(frozen=True)
class TruncationSpec:
    """Desk-scale truncation: t-order, exponent window and output weight cap."""

    t_order: int = 3
    z_window: int = 4
    weight_cap: int = 5

    def __post_init__(self):
        if self.t_order < 0 or self.z_window < 0 or self.weight_cap < 0:
            raise ValueError("truncation parameters must be non-negative")


def as_velem(x: State, T: int) -> VElem:
    """Coerce to a VElem with TSeries coefficients."""
    if isinstance(x, VMono):
        return VElem({x: TSeries.one(T)})
    return VElem({k: c if isinstance(c, TSeries) else TSeries.const(c, T) for k, c in x.terms.items()})


def _monos(x: State):
    if isinstance(x, VMono):
        return [(x, mpq(1))]
    return list(x.terms.items())


class QVA:
    """The quantum vertex algebra attached to a bicharacter r.

    All results are exact within ``spec``: t-series are truncated at
    ``spec.t_order`` and V-valued outputs keep monomials of weight at
    most ``spec.weight_cap`` unless a method says otherwise.
    """

    def __init__(self, r: Bicharacter, spec: TruncationSpec = TruncationSpec()):
        if r.T < spec.t_order:
            raise ValueError("bicharacter truncated below the requested t-order")
        self.r = r
        self.spec = spec
        self.T = spec.t_order
        self._pairs: Dict[Tuple[str, Optional[str]], BicharBase] = {}
        self._yl: Dict[str, YLaurent] = {}
        self._R = None
        self._Rg = None
        self._smaps: Dict[str, SMap] = {}

    # bicharacter views ---------------------------------------------------
    def pair(self, x: Optional[str], y: Optional[str]) -> BicharBase:
        """r_{x,y}; a None variable means 0."""
        key = (x, y)
        b = self._pairs.get(key)
        if b is None:
            if x is None and y is None:
                raise ValueError("both variables are zero")
            if y is None:
                b = YBichar(self.r, x)
            elif x is None:
                ox, oy = self.r.varpair
                b = Shifted(self.r, {ox: {}, oy: {y: 1}}, (None, y))
            else:
                b = self.r.at(x, y)
            self._pairs[key] = b
        return b

    def ylaurent(self, var: str) -> YLaurent:
        yl = self._yl.get(var)
        if yl is None:
            yl = YLaurent(self.pair(var, None))
            self._yl[var] = yl
        return yl

    @property
    def R(self) -> Bicharacter:
        """Braiding bicharacter R = r^-1 * r^tau."""
        if self._R is None:
            self._R = braiding_R(self.r)
        return self._R

    @property
    def Rgamma(self) -> Bicharacter:
        """Translation bicharacter R^gamma = r^-1 * r^gamma."""
        if self._Rg is None:
            self._Rg = translation_Rgamma(self.r, "gamma")
        return self._Rg

    def R_at(self, x: str, y: str) -> BicharBase:
        key = ("R", x, y)
        b = self._pairs.get(key)
        if b is None:
            b = self.R.at(x, y)
            self._pairs[key] = b
        return b

    def Rgamma_at(self, x: Optional[str], y: Optional[str], gamma: str) -> BicharBase:
        """R^gamma_{x,y} with gamma renamed; None means 0 (e.g. R^{z2}_{z3,0})."""
        key = ("Rg", x, y, gamma)
        b = self._pairs.get(key)
        if b is None:
            ox, oy = self.Rgamma.varpair
            mapping = {ox: {x: 1} if x else {}, oy: {y: 1} if y else {}, "gamma": {gamma: 1}}
            b = Shifted(self.Rgamma, mapping, (x, y))
            self._pairs[key] = b
        return b

    def s_tau(self) -> SMap:
        if "tau" not in self._smaps:
            self._smaps["tau"] = SMap(self.R)
        return self._smaps["tau"]

    def s_gamma(self) -> SMap:
        if "gamma" not in self._smaps:
            self._smaps["gamma"] = SMap(self.Rgamma)
        return self._smaps["gamma"]

    # singular multiplication ---------------------------------------------
    def _exp_product(self, selfs: Sequence[VMono], vars: Sequence[Optional[str]], cap: int):
        """prod_i e^{z_i D} selfs[i], output monomials of weight <= cap."""
        m = abs(sum(a.m for a in selfs))
        budget = cap - m - sum(a.gweight for a in selfs)
        if budget < 0:
            return {}
        acc: Dict[VMono, Poly] = {ONE: Poly.const(1)}
        used = 0
        for a, v in zip(selfs, vars):
            nxt: Dict[VMono, Poly] = {}
            for b, p in acc.items():
                spent = b.gweight - used
                kmax = budget - spent if v is not None else 0
                for k in range(kmax + 1):
                    for d, c in mono_dpow(a, k):
                        q = p * Poly.var(v, k, c) if k else p.scale(c)
                        _add_into(nxt, mono_mul(b, d), q)
            used += a.gweight
            acc = nxt
        return acc

    def xn(self, states: Sequence[State], vars: Sequence[Optional[str]], cap: Optional[int] = None) -> VElem:
        """X_{z_1..z_n}(a_1 (x) ... (x) a_n) in closed bicharacter form.

        A None variable stands for 0 (only allowed in the last slot).
        """
        if len(states) != len(vars):
            raise ValueError("one variable per state")
        if any(v is None for v in vars[:-1]):
            raise ValueError("only the last variable may be 0")
        cap = self.spec.weight_cap if cap is None else cap
        out: Dict[VMono, TSeries] = {}
        for combo in product(*[_monos(s) for s in states]):
            coef = mpq(1)
            for _, c in combo:
                coef = coef * c
            part = self._xn_monos(tuple(k for k, _ in combo), tuple(vars), cap)
            for k, v in part.items():
                _add_into(out, k, v * coef)
        return VElem(out)

    def _xn_monos(self, monos: Tuple[VMono, ...], vars, cap) -> Dict[VMono, TSeries]:
        n = len(monos)
        T = self.T
        legs = [mono_coproduct_n(a, n) for a in monos]
        pairs = {(i, j): self.pair(vars[i], vars[j]) for i in range(n) for j in range(i + 1, n)}
        groups: Dict[Tuple[VMono, ...], TSeries] = {}
        for combo in product(*legs):
            c = 1
            for _, k in combo:
                c *= k
            S = None
            for (i, j), rb in pairs.items():
                v = rb.eval_mono(combo[i][0][j], combo[j][0][i])
                if not v:
                    S = False
                    break
                S = v if S is None else S * v
            if S is False:
                continue
            if S is None:
                S = TSeries.one(T)
            selfs = tuple(combo[i][0][i] for i in range(n))
            _add_into(groups, selfs, S.scale(c))
        out: Dict[VMono, TSeries] = {}
        for selfs, S in groups.items():
            for k, p in self._exp_product(selfs, vars, cap).items():
                _add_into(out, k, S * p)
        return out

    def x2(self, a: State, b: State, cap: Optional[int] = None) -> VElem:
        """X_{z1,z2}(a (x) b); raises VOViolation on a pole at z2 = 0."""
        out = self.xn([a, b], ["z1", "z2"], cap)
        for c in out.terms.values():
            if "z2" in c.f.num.vars and c.f.num.min_exp("z2") < 0:
                raise VOViolation("X_{z1,z2} has a pole at z2 = 0")
            if any(f == (("z2", 1),) for f, _ in c.f.den):
                raise VOViolation("X_{z1,z2} has a pole at z2 = 0")
        return out

    def y(self, a: State, b: State, var: str = "z", cap: Optional[int] = None) -> VElem:
        """Y(a, var)b as a V-valued Laurent polynomial (weight <= cap exact)."""
        return self.xn([a, b], [var, None], cap)

    y_apply = y

    # series form ------------------------------------------------------------
    def y_series(self, A, B, var: str, top: int, cap: Optional[int] = None):
        """(Y(A,var)B exact for var-exponent <= top, lowest var-exponent)."""
        return y_series(self.ylaurent(var), A, B, top, self.T, cap)

    def mode(self, a: State, n: int, b: State) -> VElem:
        """a_(n) b = Res_z Y(a,z) b z^n, exact (no weight cap)."""
        s, _ = self.y_series(a, b, "z", -n - 1)
        return s.coeff("z", -n - 1).to_velem(self.T)

    state_nproduct = mode

    def mode_bound(self, a: State, b: State) -> int:
        """Largest n with a_(n) b possibly nonzero."""
        yl = self.ylaurent("z")
        lows = [yl.low(x, y) for x, _ in _monos(a) for y, _ in _monos(b)]
        lows = [e for e in lows if e is not None]
        return -1 - min(lows) if lows else -1

    def apply_mode(self, a: State, n: int, B: VSeries) -> VSeries:
        """a_(n) applied to a V-valued series (coefficientwise, exact)."""
        s, _ = self.y_series(a, B, "zmode", -n - 1)
        return s.coeff("zmode", -n - 1)

    # tensors -----------------------------------------------------------------
    def tensor_pair(self, a: State, b: State) -> Tensor:
        return Tensor.pure(as_velem(a, self.T), as_velem(b, self.T))
