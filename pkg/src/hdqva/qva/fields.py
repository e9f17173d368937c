"""Fields built from vertex operators: S-commutators, (n)-products of
fields, normal ordered products and commutators of modes."""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional

from gmpy2 import mpq

from ..fdcalc import Distribution, Poly, RatFun, TSeries, delta_extract, delta_raw
from ..hopf import ONE, VElem, VMono, _add_into, d_action, mono_coproduct, mono_str, monomials, multiply
from .core import QVA, State, _monos
from .compose import ordered, reordered
from .series import LOW, VSeries, degree_range, expand_window, small_low


class RouteMismatch(Exception):
    """Two independent computations of the same quantity disagree."""


class Field:
    """sum_v f_v(z) Y(v, z): a field written through vertex operators.

    ``terms`` is a VElem whose coefficients are t-series in ``var``.
    """

    __slots__ = ("terms", "var")

    def __init__(self, terms: VElem, var: str = "z"):
        self.terms = terms
        self.var = var

    def apply(self, q: QVA, c: State, cap: Optional[int] = None) -> VElem:
        out: Dict[VMono, TSeries] = {}
        for v, f in self.terms.terms.items():
            for k, g in q.y(v, c, self.var, cap).terms.items():
                _add_into(out, k, g * f)
        return VElem(out)

    def rename(self, var: str) -> "Field":
        if var == self.var:
            return self
        return Field(self.terms.map_coeffs(lambda c: c.rename({self.var: var})), var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for v, f in self.terms.items():
            fs = str(f)
            name = "1" if v == ONE else "%s(%s)" % (mono_str(v), self.var)
            if v == ONE:
                parts.append("(%s)" % fs)
            else:
                parts.append("(%s)*%s" % (fs, name))
        return " + ".join(parts)

    __repr__ = __str__


class FieldDistribution:
    """sum_n F_n(z2) d^(n)_{z2} delta(z1, z2) with field coefficients F_n."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, VElem]):
        self.terms = {n: c for n, c in sorted(terms.items()) if c}

    @staticmethod
    def from_distribution(d: Distribution) -> "FieldDistribution":
        return FieldDistribution(dict(d.normalize().terms))

    def field(self, n: int) -> Field:
        return Field(self.terms.get(n, VElem()), "z2")

    def max_order(self) -> int:
        return max(self.terms) if self.terms else -1

    def apply(self, q: QVA, c: State, cap: Optional[int] = None) -> Distribution:
        return Distribution({n: self.field(n).apply(q, c, cap) for n in self.terms})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldDistribution):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        rows = []
        for n, c in self.terms.items():
            d = "delta(z1,z2)" if n == 0 else "d_z2^(%d) delta(z1,z2)" % n
            rows.append("[%s] %s" % (self.field(n), d))
        return " + ".join(rows)

    __repr__ = __str__

    def to_json(self) -> List[dict]:
        return [
            {"derivative_order": n, "coefficient_by_basis_monomial": {mono_str(k): str(f) for k, f in c.items()}}
            for n, c in self.terms.items()
        ]


def test_states(max_weight: int) -> List[VMono]:
    return monomials(max_weight)


def diagonal_power(n: int, T: int, x: str = "z1", y: str = "z2") -> TSeries:
    """(x - y)^n as a t-series."""
    if n >= 0:
        return TSeries.make(RatFun.linear({x: 1, y: -1}) ** n, T)
    return TSeries.make(RatFun.inv_linear({x: 1, y: -1}, -n), T)


class Fields:
    """Field-level computations on top of a QVA."""

    def __init__(self, q: QVA, test_weight: int = 2):
        self.q = q
        self.T = q.T
        self.test_weight = test_weight

    # S-commutator ------------------------------------------------------------
    def scomm_on(self, a: State, b: State, c: State, cap: Optional[int] = None) -> Distribution:
        """Definition route: delta of X_{z1,z2,0}(a (x) b (x) c)."""
        x = self.q.xn([a, b, c], ["z1", "z2", None], cap)
        return delta_extract(x, normalize=True)

    def bichar_delta(self, a: VMono, b: VMono, normalize: bool = False) -> Dict[int, TSeries]:
        """The coefficients d_k of delta(r_{z1,z2}(a (x) b)), raw or normalized."""
        v = self.q.pair("z1", "z2").eval_mono(a, b)
        if not v:
            return {}
        raw = delta_raw(v)
        if not normalize:
            return raw
        return dict(Distribution(raw).normalize().terms)

    def scomm_closed(self, a: State, b: State, normalize_d: bool = False) -> FieldDistribution:
        """Closed formula sum_k d_k(a'(x)b') sum_{p+q=k} Y((D^(p)a'')b'', z2) d^(q) delta."""
        acc: Dict[int, Dict[VMono, TSeries]] = {}
        for ma, ca in _monos(a):
            for mb, cb in _monos(b):
                for a1, a2, x in mono_coproduct(ma):
                    for b1, b2, y in mono_coproduct(mb):
                        for k, dk in self.bichar_delta(a1, b1, normalize_d).items():
                            dk = dk * (ca * cb * x * y)
                            for p in range(k + 1):
                                u = multiply(d_action(VElem({a2: mpq(1)}), p, divided=True), VElem({b2: mpq(1)}))
                                row = acc.setdefault(k - p, {})
                                for mono, cu in u.terms.items():
                                    _add_into(row, mono, dk * cu)
        d = Distribution({n: VElem(row) for n, row in acc.items()})
        return FieldDistribution.from_distribution(d)

    def s_commutator(self, a: State, b: State, states: Optional[Iterable[State]] = None,
                     cap: Optional[int] = None) -> FieldDistribution:
        """[a(z1), b(z2)]_S, cross-checked between the two routes."""
        closed = self.scomm_closed(a, b)
        other = self.scomm_closed(a, b, normalize_d=True)
        if closed != other:
            raise RouteMismatch("raw and normalized d_k forms disagree")
        for c in states if states is not None else test_states(self.test_weight):
            lhs = self.scomm_on(a, b, c, cap)
            rhs = closed.apply(self.q, c, cap)
            if lhs != rhs:
                raise RouteMismatch("S-commutator routes differ on %s: %s vs %s" % (_name(c), lhs, rhs))
        return closed

    # (n)-products of fields ----------------------------------------------------
    def nproduct_on(self, a: State, b: State, n: int, c: State, cap: Optional[int] = None) -> VElem:
        """Definition route: Res_{z1} delta(X_{z1,z2,0}(a(x)b(x)c) (z1-z2)^n) in z2."""
        x = self.q.xn([a, b, c], ["z1", "z2", None], cap)
        f = diagonal_power(n, self.T)
        d = delta_extract(x.map_coeffs(lambda s: s * f), normalize=True)
        out = d.pair(0)
        return out if out is not None else VElem()

    def translation_coefficients(self, a2: VMono, b2: VMono, kmax: int) -> Dict[int, TSeries]:
        """Coefficients s_k(z2) of z3^k (k <= kmax) in i_{z2;z3} R^{z2}_{z3,0}(a2 (x) b2)."""
        s = self.q.Rgamma_at("z3", None, "z2").eval_mono(a2, b2)
        if not s:
            return {}
        return taylor_coefficients(s, "z2", "z3", self.T, kmax)

    def nproduct_field(self, a: State, b: State, n: int) -> Field:
        """Translation-map route: sum_k Y((a')_(k+n) b', z) s_k(z)."""
        q = self.q
        out: Dict[VMono, TSeries] = {}
        for ma, ca in _monos(a):
            for mb, cb in _monos(b):
                for a1, a2, x in mono_coproduct(ma):
                    for b1, b2, y in mono_coproduct(mb):
                        top = q.mode_bound(a1, b1)
                        for k, sk in self.translation_coefficients(a2, b2, top - n).items():
                            u = q.mode(a1, k + n, b1)
                            for mono, cu in u.terms.items():
                                _add_into(out, mono, sk * cu * (ca * cb * x * y))
        return Field(VElem(out), "z2")

    def field_nproduct(self, a: State, b: State, n: int, states: Optional[Iterable[State]] = None,
                       cap: Optional[int] = None) -> Field:
        """a(z)_(n) b(z) as a field, checked against the definition on test states."""
        fld = self.nproduct_field(a, b, n)
        for c in states if states is not None else test_states(self.test_weight):
            lhs = self.nproduct_on(a, b, n, c, cap)
            rhs = fld.apply(self.q, c, cap)
            if lhs != rhs:
                raise RouteMismatch("(%d)-product routes differ on %s: %s vs %s" % (n, _name(c), lhs, rhs))
        return fld.rename("z")

    # normal ordered product and OPE ------------------------------------------
    def normal_ordered(self, a: State, b: State, c: State, top: Optional[int] = None,
                       cap: Optional[int] = None) -> VSeries:
        """:a(z1) b(z2): c = [a(z1)b(z2)c]_{z1 >= 0} + [reordered]_{z1 < 0}, box exact."""
        top = self.q.spec.z_window if top is None else top
        box = {"z1": top, "z2": top}
        first = ordered(self.q, a, b, c, box, cap)
        second = reordered(self.q, a, b, c, box, cap)
        hol = first.map(lambda p: _exp_range(p, "z1", 0, None))
        sing = second.map(lambda p: _exp_range(p, "z1", None, -1))
        return hol + sing

    def ope_check(self, a: State, b: State, c: State, top: Optional[int] = None,
                  cap: Optional[int] = None) -> bool:
        """a(z1)b(z2)c = :a(z1)b(z2): c + sum_{n>=0} a(z2)_(n)b(z2)c i_{z1;z2}(z1-z2)^{-n-1}."""
        q = self.q
        T = self.T
        top = q.spec.z_window if top is None else top
        first = ordered(q, a, b, c, {"z1": top, "z2": top}, cap)
        rhs = self.normal_ordered(a, b, c, top, cap)
        x = q.xn([a, b, c], ["z1", "z2", None], cap)
        for n in range(diagonal_pole_order(x)):
            f = VSeries.of(self.nproduct_on(a, b, n, c, cap))
            if not f:
                continue
            low = f.min_exp("z2")
            kern = expand_window(diagonal_power(-n - 1, T), ("z1", "z2"),
                                 {"z1": (LOW, top), "z2": (0, top - low)})
            rhs = rhs + f.mul(kern, T).restrict({"z1": top, "z2": top})
        return first.restrict({"z1": top, "z2": top}) == rhs.restrict({"z1": top, "z2": top})

    # commutators of modes ---------------------------------------------------
    def mode_commutator(self, a: State, m: int, b: State, n: int, c: State) -> VElem:
        """[a_(m), b_(n)] c."""
        q = self.q
        x = q.mode(a, m, q.mode(b, n, c))
        y = q.mode(b, n, q.mode(a, m, c))
        return x - y

    def mode_field_commutator(self, a: State, n: int, b: State, c: State, top: int) -> VSeries:
        """[a_(n), Y(b, z)] c, exact for z-exponents <= top."""
        q = self.q
        yb, _ = q.y_series(b, c, "z", top)
        left = q.apply_mode(a, n, yb)
        right, _ = q.y_series(b, q.mode(a, n, c), "z", top)
        return left - right


def diagonal_pole_order(x: VElem) -> int:
    """Highest power of z1 - z2 in the denominators of x."""
    out = 0
    for c in x.terms.values():
        for f, e in c.f.den:
            if set(v for v, _ in f) == {"z1", "z2"}:
                out = max(out, e)
    return out


def _exp_range(p: Poly, var: str, lo: Optional[int], hi: Optional[int]) -> Poly:
    parts = p.split(var)
    out = Poly.zero(p.vars)
    for e, c in parts.items():
        if (lo is None or e >= lo) and (hi is None or e <= hi):
            out = out + c.shift_exp(var, e)
    return out


def taylor_coefficients(s: TSeries, big: str, small: str, T: int, kmax: int) -> Dict[int, TSeries]:
    """Coefficients of small^k, k <= kmax, in the expansion i_{big;small} s."""
    lo = small_low(s, small)
    _, dmax = degree_range(s, (big, small))
    out = {}
    for k in range(lo, kmax + 1):
        p = expand_window(s, (big, small), {big: (LOW, dmax - k), small: (k, k)})
        if p:
            out[k] = TSeries.from_poly(p.coeff(small, k).trim(), T)
    return out


def _name(c: State) -> str:
    if isinstance(c, VMono):
        return mono_str(c)
    return str(c)
