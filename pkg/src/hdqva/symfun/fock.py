"""Deformed boson Fock space Lambda (x) Z[charge] and the bosonized vertex operators.

Heisenberg modes: h_(-n) = (1 - t^n) p_n and h_(n) = n d/dp_n for n > 0, h_(0) = charge.
With these signs [h_(m), h_(n)] = m (1 - t^|m|) delta_{m+n,0}.

The bosonized charge-n vertex operator is

    e^{n alpha}(z) = Gamma_+(z)^n Gamma_-(z)^{c n} e^{n alpha} z^{n d_alpha},

    Gamma_+(z) = exp(sum_k h_(-k) z^k / k),  Gamma_-(z) = exp(-sum_k h_(k) z^-k / k),

where ``c = +1`` (``convention="consistent"``) reproduces [h_(m), e^{n alpha}(z)] =
n z^m (1 - t^|m|) e^{n alpha}(z) and the bicharacter OPE; ``c = -1``
(``convention="opposite"``) is kept for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Optional, Tuple

from gmpy2 import mpq

from .partitions import InvalidShape, Partition, partitions
from .ring import K, Coef, SymFun, coef, series, t

CONVENTIONS = {"consistent": 1, "opposite": -1}


class FockState:
    """Finite sum over charges l of SymFun (x) e^{l alpha}."""

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[int, SymFun] = None):
        self.parts = {l: f for l, f in (parts or {}).items() if f}

    @staticmethod
    def vacuum(charge: int = 0) -> "FockState":
        return FockState({charge: SymFun.one()})

    @staticmethod
    def of(f: SymFun, charge: int = 0) -> "FockState":
        return FockState({charge: f})

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if isinstance(other, FockState):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __add__(self, other: "FockState") -> "FockState":
        out = dict(self.parts)
        for l, f in other.parts.items():
            out[l] = out[l] + f if l in out else f
        return FockState(out)

    def __neg__(self):
        return FockState({l: -f for l, f in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockState":
        return FockState({l: f.scale(c) for l, f in self.parts.items()})

    def map(self, fn) -> "FockState":
        """Apply a SymFun -> SymFun map chargewise."""
        return FockState({l: fn(f) for l, f in self.parts.items()})

    def shift_charge(self, n: int) -> "FockState":
        return FockState({l + n: f for l, f in self.parts.items()})

    def degree(self) -> int:
        return max((f.degree() for f in self.parts.values()), default=-1)

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        out = []
        for l in sorted(self.parts):
            f = self.parts[l]
            out.append("[%s]*e(%d)" % (f, l) if l else "[%s]" % f)
        return " + ".join(out)

    __repr__ = __str__


# Heisenberg modes ---------------------------------------------------------------------
def heisenberg_action(n: int, s: FockState) -> FockState:
    if n < 0:
        k = -n
        mult = SymFun.p(k).scale(1 - t ** k)
        return s.map(lambda f: mult * f)
    if n > 0:
        return s.map(lambda f: f.d_p(n).scale(n))
    return FockState({l: f.scale(l) for l, f in s.parts.items()})


def heisenberg_commutator(m: int, n: int, s: FockState) -> FockState:
    return heisenberg_action(m, heisenberg_action(n, s)) - heisenberg_action(n, heisenberg_action(m, s))


# Gamma operators ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def gamma_plus_coeff(power: int, a: int) -> SymFun:
    """z^a coefficient of Gamma_+(z)^power, a multiplication operator."""
    out = SymFun()
    for mu in partitions(a):
        c = K.one
        for k, m in mu.multiplicities().items():
            c *= (power * (1 - t ** k) / k) ** m / factorial(m)
        out = out + SymFun({mu: c})
    return out


def gamma_minus_coeff(power: int, b: int, f: SymFun) -> SymFun:
    """z^-b coefficient of Gamma_-(z)^power applied to f."""
    out = SymFun()
    for mu in partitions(b):
        g = f
        c = mpq(1)
        for k, m in mu.multiplicities().items():
            for _ in range(m):
                g = g.d_p(k)
            c *= mpq((-power) ** m, factorial(m))
        if g:
            out = out + g.scale(c)
    return out


def gamma_pm_apply(sign: str, power: int, window: int, s: FockState) -> Dict[int, FockState]:
    """{exponent: coefficient} of Gamma_sign(z)^power s for |exponent| <= window."""
    if sign == "+":
        return {a: FockState({l: gamma_plus_coeff(power, a) * f for l, f in s.parts.items()})
                for a in range(window + 1)}
    if sign == "-":
        out = {}
        for b in range(window + 1):
            st = FockState({l: gamma_minus_coeff(power, b, f) for l, f in s.parts.items()})
            if st:
                out[-b] = st
        return out
    raise ValueError("sign must be '+' or '-'")


def vertex_coeff(n: int, k: int, s: FockState, convention: str = "consistent") -> FockState:
    """z^k coefficient of e^{n alpha}(z) s."""
    c = CONVENTIONS[convention]
    out = FockState()
    for l, f in s.parts.items():
        shift = n * l
        for b in range(f.degree() + 1):
            a = k - shift + b
            if a < 0:
                continue
            g = gamma_minus_coeff(c * n, b, f)
            if g:
                out = out + FockState({l + n: gamma_plus_coeff(n, a) * g})
    return out


def vertex_low(n: int, s: FockState) -> int:
    """Lowest z-exponent of e^{n alpha}(z) s."""
    return min((n * l - f.degree() for l, f in s.parts.items()), default=0)


def jing_operator(m: int, window: Tuple[int, int], s: FockState, convention: str = "consistent") -> Dict[int, FockState]:
    """{k: z^k coefficient} of Y(D^(m) e^alpha, z) s = d^(m)/dz^(m) e^alpha(z) s for k in [lo, hi]."""
    lo, hi = window
    out = {}
    for k in range(lo, hi + 1):
        # d^(m) z^{k+m} = binom(k+m, m) z^k, negative exponents included
        st = vertex_coeff(1, k + m, s, convention).scale(_gbinom(k + m, m))
        if st:
            out[k] = st
    return out


def _gbinom(n: int, k: int) -> mpq:
    num = mpq(1)
    for i in range(k):
        num *= n - i
    return num / factorial(k)


# the Hall-Littlewood connection --------------------------------------------------------
def rho(l: int) -> Tuple[int, ...]:
    return tuple(range(l, 0, -1))


def jing_constant_term(mtilde, convention: str = "consistent") -> FockState:
    """Constant term of Y(D^(m_1) e^alpha, z_1) ... Y(D^(m_l) e^alpha, z_l) 1."""
    parts = tuple(int(x) for x in mtilde)
    l = len(parts)
    if l < 1:
        raise InvalidShape("need at least one part")
    _shifted(parts, rho(l))
    state = FockState.vacuum()
    for m in reversed(parts):
        # z^0 coefficient of d^(m) F(z) is the z^m coefficient of F
        state = vertex_coeff(1, m, state, convention)
    return state


def _shifted(parts, sub) -> Partition:
    diff = tuple(a - b for a, b in zip(parts, sub))
    return Partition.strict(diff)


@dataclass
class JingReport:
    mtilde: Tuple[int, ...]
    target: Partition              # mtilde - rho
    constant_term: FockState
    oracle: SymFun                 # Q_{mtilde - rho}
    charge_ok: bool
    literal_equal: bool
    scalar_factor: Optional[Coef]  # c with constant term = c Q_target, if one exists
    shifted: Partition             # mtilde - rho + (1^l)
    shifted_equal: bool
    detail: Dict = dfield(default_factory=dict)

    @property
    def relation(self) -> str:
        if self.literal_equal:
            return "equal"
        if self.scalar_factor is not None:
            return "factor %s" % self.scalar_factor
        if self.shifted_equal:
            return "Q%s, index shifted by (1^%d)" % (self.shifted, len(self.mtilde))
        return "none"

    def line(self) -> str:
        return "mtilde=%s target=Q%s relation: %s" % (Partition(self.mtilde), self.target, self.relation)


def _scalar_ratio(f: SymFun, g: SymFun) -> Optional[Coef]:
    if not f or not g or set(f.terms) != set(g.terms):
        return None
    lam = next(iter(g.terms))
    c = f.terms[lam] / g.terms[lam]
    return c if f == g.scale(c) else None


def jing_vs_oracle(mtilde, convention: str = "consistent") -> JingReport:
    from .hall import hl_Q

    parts = tuple(int(x) for x in mtilde)
    l = len(parts)
    target = _shifted(parts, rho(l))
    ct = jing_constant_term(parts, convention)
    oracle = hl_Q(target)
    f = ct.parts.get(l, SymFun())
    charge_ok = set(ct.parts) <= {l}
    shifted = Partition(tuple(p + 1 for p in target) + (1,) * (l - len(target)))
    return JingReport(parts, target, ct, oracle, charge_ok, charge_ok and f == oracle,
                      _scalar_ratio(f, oracle) if charge_ok else None, shifted,
                      charge_ok and f == hl_Q(shifted))


def mtilde_cases(max_target: int, max_length: int) -> List[Tuple[int, ...]]:
    """All mtilde = lambda + rho with |lambda| <= max_target and length l <= max_length."""
    out = []
    for l in range(1, max_length + 1):
        for n in range(max_target + 1):
            for lam in partitions(n):
                if len(lam) <= l:
                    lam_l = tuple(lam) + (0,) * (l - len(lam))
                    out.append(tuple(a + b for a, b in zip(lam_l, rho(l))))
    return out


# bosonization checks ------------------------------------------------------------------
def vertex_heisenberg_defect(n: int, m: int, s: FockState, window: Tuple[int, int],
                             convention: str = "consistent") -> Optional[Tuple[int, FockState]]:
    """Check [h_(m), e^{n alpha}(z)] s = n z^m (1 - t^|m|) e^{n alpha}(z) s (n e^{n alpha}(z) s at m = 0)."""
    lo, hi = window
    factor = coef(n) if m == 0 else (1 - t ** abs(m)) * n
    for k in range(lo, hi + 1):
        lhs = heisenberg_action(m, vertex_coeff(n, k, s, convention)) - \
            vertex_coeff(n, k, heisenberg_action(m, s), convention)
        rhs = vertex_coeff(n, k - m, s, convention).scale(factor)
        if lhs != rhs:
            return k, lhs - rhs
    return None


# identification with the charge sectors of the main example ------------------------------
def fock_from_velem(v, T: Optional[int] = None) -> FockState:
    """g_n = D^(n) h  ->  (1 - t^{n+1}) p_{n+1};  E(l) -> charge l.  Coefficients must be t-only."""
    out: Dict[int, SymFun] = {}
    for mono, c in v.terms.items():
        f = SymFun.one()
        for n, e in enumerate(mono.g):
            for _ in range(e):
                f = f * SymFun.p(n + 1).scale(1 - t ** (n + 1))
        f = f.scale(_tcoef(c))
        out[mono.m] = out[mono.m] + f if mono.m in out else f
    return FockState(out)


def _tcoef(c) -> Coef:
    if not hasattr(c, "coeffs"):
        return coef(c)
    out = K.zero
    for k, rf in c.coeffs.items():
        if rf.vars:
            raise ValueError("coefficient depends on %s" % (rf.vars,))
        out += coef(rf.num.const_value()) * t ** k
    return out


def truncate(s: FockState, T: int) -> Dict[Tuple[int, Partition], Tuple[mpq, ...]]:
    """Power-series coefficients t^0..t^T of every component, for comparison mod t^{T+1}."""
    out = {}
    for l, f in s.parts.items():
        for lam, c in f.terms.items():
            ser = tuple(series(c, T))
            if any(ser):
                out[(l, lam)] = ser
    return out
