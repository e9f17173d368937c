"""Compositions of vertex operators on a state, as box-exact series.

Three shapes occur, each optionally multiplied by the expansion of a
rational function F in the matching region:

  ordered     Y(a,z1) Y(b,z2) c                  * i_{z1;z2} F(z1,z2)
  reordered   Y_{z2}(1 (x) Y_{z1}) S^tau(b(x)a(x)c) * i_{z2;z1} F(z1,z2)
  iterated    Y_{z2}(Y_{z3} (x) 1) S^{(z2)}(a(x)b(x)c) * i_{z2;z3} F(z2+z3,z2)

``box`` maps each variable to its upper exponent bound.
"""
from __future__ import annotations

from typing import Callable, Dict, Mapping, Optional

from ..fdcalc import TSeries
from ..hopf import VMono, _add_into, mono_coproduct
from .core import QVA, State, _monos
from .series import VSeries, WindowProduct


def _one(q: QVA) -> TSeries:
    return TSeries.one(q.T)


def ordered(q: QVA, a: State, b: State, c: State, box: Mapping[str, int], cap: Optional[int] = None,
            F: Optional[TSeries] = None) -> VSeries:
    cap = q.spec.weight_cap if cap is None else cap
    h1, h2 = box["z1"], box["z2"]
    if F is None:
        inner, _ = q.y_series(b, c, "z2", h2)
        out, _ = q.y_series(a, inner, "z1", h1, cap)
        return out.restrict({"z1": h1, "z2": h2})
    wp = WindowProduct(F, "z1", "z2", h1, h2)
    inner, low = q.y_series(b, c, "z2", wp.inner_top)
    P, _ = q.y_series(a, inner, "z1", wp.outer_top(low), cap) if low is not None else (VSeries(), None)
    return wp.times(P, low, q.T)


def reordered(q: QVA, a: State, b: State, c: State, box: Mapping[str, int], cap: Optional[int] = None,
              F: Optional[TSeries] = None, sign: Optional[Callable[[VMono, VMono], int]] = None) -> VSeries:
    """With ``sign`` given the braiding is replaced by sign(b, a) * (b (x) a)."""
    cap = q.spec.weight_cap if cap is None else cap
    h1, h2 = box["z1"], box["z2"]
    groups: Dict = {}
    for ma, ca in _monos(a):
        for mb, cb in _monos(b):
            if sign is not None:
                _add_into(groups, (mb, ma), _one(q).scale(ca * cb * sign(mb, ma)))
                continue
            for b1, b2, x in mono_coproduct(mb):
                for a1, a2, y in mono_coproduct(ma):
                    v = q.R_at("z2", "z1").eval_mono(b2, a2)
                    if v:
                        _add_into(groups, (b1, a1), v.scale(ca * cb * x * y))
    out = VSeries()
    for (b1, a1), R in groups.items():
        if F is not None:
            R = R * F
        wp = WindowProduct(R, "z2", "z1", h2, h1)
        inner, low = q.y_series(a1, c, "z1", wp.inner_top)
        if low is None:
            continue
        P, _ = q.y_series(b1, inner, "z2", wp.outer_top(low), cap)
        out = out + wp.times(P, low, q.T)
    return out


def iterated(q: QVA, a: State, b: State, c: State, box: Mapping[str, int], cap: Optional[int] = None,
             F: Optional[TSeries] = None, braided: bool = True) -> VSeries:
    """With ``braided`` False the translation map is replaced by the identity."""
    cap = q.spec.weight_cap if cap is None else cap
    h2, h3 = box["z2"], box["z3"]
    Fs = F.subs({"z1": {"z2": 1, "z3": 1}}) if F is not None else None
    groups: Dict = {}
    for ma, ca in _monos(a):
        for mb, cb in _monos(b):
            if not braided:
                _add_into(groups, (ma, mb), _one(q).scale(ca * cb))
                continue
            for a1, a2, x in mono_coproduct(ma):
                for b1, b2, y in mono_coproduct(mb):
                    v = q.Rgamma_at("z3", None, "z2").eval_mono(a2, b2)
                    if v:
                        _add_into(groups, (a1, b1), v.scale(ca * cb * x * y))
    out = VSeries()
    for (a1, b1), R in groups.items():
        if Fs is not None:
            R = R * Fs
        wp = WindowProduct(R, "z2", "z3", h2, h3)
        inner, low = q.y_series(a1, b1, "z3", wp.inner_top)
        if low is None:
            continue
        P, _ = q.y_series(inner, c, "z2", wp.outer_top(low), cap)
        out = out + wp.times(P, low, q.T)
    return out
