import pytest
from math import factorial

from gmpy2 import mpq
from hypothesis import given, strategies as st

from hdqva.fdcalc import Poly
from hdqva.hopf import (ONE, Tensor, VElem, VMono, antipode, coproduct, counit, d_action, exp_zD, gmono,
                        mono_coproduct_n, monomials, multiply)

MONOS = monomials(5)
H = VElem.mono(gmono(0, g0=1))


def elem(draw_terms):
    return VElem({m: mpq(c) for m, c in draw_terms})


elements = st.lists(st.tuples(st.sampled_from(MONOS), st.integers(-3, 3)), min_size=1, max_size=3).map(elem)
small = st.lists(st.tuples(st.sampled_from(monomials(2)), st.integers(-3, 3)), min_size=1, max_size=2).map(elem)


def tensor_mul(x: Tensor, y: Tensor) -> Tensor:
    out = Tensor({}, x.n)
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            prod = [multiply(VElem.mono(a), VElem.mono(b)) for a, b in zip(ka, kb)]
            out = out + Tensor.pure(*prod).scale(ca * cb)
    return out


def apply_leg(x: Tensor, leg: int, fn) -> Tensor:
    out = Tensor({}, x.n + 1)
    for k, c in x.terms.items():
        for (l, r), d in fn(VElem.mono(k[leg])).terms.items():
            out = out + Tensor({k[:leg] + (l, r) + k[leg + 1:]: c * d}, x.n + 1)
    return out


# -- examples ----------------------------------------------------------------------------
def test_monomial_counts():
    assert [len(monomials(w)) for w in range(5)] == [1, 4, 10, 21, 40]
    assert [len(monomials(w, exact=True)) for w in range(5)] == [1, 3, 6, 11, 19]


def test_products():
    assert multiply(VElem.e(1), VElem.e(-1)) == VElem.one()
    assert multiply(H, H) == VElem.mono(gmono(0, g0=2))
    assert multiply(VElem.one(), H) == H


def test_coproduct_examples():
    assert coproduct(VElem.e(2)) == Tensor.basis(VMono(2, ()), VMono(2, ()))
    assert coproduct(H) == Tensor.basis(gmono(0, g0=1), ONE) + Tensor.basis(ONE, gmono(0, g0=1))
    he = VElem.mono(gmono(1, g0=1))
    assert coproduct(he) == Tensor.basis(gmono(1, g0=1), VMono(1, ())) + Tensor.basis(VMono(1, ()), gmono(1, g0=1))


def test_counit_antipode_examples():
    assert counit(VElem.mono(gmono(1, g0=1))) == 0
    assert antipode(VElem.e(1)) == VElem.e(-1)
    g0g1 = VElem.mono(gmono(0, g0=1, g1=1))
    assert antipode(g0g1) == g0g1


def test_d_action_examples():
    assert not d_action(VElem.one())
    assert d_action(VElem.e(1)) == VElem.mono(gmono(1, g0=1))
    # D^(2) e^alpha = (1/2)(D h + h^2) e^alpha, with D h = g1
    twice = d_action(d_action(VElem.e(1))).scale(mpq(1, 2))
    assert d_action(VElem.e(1), 2, divided=True) == twice
    assert twice == (VElem.mono(gmono(1, g1=1)) + VElem.mono(gmono(1, g0=2))).scale(mpq(1, 2))
    assert d_action(VElem.g(0)) == VElem.g(1)
    assert d_action(VElem.g(1)) == VElem.g(2).scale(2)


def test_exp_zD_weight_cap():
    # e^{zD} e^alpha = e^alpha + z h e^alpha + z^2/2 (h^2 + g1) e^alpha + ...
    out = exp_zD(VElem.e(1), "z", 3)
    assert set(out) == {VMono(1, ()), gmono(1, g0=1), gmono(1, g0=2), gmono(1, g1=1)}
    assert out[gmono(1, g0=2)] == Poly.var("z", 2, mpq(1, 2)) == out[gmono(1, g1=1)]
    assert out[gmono(1, g0=1)] == Poly.var("z")


# -- bialgebra axioms --------------------------------------------------------------------
@given(elements)
def test_coassociative(a):
    left = apply_leg(coproduct(a), 0, coproduct)
    right = apply_leg(coproduct(a), 1, coproduct)
    assert left == right
    direct = Tensor({}, 3)
    for k, c in a.terms.items():
        for legs, d in mono_coproduct_n(k, 3):
            direct = direct + Tensor({legs: c * d}, 3)
    assert direct == left


@given(elements)
def test_counit_law_and_cocommutative(a):
    d = coproduct(a)
    left = VElem({})
    right = VElem({})
    for (l, r), c in d.terms.items():
        left = left + VElem.mono(r).scale(c * counit(VElem.mono(l)))
        right = right + VElem.mono(l).scale(c * counit(VElem.mono(r)))
    assert left == a and right == a
    assert d.swap(0, 1) == d


@given(elements, elements)
def test_coproduct_is_algebra_morphism(a, b):
    assert coproduct(multiply(a, b)) == tensor_mul(coproduct(a), coproduct(b))


@given(elements)
def test_antipode_law(a):
    out = VElem({})
    for (l, r), c in coproduct(a).terms.items():
        out = out + multiply(antipode(VElem.mono(l)), VElem.mono(r)).scale(c)
    assert out == VElem.one().scale(counit(a))


@given(small, small)
def test_antipode_antimultiplicative(a, b):
    assert antipode(multiply(a, b)) == multiply(antipode(b), antipode(a))


@given(elements, elements)
def test_d_is_derivation(a, b):
    assert d_action(multiply(a, b)) == multiply(d_action(a), b) + multiply(a, d_action(b))


@given(elements)
def test_d_compatibility(a):
    lhs = coproduct(d_action(a))
    rhs = coproduct(a)
    rhs_d = Tensor({}, 2)
    for (l, r), c in rhs.terms.items():
        rhs_d = rhs_d + Tensor.pure(d_action(VElem.mono(l)), VElem.mono(r)).scale(c)
        rhs_d = rhs_d + Tensor.pure(VElem.mono(l), d_action(VElem.mono(r))).scale(c)
    assert lhs == rhs_d
    assert counit(d_action(a)) == 0


@pytest.mark.parametrize("k", range(0, 4))
def test_divided_powers(k):
    a = VElem.mono(gmono(-1, g0=1))
    full = a
    for _ in range(k):
        full = d_action(full)
    assert d_action(a, k, divided=True).scale(factorial(k)) == full
