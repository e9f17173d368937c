import sympy
import pytest
from hypothesis import given, strategies as st

from hdqva.fdcalc import (BadPoleStructure, Distribution, ExpansionRegion, Poly, RatFun, SingularAtDiagonal,
                          TSeries, UnexpandableFactor, delta_extract, expand, parse_ratfun, parse_tseries, residue,
                          substitute)
from oracles import geometric_expansion, in_window, poly_to_sympy, ratfun_to_sympy, sym, tseries_to_sympy

z1, z2, z3 = sym("z1"), sym("z2"), sym("z3")
T = 3


def region(*order, bound=4):
    return ExpansionRegion.of(list(order), bound)


def ts(text, order=T):
    return parse_tseries(text, order)


# -- expansions -------------------------------------------------------------------------
def test_expand_geometric_both_regions():
    f = parse_ratfun("1/(z1-z2)")
    assert str(expand(f, region("z1", "z2"))) == "z1^(-1) + z1^(-2)*z2 + z1^(-3)*z2^2 + z1^(-4)*z2^3"
    assert str(expand(f, region("z2", "z1"))) == "-z1^3*z2^(-4) - z1^2*z2^(-3) - z1*z2^(-2) - z2^(-1)"


def test_expand_monomial_is_fixed():
    f = parse_ratfun("1/z1")
    for order in (("z1", "z2"), ("z2", "z1")):
        assert poly_to_sympy(expand(f, region(*order)).poly) == 1 / z1


def test_expand_rejects_form_outside_region():
    with pytest.raises(UnexpandableFactor):
        expand(parse_ratfun("1/(z1-z3)"), region("z1", "z2"))


@given(k=st.integers(1, 4), a=st.integers(-2, 2), b=st.integers(-2, 2), c=st.integers(1, 2))
def test_expand_matches_sympy_series(k, a, b, c):
    # z1^a z2^b / (z1 - c z2)^k against an independent series expansion
    f = RatFun.make(Poly.from_dict(("z1", "z2"), {(a, b): 1}), {}) * RatFun.inv_linear({"z1": 1, "z2": -c}, k)
    win = {"z1": (-6, 6), "z2": (-6, 6)}
    got = poly_to_sympy(expand(f, ExpansionRegion.of(["z1", "z2"], window=win)).poly)
    want = in_window(geometric_expansion(z1 ** a * z2 ** b / (z1 - c * z2) ** k, "z1", "z2", 14), win)
    assert sympy.expand(got - want) == 0


# -- delta extraction --------------------------------------------------------------------
def test_delta_examples():
    assert str(delta_extract(ts("1/(z1-z2)"))) == "[1 + O(t^4)] delta"
    assert not delta_extract(ts("1/(z1-t*z2)"))
    assert str(delta_extract(ts("1/(z1-z2)^2"))) == "[1 + O(t^4)] dz2^(1) delta"


def test_delta_rejects_foreign_pole():
    with pytest.raises(BadPoleStructure):
        delta_extract(ts("1/(z1+z2)"))


def test_normalize_examples():
    one = TSeries.one(T)
    raw = Distribution({0: ts("1-t*z2/z1")})
    assert raw.normalize() == Distribution({0: ts("1-t")})
    lhs = Distribution({1: ts("z1")})
    assert lhs.normalize() == Distribution({1: ts("z2"), 0: one})
    already = Distribution({0: ts("z2^2+t")})
    assert already.normalize().terms == already.terms


def test_normalize_rejects_diagonal_pole():
    with pytest.raises(SingularAtDiagonal):
        Distribution({0: ts("1/(z1-z2)")}).normalize()


def _gbinom(n, k):
    return sympy.binomial(n, k) if n >= 0 else (-1) ** k * sympy.binomial(k - n - 1, k)


def _pair_oracle(raw_terms, m):
    """Res_{z1} z1^m sum_n c_n(z1,z2) d^(n)_{z2} delta, c_n Laurent in z1:
    Res_{z1} z1^p d^(n) delta = binom(p, n) z2^{p-n}."""
    out = sympy.Integer(0)
    for n, c in raw_terms.items():
        expr = sympy.expand(c)
        for term in sympy.Add.make_args(expr):
            j = term.as_powers_dict().get(z1, 0)
            rest = sympy.simplify(term / z1 ** j)
            out += rest * _gbinom(m + j, n) * z2 ** (m + j - n)
    return sympy.expand(out)


@pytest.mark.parametrize("raw", [{0: "1-t*z2/z1"}, {1: "z1"}, {2: "z1^2 - 3*z1*z2 + t/z1"}, {0: "z1^-2", 1: "t*z1^3"}])
def test_normalization_pairs_like_raw(raw):
    d = Distribution({n: ts(v) for n, v in raw.items()})
    sraw = {n: tseries_to_sympy(ts(v)) for n, v in raw.items()}
    for m in range(-6, 7):
        got = tseries_to_sympy(d.pair(m))
        assert sympy.expand(got - _pair_oracle(sraw, m)) == 0


@given(k=st.integers(1, 4), a=st.integers(-2, 2), b=st.integers(-2, 2), m=st.integers(-4, 4))
def test_expansion_residue_duality(k, a, b, m):
    f = TSeries.make(RatFun.make(Poly.from_dict(("z1", "z2"), {(a, b): 1}), {})
                     * RatFun.inv_linear({"z1": 1, "z2": -1}, k), 0)
    win = ExpansionRegion.of(["z1", "z2"], window={"z1": (-20, 20), "z2": (-20, 20)})
    win2 = ExpansionRegion.of(["z2", "z1"], window={"z1": (-20, 20), "z2": (-20, 20)})
    zm = Poly.var("z1", m)
    lhs = delta_extract(f).pair(m)
    e1 = (expand(f, win).poly * zm).coeff("z1", -1)
    e2 = (expand(f, win2).poly * zm).coeff("z1", -1)
    assert sympy.expand(tseries_to_sympy(lhs) - poly_to_sympy(e1 - e2)) == 0


@given(k=st.integers(1, 3), a=st.integers(-1, 2), b=st.integers(-1, 2))
def test_residue_shift_identity(k, a, b):
    # Res_{z1} delta(f) = Res_{z3} i_{z2;z3} f(z2 + z3, z2)
    f = TSeries.make(RatFun.make(Poly.from_dict(("z1", "z2"), {(a, b): 1}), {})
                     * RatFun.inv_linear({"z1": 1, "z2": -1}, k), 0)
    lhs = tseries_to_sympy(delta_extract(f).pair(0))
    shifted = substitute(f, {"z1": {"z2": 1, "z3": 1}})
    win = ExpansionRegion.of(["z2", "z3"], window={"z2": (-20, 20), "z3": (-20, 20)})
    rhs = poly_to_sympy(expand(shifted, win).poly.coeff("z3", -1))
    assert sympy.expand(lhs - rhs) == 0


@given(k=st.integers(1, 4), extra=st.integers(0, 2))
def test_diagonal_power_annihilates(k, extra):
    d = delta_extract(TSeries.make(RatFun.inv_linear({"z1": 1, "z2": -1}, k), 1))
    assert d.max_order() == k - 1
    assert d.times_diagonal_power(k - 1)
    assert not d.times_diagonal_power(k + extra)


# -- residues ----------------------------------------------------------------------------
def test_residue_examples():
    assert poly_to_sympy(residue(Poly.var("z", -1), "z")) == 1
    w = expand(parse_ratfun("1/(z1-z2)"), region("z1", "z2"))
    assert poly_to_sympy(residue(w, "z1").poly) == 1


@pytest.mark.parametrize("n", range(-3, 4))
def test_residue_of_log_derivative(n):
    sigma = -(1 - sym("t") * z1 / z2) / (1 - sym("t") * z2 / z1)      # Sigma with z1, z2 swapped
    dlog = sympy.together(sympy.diff(sympy.log(sigma), z1))
    f = ts(str(z1 ** n * dlog))
    got = residue(f, "z1")
    want = 0 if n == 0 else -sym("t") ** abs(n) * z2 ** n
    assert sympy.simplify(tseries_to_sympy(got) - want) == 0


# -- substitution ------------------------------------------------------------------------
def test_substitute_examples():
    f = parse_ratfun("1/(z1-z2)")
    g = substitute(f, {"z1": {"z1": 1, "gamma": 1}})
    assert sympy.simplify(ratfun_to_sympy(g) - 1 / (z1 - z2 + sym("gamma"))) == 0
    assert substitute(f, {"z1": {"z1": 1}}) == f


def test_sigma_gamma_shift_cross_multiplies():
    # sigma(z1 + g, z2 + g) for sigma = z1 - z2 is translation invariant
    f = parse_ratfun("z1-z2")
    g = substitute(f, {"z1": {"z1": 1, "gamma": 1}, "z2": {"z2": 1, "gamma": 1}})
    assert g.cross_equal(f)


# -- polynomial arithmetic against sympy -------------------------------------------------
monos = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-5, 5), max_size=5)


@given(monos, monos)
def test_poly_ring_matches_sympy(a, b):
    pa, pb = Poly.from_dict(("z1", "z2"), a), Poly.from_dict(("z1", "z2"), b)
    sa, sb = poly_to_sympy(pa), poly_to_sympy(pb)
    assert sympy.expand(poly_to_sympy(pa * pb) - sa * sb) == 0
    assert sympy.expand(poly_to_sympy(pa + pb) - sa - sb) == 0
    assert sympy.expand(poly_to_sympy(pa.diff("z1")) - sympy.diff(sa, z1)) == 0


@given(st.integers(-3, 3))
def test_tseries_inverse(a):
    s = ts("1 - t*z2/z1 + t^2*z1^%d" % a)
    assert s * s.inverse() == TSeries.one(T)


def test_render_golden():
    s = ts("1/(z1-z2)^2 - t/(z1-t*z2)^2", 2)
    assert str(s) == "1/(z1-z2)^2 - t/z1^2 - 2*t^2*z2/z1^3 + O(t^3)"
