from itertools import permutations

import pytest

from hdqva.bichar import main_example
from hdqva.fdcalc import TSeries
from hdqva.hopf import Tensor
from hdqva.qva import QVA, TruncationSpec
from hdqva.verify import (CATALOGUE, PROPERTIES, AxiomChecker, BraidedChecks, PermBraiding, SuperAlgebra,
                          TwistedLattice, UnknownAxiom, braided_algebra_check, cyclic_symmetry,
                          higher_braiding_reports, permutation_symmetry, sample_permutations, verify_axiom,
                          verify_property, word_independence)
from hdqva.verify.perm import identity, reduced_words, word_perm
from hdqva.verify.tuples import basis_tuples, generators


@pytest.fixture(scope="module")
def q():
    return QVA(main_example(2), TruncationSpec(2, 3, 4))


# -- axiom catalogue ---------------------------------------------------------------------
@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_axiom_passes_weight_2(q, name):
    rep = verify_axiom(name, q=q, max_weight=2)
    assert rep.ok, rep.line()
    assert rep.tested == len(basis_tuples(CATALOGUE[name].arity, 2))


def test_yang_baxter_default_spec_t3():
    rep = verify_axiom("yang_baxter", spec=TruncationSpec(3, 4, 5), max_weight=2)
    assert rep.ok and rep.spec.t_order == 3


def test_vacuum_on_generators(q):
    assert verify_axiom("vacuum", tuples=[(g,) for g in generators()], q=q)


def test_unitarity_weight_3(q):
    assert verify_axiom("unitarity", q=q, max_weight=3)


def test_unknown_axiom():
    with pytest.raises(UnknownAxiom):
        verify_axiom("no_such_axiom")


def test_exchanged_left_compatibility_shifts_fail(q):
    # exchanging the two shifts does not give the axiom
    c = AxiomChecker(q)
    bad = [k for k in basis_tuples(3, 2) if c.compat_left(k, swapped=True) is not None]
    assert bad
    assert all(c.compat_left(k) is None for k in basis_tuples(3, 2))


def test_failure_witness_reproducible(q):
    c = AxiomChecker(q)
    first = [c.compat_left(k, swapped=True) for k in basis_tuples(3, 2)]
    second = [c.compat_left(k, swapped=True) for k in basis_tuples(3, 2)]
    assert first == second


def test_report_json(q):
    js = verify_axiom("s_at_zero", q=q, max_weight=1).to_json()
    assert js["ok"] and js["witness"] is None
    assert js["spec"] == {"t_order": 2, "z_window": 3, "weight_cap": 4}


# -- derived properties ------------------------------------------------------------------
@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property(q, name):
    rep = verify_property(name, q, max_weight=2)
    assert rep.ok, rep.line()


# -- permutation braidings ---------------------------------------------------------------
def test_reduced_words():
    assert sorted(reduced_words((2, 1, 0))) == [(0, 1, 0), (1, 0, 1)]
    assert reduced_words(identity(3)) == [()]
    assert word_perm((0, 1), 3) == (1, 2, 0)


def test_identity_word_is_identity(q):
    pb = PermBraiding(q, (), 3)
    for key in basis_tuples(3, 2):
        t = Tensor({key: TSeries.one(q.T)}, 3)
        assert pb.realize_product(("z1", "z2", "z3"), t) == t


@pytest.mark.parametrize("f", list(permutations(range(3))))
def test_word_independence_s3(q, f):
    rep = word_independence(q, f)
    assert rep.ok, rep.line()


def test_word_independence_s4_sample(q):
    perms = sample_permutations(4, 10)
    assert len(perms) == 10 and len(set(perms)) == 10
    for f in perms:
        assert word_independence(q, f, max_weight=1), f


@pytest.mark.parametrize("f", list(permutations(range(3))))
def test_permutation_symmetry(q, f):
    assert permutation_symmetry(q, f, max_weight=1)


def test_cyclic_symmetry(q):
    rep = cyclic_symmetry(q)
    assert rep.ok and rep.axiom == "cyclic_symmetry"


# -- braided algebras --------------------------------------------------------------------
@pytest.fixture(scope="module", params=["super", "lattice"])
def alg(request):
    return SuperAlgebra() if request.param == "super" else TwistedLattice()


def test_braided_algebra_check(alg):
    for rep in braided_algebra_check(alg):
        assert rep.ok, rep.line()


def test_bare_s13_differs(alg):
    assert BraidedChecks(alg).bare_s13_differs()


def test_super_composite_sign():
    A = SuperAlgebra()
    odd = [b for b in A.basis if len(b[0]) == 1]
    x, y = odd[0], odd[1]
    v = A.vec(x, y, x)
    comp = A.S(A.S(A.S(v, 1, 2), 0, 2), 0, 1)
    assert comp == {k: -c for k, c in v.items()}       # (-1)^{1+1+1}


def test_higher_braiding_readings():
    sup = higher_braiding_reports(SuperAlgebra(), 3, stride=7)
    lat = higher_braiding_reports(TwistedLattice(), 3, stride=11)
    for reps in (sup, lat):
        assert reps["first"] and reps["last"] and reps["agree"]
    assert not lat["literal"]
    assert not sup["plain"] and not lat["plain"]
