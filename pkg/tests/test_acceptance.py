"""End-to-end acceptance criteria 1-9.  Each test records one status line (see the terminal summary)."""
from itertools import permutations, product

import pytest

from acceptance_log import record, timed
from hdqva.bichar import lattice_example, main_example
from hdqva.fdcalc import TSeries, parse_tseries
from hdqva.hopf import ONE, VElem, VMono, gmono, monomials
from hdqva.qva import QVA, Fields, Identities, TruncationSpec
from hdqva.qva.fields import diagonal_power
from hdqva.symfun import (Partition, deformed_inner, duality_defects, hl_basis, jing_vs_oracle, mtilde_cases,
                          partitions_upto, schur)
from hdqva.verify import (CATALOGUE, SuperAlgebra, TwistedLattice, braided_algebra_check, cyclic_symmetry,
                          locality_order, sample_permutations, verify_all, word_independence)
from hdqva.verify.tuples import generators

H = gmono(0, g0=1)
E = lambda m: VMono(m, ())
G = generators()
TRIPLES = list(product(G, G, G))


@pytest.fixture(scope="module")
def q3():
    return QVA(main_example(3), TruncationSpec(3, 4, 5))


def test_criterion_1_state_products(q3):
    with timed() as tm:
        got = {k: q3.mode(E(1), k, E(-1)) for k in range(-1, 4)}
        want = {-1: VElem.mono(H), 0: VElem.one()}
        ok = all(got[k] == want.get(k, VElem()) for k in got)
    record(1, ok, "e^a_(-1) e^-a = h, e^a_(0) e^-a = 1, e^a_(k) e^-a = 0 for k = 1..3", tm.seconds, 1)
    assert ok, got


def test_criterion_2_s_commutators(q3):
    with timed() as tm:
        F = Fields(q3)
        checks = []
        for m in range(-3, 4):
            # s_commutator raises RouteMismatch unless both routes agree
            checks.append(F.s_commutator(H, E(m)).terms == {0: VElem.mono(E(m), TSeries.const(m, 3))} if m else
                          not F.s_commutator(H, E(0)).terms)
        checks.append(F.s_commutator(H, H).terms == {1: VElem.mono(ONE, TSeries.one(3))})
        checks.append(F.s_commutator(E(1), E(-1)).terms == {0: VElem.mono(ONE, parse_tseries("1-t", 3))})
        ok = all(checks)
    record(2, ok, "[h, e^{m a}]_S for |m| <= 3, [h, h]_S, [e^a, e^-a]_S; raw and normalized routes agree "
           "on test states", tm.seconds, 10)
    assert ok, checks


def test_criterion_3_mode_commutators():
    with timed() as tm:
        I = Identities(QVA(main_example(3), TruncationSpec(3, 4, 5)))
        states = monomials(4)
        hh = [(c, m, n) for c in states for m in range(-5, 6) for n in range(-5, 6)]
        bad = [x for x in hh if not I.heisenberg(x[1], x[2], x[0])]
        hv = [(c, n, m) for c in states for n in range(-4, 5) for m in range(-2, 3)]
        bad += [x for x in hv if not I.heisenberg_vertex(x[1], x[2], x[0])]
    record(3, not bad, "[h_(m), h_(n)] on %d cases, [h_(n), Y(e^{m a}, z)] on %d cases, states of weight <= 4"
           % (len(hh), len(hv)), tm.seconds, 60)
    assert not bad, bad[:3]


def test_criterion_4_axiom_sweep():
    with timed() as tm:
        q = QVA(main_example(4), TruncationSpec(4, 4, 5))
        reports = verify_all(q, max_weight=4)
        failed = [r.line() for r in reports if not r.ok]
        I = Identities(QVA(main_example(2), TruncationSpec(2, 3, 4)))
        ident = {
            "braided_symmetry": all(I.braided_symmetry(a, b) for a, b in product(G, G)),
            "skewsymmetry": all(I.skewsymmetry(a, b) for a, b in product(G, G)),
            "expansions": all(all(I.expansions(a, b, c)) for a, b, c in TRIPLES),
            "jacobi": all(I.jacobi(a, b, c) for a, b, c in TRIPLES),
            "borcherds": all(I.borcherds(a, b, c, diagonal_power(n, 2)) for a, b, c in TRIPLES for n in range(-3, 4)),
            "weak_associativity": all(I.weak_associativity(a, b, c) for a, b, c in TRIPLES),
        }
        failed += [k for k, v in ident.items() if not v]
    tuples = sum(r.tested for r in reports)
    record(4, not failed, "%d axioms on %d tuples (weight <= 4, t-order 4); %d identities on %d generator triples"
           % (len(CATALOGUE), tuples, len(ident), len(TRIPLES)), tm.seconds, 300)
    assert not failed, failed


def test_criterion_5_locality_orders(q3):
    with timed() as tm:
        F = Fields(q3)
        pairs = {(H, H): 2, (E(1), E(-1)): 1, (E(1), E(1)): 0}
        ok = True
        for (a, b), n in pairs.items():
            d = F.s_commutator(a, b)
            from_distribution = d.max_order() + 1 if d else 0
            ok &= locality_order(q3, a, b) == n == from_distribution
    record(5, ok, "(h,h) -> 2, (e^a,e^-a) -> 1, (e^a,e^a) -> 0, equal to distribution orders + 1", tm.seconds, 1)
    assert ok


_C6 = {}


def _criterion_6_values(q3):
    if not _C6:
        with timed() as tm:
            F = Fields(q3)
            # field_nproduct compares the translation-map route against the definition route
            _C6["minus"] = F.field_nproduct(E(1), E(-1), -1).terms
            _C6["zero"] = F.field_nproduct(E(1), E(-1), 0).terms
        _C6["seconds"] = tm.seconds
    return _C6


def test_criterion_6_computed_values(q3):
    v = _criterion_6_values(q3)
    assert v["minus"] == VElem({H: parse_tseries("1-t", 3), ONE: parse_tseries("t/z", 3)})
    assert v["zero"] == VElem({ONE: parse_tseries("1-t", 3)})


@pytest.mark.xfail(strict=True, reason="e^a(z)_(-1) e^-a(z) is (1-t) h(z) + t/z, not h(z) - t/z")
def test_criterion_6_field_products(q3):
    v = _criterion_6_values(q3)
    stated_minus = VElem({H: TSeries.one(3), ONE: parse_tseries("-t/z", 3)})
    ok_minus = v["minus"] == stated_minus
    ok_zero = v["zero"] == VElem({ONE: parse_tseries("1-t", 3)})
    record(6, ok_minus and ok_zero, "(0)-product 1 - t holds; (-1)-product is (1-t) h(z) + t/z, not h(z) - t/z; "
           "both routes agree", v["seconds"], 5)
    assert ok_minus and ok_zero


def test_criterion_7_classical_reduction():
    with timed() as tm:
        I0 = Identities(QVA(main_example(0), TruncationSpec(0, 3, 4)))
        jac = all(I0.unbraided_jacobi(a, b, c) for a, b, c in TRIPLES)
        unsigned = sum(1 for a, b, c in TRIPLES if not I0.unbraided_jacobi(a, b, c, super_sign=False))
        IL = Identities(QVA(lattice_example(2), TruncationSpec(2, 3, 4)))
        transl = all(IL.translation_is_identity(a, b) for a in monomials(3) for b in monomials(3))
        dcomm = all(IL.d_commutator(a, c) for a in monomials(2) for c in monomials(2))
        ok = jac and transl and dcomm
    record(7, ok, "t = 0 Jacobi on %d triples (super sign for odd charges; %d fail without it); lattice: "
           "translation map = id, [D, Y] = d/dz Y" % (len(TRIPLES), unsigned), tm.seconds, 30)
    assert ok


_C8 = {}


def _criterion_8_values():
    if not _C8:
        with timed() as tm:
            B = hl_basis(4)
            lams = partitions_upto(4)
            _C8["duality"] = duality_defects(B) == []
            _C8["orthogonal"] = all(deformed_inner(B.H[a], B.H[b]) == 0 for a in lams for b in lams
                                    if a != b and a.weight == b.weight)
            _C8["schur"] = all(B.H[l].at_t(0) == B.Q[l].at_t(0) == schur(l).at_t(0) for l in lams)
            _C8["reports"] = [jing_vs_oracle(mt) for mt in mtilde_cases(3, 4)]
        _C8["seconds"] = tm.seconds
    return _C8


def test_criterion_8_hall_littlewood():
    v = _criterion_8_values()
    assert v["duality"] and v["orthogonal"] and v["schur"]
    assert len(v["reports"]) == 24
    assert all(r.charge_ok and r.shifted_equal for r in v["reports"])


@pytest.mark.xfail(strict=True, reason="no scalar factor relates the constant term to Q_{m-rho}; "
                                       "it equals Q_{m-rho+(1^l)} in every case")
def test_criterion_8_normalization_factor():
    v = _criterion_8_values()
    reps = v["reports"]
    hl_ok = v["duality"] and v["orthogonal"] and v["schur"]
    factors = sum(1 for r in reps if r.literal_equal or r.scalar_factor is not None)
    shifted = sum(1 for r in reps if r.shifted_equal)
    record(8, hl_ok and factors == len(reps),
           "HL basis to weight 4 dual and orthogonal, Schur at t = 0: %s; %d jing cases run, scalar factor found "
           "in %d, constant term = Q_{m-rho+(1^l)} in %d" % ("yes" if hl_ok else "no", len(reps), factors, shifted),
           v["seconds"], 60)
    assert hl_ok and factors == len(reps)


def test_criterion_9_braided_suites():
    with timed() as tm:
        braided = [r for alg in (SuperAlgebra(), TwistedLattice()) for r in braided_algebra_check(alg)]
        q = QVA(main_example(2), TruncationSpec(2, 3, 4))
        s3 = [word_independence(q, f) for f in permutations(range(3))]
        s4 = [word_independence(q, f, max_weight=1) for f in sample_permutations(4, 10)]
        cyc = cyclic_symmetry(q)
        failed = [r.line() for r in braided + s3 + s4 + [cyc] if not r.ok]
    record(9, not failed, "%d braided-algebra checks on 2 instances; word independence on S3 and %d of S4; "
           "cyclic symmetry of X" % (len(braided), len(s4)), tm.seconds, 60)
    assert not failed, failed
