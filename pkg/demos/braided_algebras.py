"""Finite braided algebras: the axiom suite on two toy instances, and the
readings of the higher braiding maps built from S^g.

Run:  python demos/braided_algebras.py
"""
from hdqva.verify import SuperAlgebra, TwistedLattice, braided_algebra_check, higher_braiding_reports

for alg, stride in ((SuperAlgebra(), 7), (TwistedLattice(), 11)):
    print(type(alg).__name__)
    for rep in braided_algebra_check(alg):
        print("  " + rep.line())
    for key, rep in higher_braiding_reports(alg, 3, stride).items():
        print("  higher braiding, %-8s %s" % (key + ":", rep.line()))
