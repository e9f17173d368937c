"""A small exhaustive axiom sweep, and what goes wrong with the other ordering
of the left compatibility axiom.

Run:  python demos/axiom_sweep.py [max_weight]
"""
import sys

from hdqva.bichar import main_example
from hdqva.qva import QVA, TruncationSpec
from hdqva.verify import PROPERTIES, AxiomChecker, verify_all, verify_property
from hdqva.verify.tuples import basis_tuples

w = int(sys.argv[1]) if len(sys.argv) > 1 else 2
q = QVA(main_example(3), TruncationSpec(3, 4, w + 1))

for rep in verify_all(q, max_weight=w):
    print(rep.line())
for name in PROPERTIES:
    print(verify_property(name, q, w).line())

checker = AxiomChecker(q)
bad = [key for key in basis_tuples(3, w) if checker.compat_left(key, swapped=True) is not None]
print("\nleft compatibility with the S^{13}, S^{23} factors in the other order fails on %d of %d tuples"
      % (len(bad), len(basis_tuples(3, w))))
if bad:
    print("first witness:", checker.compat_left(bad[0], swapped=True))
