"""Products, S-commutators and field products in the deformed lattice example.

Run:  python demos/products_and_commutators.py
"""
from hdqva.bichar import main_example
from hdqva.cli.grammar import format_state
from hdqva.hopf import VMono, gmono
from hdqva.qva import QVA, Fields, TruncationSpec
from hdqva.verify import locality_order

h = gmono(0, g0=1)
E = lambda m: VMono(m, ())

q = QVA(main_example(3), TruncationSpec(3, 4, 5))
fields = Fields(q)

print("state products e^a_(n) e^-a")
for n in range(-3, 4):
    print("  n = %2d: %s" % (n, format_state(q.mode(E(1), n, E(-1)))))

print("\nY(h, z) h, truncated:")
print(" ", format_state(q.y(h, h)))

print("\nS-commutators (both routes are compared inside s_commutator)")
for a, b, name in [(h, E(2), "[h, e^2a]"), (h, h, "[h, h]"), (E(1), E(-1), "[e^a, e^-a]")]:
    print("  %-12s %s" % (name, fields.s_commutator(a, b)))

print("\nlocality orders")
for a, b, name in [(h, h, "(h, h)"), (E(1), E(-1), "(e^a, e^-a)"), (E(1), E(1), "(e^a, e^a)")]:
    print("  %-12s %d" % (name, locality_order(q, a, b)))

# The (-1)-product of the two exponential fields keeps a factor 1 - t on h(z)
# and a +t/z correction; both the definition and the translation-map route give it.
print("\nfield products of e^a(z) and e^-a(z)")
for n in (-1, 0):
    print("  (%d): %s" % (n, fields.field_nproduct(E(1), E(-1), n)))
