"""Hall-Littlewood functions from Gram-Schmidt, and the constant terms of
products of vertex operators on the Fock space.

Run:  python demos/hall_littlewood.py
"""
from hdqva.symfun import hl_basis, jing_vs_oracle, mtilde_cases, partitions_upto

B = hl_basis(3)
for lam in partitions_upto(3):
    print("H%-8s = %s" % (lam, B.H[lam].render("m")))
    print("Q%-8s = %s" % (lam, B.Q[lam]))

# The constant term of Y(D^(m1)e^a, z1) ... Y(D^(ml)e^a, zl) 1 is compared with
# Q_{m - rho}.  No scalar factor relates the two; instead every case matches Q
# with each part raised by one.
print()
for mt in mtilde_cases(2, 3):
    print(jing_vs_oracle(mt).line())
