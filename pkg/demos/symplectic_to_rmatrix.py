"""
From a symplectic-Nijenhuis pair to a family of r-matrices
==========================================================

"""

import lck
from lck.ybe import check_rmatrix_nijenhuis, r_family_compatibility

# a rank-four semidirect product with a pairing form w and a diagonal operator N,
# symbolic in the parameters k, l, m, k1, k2
ws = lck.parse_file(lck.corpus_file("sn2"))
DA, w, N = ws.get("DA"), ws.get("w"), ws.get("N")
print(DA.basis)

print(lck.check_symplectic(w).summary())
print(lck.check_sn_structure(w, N).summary())

# invert w#: this is an O-operator on the coadjoint module
T = lck.o_from_symplectic(w)
print(T.matrix)
cand, coad = lck.on_from_sn(w, N)
print(cand.check(DA, coad).verdict)

# the same data as a skew tensor solving the classical Yang-Baxter equation
r = lck.r_from_symplectic(w)
print(r.table)
print(lck.cybe_check(r).verdict, lck.check_cybe_equivalence(r).verdict)

# N deforms r into a whole family, pairwise compatible
print(check_rmatrix_nijenhuis(r, N).verdict)
fam = r_family_compatibility(r, N, 3)
print(fam.verdict, [p.check for p in fam.parts])

# every residual above can be re-decided by plain evaluation on a grid
print(fam.oracle_agreement())
