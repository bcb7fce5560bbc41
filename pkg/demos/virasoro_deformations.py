"""
Scalar Nijenhuis operators on the Virasoro algebra
==================================================

"""

# the Virasoro conformal algebra: one generator a, [a L a] = (D + 2L) a
import lck
Vir = lck.virasoro()
print(lck.check_lca_axioms(Vir).summary())

# multiplying by a constant k is Nijenhuis
k = lck.poly("k")
N = lck.CdHom.scalar(Vir.module, k, "N")
print(lck.check_nijenhuis_operator(Vir, N).summary())

# the deformed bracket is k times the original one
VirN = lck.deformed_bracket(Vir, N)
print(VirN.table[0][0][0])
print(lck.check_lca_axioms(VirN).verdict)

# N(a) = D a is not, and the report says where and by how much
Nd = lck.CdHom(Vir.module, Vir.module, ((lck.D,),), "Nd")
print(lck.check_nijenhuis_operator(Vir, Nd).summary())

# the bracket plus t times the coboundary of N is again a conformal algebra, t kept symbolic
VirT = lck.deform_with_parameter(Vir, lck.coboundary(N, Vir), "t")
print(VirT.table[0][0][0], lck.check_lca_axioms(VirT).verdict)
