"""
Compatible Rota-Baxter operators on a rank-two algebra
======================================================

"""

import lck
from lck.ooperator import check_left_symmetric, induced_lsa, subadjacent

# load the rank-two quadratic algebra and two operators from the bundled corpus
ws = lck.parse_file(lck.corpus_file("rank2_quadratic"))
Q, R1, R2 = ws.get("Q"), ws.get("R1"), ws.get("R2")
ad = lck.adjoint(Q)

for R in (R1, R2):
    print(lck.check_o_operator(Q, ad, R).summary())

# any combination k1 R1 + k2 R2 is again an operator of the same kind
print(lck.check_compatible(Q, ad, R1, R2).summary())

# R1 induces a new bracket and a left-symmetric product on the same module
sub = subadjacent(Q, ad, R1)
print(sub.table)
print(lck.check_lca_axioms(sub).verdict, check_left_symmetric(induced_lsa(Q, ad, R1)).verdict)
