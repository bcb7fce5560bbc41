"""
A closed form that is not symplectic
====================================

"""

import lck
from lck.symplectic import nondegeneracy_report

ws = lck.parse_file(lck.corpus_file("sn3"))
A, w = ws.get("A"), ws.get("w")

# the form satisfies the cocycle condition
print(lck.check_2cocycle(w.as_cochain()).verdict)

# but its map to the dual has determinant D^4, not a unit
print(lck.omega_natural(w).matrix)
print(nondegeneracy_report(w).facts)

# so the combined check is split rather than a plain failure
rep = lck.check_symplectic(w)
print(rep.verdict)
print(rep.summary())

# the same verdict from the command line, as JSON
from lck.cli import main
main(["check", str(lck.corpus_file("sn3")), "--json"])
