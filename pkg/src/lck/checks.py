"""The check kinds available to ``check`` statements, and how to run one."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import gdnov, lca, nijenhuis, ooperator, rep, symplectic, ybe
from .report import Report


@dataclass(frozen=True)
class CheckSpec:
    args: tuple  # argument kinds; "module" also accepts an algebra (its adjoint module)
    run: Callable
    doc: str = ""


def _hierarchy(A, V, T, N, S, k):
    return ooperator.hierarchy(A, V, T, N, S, k)[1]


def _sn_on(w, N):
    cand, R = symplectic.on_from_sn(w, N)
    return cand.check(w.algebra, R)


def _lsa(A, V, T):
    return ooperator.check_left_symmetric(ooperator.induced_lsa(A, V, T))


def _cocycle(w):
    return lca.check_2cocycle(w.as_cochain())


def _nij_gd(G, N):
    if isinstance(G, gdnov.NovikovAlgebra):
        return gdnov.check_nijenhuis_novikov(G, N)
    return gdnov.check_nijenhuis_gd(G, N)


def _novikov(G):
    nov = G.novikov if isinstance(G, gdnov.GDBialgebra) else G
    return gdnov.check_novikov(nov.table, nov.basis, nov.name)


def _gd(G):
    return gdnov.check_gd(G.novikov.table, G.lie, G.basis, G.name)


CHECKS = {
    "lca": CheckSpec(("algebra",), lca.check_lca_axioms, "sesquilinear table satisfies skew-symmetry and Jacobi"),
    "module": CheckSpec(("module",), rep.check_rep_axioms, "action table is a conformal module"),
    "nijenhuis": CheckSpec(("algebra", "map"), nijenhuis.check_nijenhuis_operator, "Nijenhuis operator"),
    "nijstructure": CheckSpec(("algebra", "module", "map", "map"), nijenhuis.check_nijenhuis_structure),
    "semidirect-nijenhuis": CheckSpec(("algebra", "module", "map", "map"),
                                      nijenhuis.check_semidirect_characterization),
    "ooperator": CheckSpec(("algebra", "module", "map"), ooperator.check_o_operator),
    "lsa": CheckSpec(("algebra", "module", "map"), _lsa, "induced left-symmetric product"),
    "compatible": CheckSpec(("algebra", "module", "map", "map"), ooperator.check_compatible),
    "on-structure": CheckSpec(("algebra", "module", "map", "map", "map"), ooperator.check_on_structure),
    "hierarchy": CheckSpec(("algebra", "module", "map", "map", "map", "int"), _hierarchy),
    "skew": CheckSpec(("tensor",), ybe.is_skew),
    "cybe": CheckSpec(("tensor",), ybe.cybe_check),
    "cybe-equivalence": CheckSpec(("tensor",), ybe.check_cybe_equivalence),
    "nondegenerate-r": CheckSpec(("tensor",), ybe.is_nondegenerate_r),
    "rmatrix-nijenhuis": CheckSpec(("tensor", "map"), ybe.check_rmatrix_nijenhuis),
    "r-family": CheckSpec(("tensor", "map", "int"), ybe.r_family_compatibility),
    "symplectic": CheckSpec(("form",), symplectic.check_symplectic),
    "closed": CheckSpec(("form",), symplectic.check_closed),
    "cocycle": CheckSpec(("form",), _cocycle),
    "sn-structure": CheckSpec(("form", "map"), symplectic.check_sn_structure),
    "closed-family": CheckSpec(("form", "map", "int"), symplectic.check_omega_Nk_closed),
    "sn-on": CheckSpec(("form", "map"), _sn_on, "((w#)^-1, N, N*) is an ON-structure on the coadjoint module"),
    "novikov": CheckSpec(("novikov|gd",), _novikov),
    "gd": CheckSpec(("gd",), _gd),
    "nijenhuis-gd": CheckSpec(("novikov|gd", "map"), _nij_gd),
    "lift": CheckSpec(("novikov|gd", "map"), gdnov.lift_report),
}
CHECKS["nijenhuis-structure"] = CHECKS["nijstructure"]


def resolve_args(ws, kind: str, args) -> list:
    spec = CHECKS[kind]
    out = []
    for a, want in zip(args, spec.args):
        if want == "int":
            out.append(a)
        elif want == "module":
            out.append(ws.rep_of(a))
        else:
            out.append(ws.get(a, *want.split("|")))
    return out


def run_check(ws, stmt, timing: bool = False) -> tuple[Report, int | None]:
    """Run one check statement; failures to even evaluate become an ``error`` verdict."""
    subject = " ".join(str(a) for a in stmt.args)
    t0 = time.perf_counter()
    try:
        report = CHECKS[stmt.kind].run(*resolve_args(ws, stmt.kind, stmt.args))
    except Exception as exc:  # reported, never raised
        report = Report(stmt.kind, subject, error=f"{type(exc).__name__}: {exc}")
    millis = int((time.perf_counter() - t0) * 1000) if timing else None
    report.check = stmt.kind
    report.subject = subject
    return report, millis
