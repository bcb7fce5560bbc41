"""Conformal 2-forms, symplectic and symplectic-Nijenhuis structures."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .kernel import (
    ZERO,
    CdHom,
    D,
    L,
    M,
    Poly,
    as_poly,
    dual_hom,
    hom_det_unit,
    invert_hom,
    unit_vec,
)
from .lca import Cochain2, ConstructionError, LcaStructure, check_2cocycle
from .report import Fact, Report

SKEW_NOTE = "a 2-form satisfies w[i][j](L) = -w[j][i](-L); this is what sesquilinearity forces"


@dataclass(frozen=True)
class TwoForm:
    """{f(D) e_i L g(D) e_j} = f(-L) g(L) table[i][j](L)."""

    algebra: LcaStructure
    table: tuple
    name: str = field(default="w", compare=False)

    def __post_init__(self):
        n = self.algebra.rank
        rows = tuple(tuple(as_poly(x) for x in row) for row in self.table)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ConstructionError(f"form table must be {n}x{n}")
        for x in (x for r in rows for x in r):
            bad = [s for s in x.symbols if s in {"D", "M", "D1", "D2", "D3", "_n"}]
            if bad:
                raise ConstructionError(f"form entries are polynomials in L only, found {bad[0]}")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] + rows[j][i].subs({"L": -L}) != ZERO:
                    b = self.algebra.basis
                    raise ConstructionError(f"form is not skew-symmetric at ({b[i]},{b[j]})")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_entries(cls, algebra: LcaStructure, entries: Mapping, name: str = "w") -> "TwoForm":
        """Entries on one triangle; the partner is -entry(-L)."""
        n = algebra.rank
        rows = [[ZERO] * n for _ in range(n)]
        given = {}
        for (a, b), c in entries.items():
            given[(algebra.module.index(a), algebra.module.index(b))] = as_poly(c)
        for (i, j), c in given.items():
            rows[i][j] = c
        for (i, j), c in given.items():
            if i != j and (j, i) not in given:
                rows[j][i] = -c.subs({"L": -L})
        return cls(algebra, tuple(tuple(r) for r in rows), name)

    def eval(self, X, Y, lam: Poly = L) -> Poly:
        total = ZERO
        xs = [x.subs({"D": -lam}) for x in X]
        ys = [y.subs({"D": lam}) for y in Y]
        for i, xi in enumerate(xs):
            if xi.is_zero():
                continue
            for j, yj in enumerate(ys):
                w = self.table[i][j]
                if yj.is_zero() or w.is_zero():
                    continue
                total = total + xi * yj * (w if lam == L else w.subs({"L": lam}))
        return total

    def as_cochain(self) -> Cochain2:
        return Cochain2(self.algebra, None, tuple(tuple((x,) for x in row) for row in self.table))

    def named(self, name: str) -> "TwoForm":
        return TwoForm(self.algebra, self.table, name)


def omega_natural(w: TwoForm) -> CdHom:
    """w#: A -> A*, with matrix H[i][j](D) = w[i][j](-D)."""
    A = w.algebra
    rows = tuple(tuple(x.subs({"L": -D}) for x in row) for row in w.table)
    return CdHom(A.module, A.module.dual(), rows, f"{w.name}#")


def is_nondegenerate(w: TwoForm) -> bool:
    return hom_det_unit(omega_natural(w)).unit


def check_closed(w: TwoForm) -> Report:
    """{e_i L [e_j M e_k]} - {e_j M [e_i L e_k]} - {[e_i L e_j]_{L+M} e_k} on generators."""
    A = w.algebra
    rep = Report("closed", w.name)
    n, P, B = A.rank, A.table, A.basis
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(n):
            ej = unit_vec(n, j)
            for k in range(n):
                ek = unit_vec(n, k)
                jk_mu = tuple(x.subs({"L": M}) for x in P[j][k])
                terms = [w.eval(ei, jk_mu, L), -w.eval(ej, P[i][k], M), -w.eval(P[i][j], ek, L + M)]
                rep.add(f"closed({B[i]},{B[j]},{B[k]})", terms, key=(i, j, k))
    return rep


def nondegeneracy_report(w: TwoForm) -> Report:
    unit, d = hom_det_unit(omega_natural(w))
    rep = Report("nondegenerate", w.name)
    rep.facts.append(Fact("w# is invertible over C[D]", unit, f"det = {d}"))
    return rep


def check_symplectic(w: TwoForm) -> Report:
    """Closed and non-degenerate; a closed but degenerate form gets the verdict ``split``."""
    cocycle = check_2cocycle(w.as_cochain())
    nondeg = nondegeneracy_report(w)
    return Report("symplectic", w.name, parts=[cocycle, nondeg], split=True, notes=[SKEW_NOTE])


def omega_N(w: TwoForm, N: CdHom, k: int = 1) -> TwoForm:
    """{a L b}_{w_N} = {N a L b}_w, for N^k."""
    Nk = N ** k
    n = w.algebra.rank
    rows = tuple(
        tuple(sum((Nk.matrix[i][l].subs({"D": -L}) * w.table[l][j] for l in range(n)), ZERO) for j in range(n))
        for i in range(n)
    )
    return TwoForm(w.algebra, rows, f"{w.name}_{N.name or 'N'}^{k}")


def sn1_residuals(w: TwoForm, N: CdHom) -> Report:
    rep = Report("sn1", f"{w.name} {N.name}".strip())
    n, B = w.algebra.rank, w.algebra.basis
    for i in range(n):
        for j in range(n):
            left = [N.matrix[i][l].subs({"D": -L}) * w.table[l][j] for l in range(n)]
            right = [-(N.matrix[j][l].subs({"D": L}) * w.table[i][l]) for l in range(n)]
            rep.add(f"sn1({B[i]},{B[j]})", left + right, key=(i, j))
    return rep


def check_omega_Nk_closed(w: TwoForm, N: CdHom, kmax: int) -> Report:
    rep = Report("closed-family", f"{w.name} {N.name} kmax={kmax}")
    for k in range(1, kmax + 1):
        try:
            part = check_closed(omega_N(w, N, k))
        except ConstructionError as exc:
            part = Report("closed", f"{w.name}_N^{k}", error=str(exc))
        part.check = f"closed k={k}"
        rep.parts.append(part)
    return rep


def check_sn_structure(w: TwoForm, N: CdHom) -> Report:
    from .nijenhuis import check_nijenhuis_operator

    rep = sn1_residuals(w, N)
    rep.check = "sn-structure"
    if rep.own_ok:
        closed = check_closed(omega_N(w, N))
    else:
        closed = Report("closed", f"{w.name}_N", facts=[Fact("w_N is a 2-form", False, "SN1 fails")])
    closed.check = "closed w_N"
    pre_s = check_symplectic(w)
    pre_s.check = "pre:symplectic"
    pre_n = check_nijenhuis_operator(w.algebra, N)
    pre_n.check = "pre:nijenhuis"
    rep.parts += [closed, pre_s, pre_n]
    return rep


def o_from_symplectic(w: TwoForm) -> CdHom:
    """(w#)^-1: A* -> A; raises NonInvertible for a degenerate form."""
    return invert_hom(omega_natural(w)).named(f"{w.name}#^-1")


def on_from_sn(w: TwoForm, N: CdHom):
    """The candidate ((w#)^-1, N, N*) on (A; ad*), returned with the coadjoint module."""
    from .ooperator import ONCandidate
    from .rep import adjoint, coadjoint

    return ONCandidate(o_from_symplectic(w), N, dual_hom(N)), coadjoint(adjoint(w.algebra))


def form_from_r(r) -> TwoForm:
    """The 2-form with w# = (r#_0)^-1 for a non-degenerate r."""
    from .ybe import r_sharp0

    H = invert_hom(r_sharp0(r))
    rows = tuple(tuple(x.subs({"D": -L}) for x in row) for row in H.matrix)
    return TwoForm(r.algebra, rows, f"w_{r.name}")


__all__ = [
    "TwoForm", "omega_natural", "is_nondegenerate", "check_closed", "check_symplectic", "omega_N",
    "check_omega_Nk_closed", "check_sn_structure", "o_from_symplectic", "on_from_sn", "form_from_r",
    "sn1_residuals", "nondegeneracy_report",
]
