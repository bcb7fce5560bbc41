"""Nijenhuis operators on conformal algebras and Nijenhuis structures on LP pairs."""
from __future__ import annotations

from .kernel import CdHom, CdModule, unit_vec, vec_scale, zero_vec
from .lca import LcaStructure, PreconditionError, _check_endo, deformed_bracket, semidirect
from .rep import RepStructure
from .report import Fact, Report


def check_nijenhuis_operator(A: LcaStructure, N: CdHom) -> Report:
    """N({a L b}_N) - [N a L N b] on every generator pair."""
    _check_endo(A, N)
    rep = Report("nijenhuis", f"{A.name} {N.name}".strip())
    n = A.rank
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(n):
            ej = unit_vec(n, j)
            terms = [
                N.apply(A.bracket(N.image(i), ej)),
                N.apply(A.bracket(ei, N.image(j))),
                vec_scale(-1, N.apply(N.apply(A.table[i][j]))),
                vec_scale(-1, A.bracket(N.image(i), N.image(j))),
            ]
            rep.add_vec(f"nij({A.basis[i]},{A.basis[j]})", A.basis, terms, key=("A", i, j))
    return rep


def deformed_bracket_checked(A: LcaStructure, N: CdHom, name: str | None = None) -> LcaStructure:
    rep = check_nijenhuis_operator(A, N)
    if not rep.passed:
        raise PreconditionError(f"{N.name or 'map'} is not a Nijenhuis operator on {A.name}", rep)
    return deformed_bracket(A, N, name)


def _shapes(A: LcaStructure, R: RepStructure, N: CdHom, S: CdHom):
    _check_endo(A, N)
    m = R.module.rank
    if S.source.rank != m or S.target.rank != m:
        raise ValueError(f"map {S.name or ''} is not an endomorphism of {R.name} (rank {m})")


def structure_residuals(A: LcaStructure, R: RepStructure, N: CdHom, S: CdHom) -> Report:
    """rho(Na) S v - S rho(Na) v - rho(a) S^2 v + S rho(a) S v, per generator pair."""
    rep = Report("structure", f"{A.name} {R.name} {N.name} {S.name}".strip())
    n, m = A.rank, R.module.rank
    vb = R.module.basis
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(m):
            vj = unit_vec(m, j)
            Svj = S.image(j)
            terms = [
                R.act(N.image(i), Svj),
                vec_scale(-1, S.apply(R.act(N.image(i), vj))),
                vec_scale(-1, R.act(ei, S.apply(Svj))),
                S.apply(R.act(ei, Svj)),
            ]
            rep.add_vec(f"nijstructure({A.basis[i]},{vb[j]})", vb, terms, key=("AV", i, j))
    return rep


def check_nijenhuis_structure(A: LcaStructure, R: RepStructure, N: CdHom, S: CdHom) -> Report:
    _shapes(A, R, N, S)
    rep = structure_residuals(A, R, N, S)
    rep.check = "nijstructure"
    pre = check_nijenhuis_operator(A, N)
    pre.check = "pre:nijenhuis"
    rep.parts.append(pre)
    rep.facts.append(Fact(f"{R.name} is a verified module", R.verified))
    return rep


def trivial_deformation_residuals(A: LcaStructure, R: RepStructure, N: CdHom, S: CdHom) -> Report:
    """rho(Na) S v - S rho(Na) v - S rho(a) S v + S^2 rho(a) v: the condition making
    (N, S) generate a trivial deformation of the pair."""
    _shapes(A, R, N, S)
    rep = Report("trivial-deformation", f"{A.name} {R.name} {N.name} {S.name}".strip())
    n, m = A.rank, R.module.rank
    vb = R.module.basis
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(m):
            vj = unit_vec(m, j)
            terms = [
                R.act(N.image(i), S.image(j)),
                vec_scale(-1, S.apply(R.act(N.image(i), vj))),
                vec_scale(-1, S.apply(R.act(ei, S.image(j)))),
                S.apply(S.apply(R.act(ei, vj))),
            ]
            rep.add_vec(f"trivdef({A.basis[i]},{vb[j]})", vb, terms, key=("AV", i, j))
    return rep


def direct_sum_hom(N: CdHom, S: CdHom, module: CdModule) -> CdHom:
    n, m = N.source.rank, S.source.rank
    rows = [tuple(N.image(i)) + zero_vec(m) for i in range(n)]
    rows += [zero_vec(n) + tuple(S.image(j)) for j in range(m)]
    return CdHom(module, module, tuple(rows), f"{N.name}+{S.name}")


def _location(key, n):
    _, p, q = key
    if p < n and q < n:
        return ("A", p, q)
    if p >= n and q >= n:
        return ("VV", p - n, q - n)
    return ("AV", p, q - n) if p < n else ("AV", q, p - n)


def check_semidirect_characterization(A: LcaStructure, R: RepStructure, N: CdHom, S: CdHom) -> Report:
    """N+S is Nijenhuis on the semidirect product iff N is Nijenhuis and the
    trivial-deformation condition holds; both sides are computed and compared."""
    _shapes(A, R, N, S)
    DV = semidirect(A, R)
    side1 = check_nijenhuis_operator(DV, direct_sum_hom(N, S, DV.module))
    side1.check = "semidirect"
    side2 = Report("components", A.name, parts=[
        check_nijenhuis_operator(A, N),
        trivial_deformation_residuals(A, R, N, S),
    ])
    locs1 = {_location(k, A.rank) for k in side1.failed_keys()}
    locs2 = side2.failed_keys()
    rep = Report("semidirect-nijenhuis", f"{A.name} {R.name} {N.name} {S.name}".strip(), parts=[side1, side2])
    rep.facts.append(Fact("both sides agree", side1.passed == side2.passed and locs1 == locs2,
                          f"semidirect failures at {sorted(locs1)}, component failures at {sorted(locs2)}"))
    return rep


def powers(N: CdHom, k: int) -> CdHom:
    out = N ** k
    return out.named(f"{N.name}^{k}" if N.name else "")


__all__ = [
    "check_nijenhuis_operator", "check_nijenhuis_structure", "check_semidirect_characterization",
    "trivial_deformation_residuals", "deformed_bracket_checked", "direct_sum_hom", "powers",
]
