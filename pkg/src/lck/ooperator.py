"""O-operators, sub-adjacent brackets, compatibility and ON-structures."""
from __future__ import annotations

from dataclasses import dataclass

from .kernel import NU, L, M, CdHom, Poly, invert_hom, unit_vec, vec_add, vec_scale, vec_subs
from .lca import LcaStructure, PreconditionError, sesq, shift_out
from .nijenhuis import check_nijenhuis_operator, check_nijenhuis_structure
from .rep import RepStructure
from .report import Fact, Report

K1, K2 = Poly.var("_k1"), Poly.var("_k2")


def _shape(A: LcaStructure, R: RepStructure, T: CdHom):
    if T.source.rank != R.module.rank:
        raise ValueError(f"source of {T.name or 'T'} has rank {T.source.rank}, module {R.name} has rank {R.module.rank}")
    if T.target.rank != A.rank:
        raise ValueError(f"target of {T.name or 'T'} has rank {T.target.rank}, algebra {A.name} has rank {A.rank}")
    if R.algebra.rank != A.rank:
        raise ValueError(f"{R.name} is a module over an algebra of rank {R.algebra.rank}, not {A.name}")


def _lsa_terms(R: RepStructure, T: CdHom, i: int, j: int):
    m = R.module.rank
    return R.act(T.image(i), unit_vec(m, j)), shift_out(R.act(T.image(j), unit_vec(m, i), NU))


def check_o_operator(A: LcaStructure, R: RepStructure, T: CdHom) -> Report:
    """[T u L T v] - T(rho(T u)_L v - rho(T v)_{-L-D} u) on module generators."""
    _shape(A, R, T)
    rep = Report("ooperator", f"{A.name} {R.name} {T.name}".strip())
    rep.facts.append(Fact(f"{R.name} is a verified module", R.verified))
    m = R.module.rank
    vb = R.module.basis
    for i in range(m):
        for j in range(m):
            fwd, back = _lsa_terms(R, T, i, j)
            terms = [
                A.bracket(T.image(i), T.image(j)),
                vec_scale(-1, T.apply(fwd)),
                T.apply(back),
            ]
            rep.add_vec(f"oop({vb[i]},{vb[j]})", A.basis, terms, key=(i, j))
    return rep


def subadjacent_table(R: RepStructure, T: CdHom) -> tuple:
    m = R.module.rank
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            fwd, back = _lsa_terms(R, T, i, j)
            row.append(tuple(a - b for a, b in zip(fwd, back)))
        rows.append(tuple(row))
    return tuple(rows)


def _require_o(A, R, T):
    rep = check_o_operator(A, R, T)
    if not rep.passed:
        raise PreconditionError(f"{T.name or 'map'} is not an O-operator on ({A.name}; {R.name})", rep)


def subadjacent(A: LcaStructure, R: RepStructure, T: CdHom, check: bool = True) -> LcaStructure:
    """[u L v]^T = rho(T u)_L v - rho(T v)_{-L-D} u as a conformal algebra on V."""
    if check:
        _require_o(A, R, T)
    return LcaStructure(R.module.renamed(f"{R.name}^{T.name or 'T'}"), subadjacent_table(R, T))


@dataclass(frozen=True)
class LsaStructure:
    """Left-symmetric conformal product u *_L v = table[u][v]."""

    module: object
    table: tuple

    def product(self, X, Y, lam=L):
        return sesq(self.table, X, Y, lam, self.module.rank)


def induced_lsa(A: LcaStructure, R: RepStructure, T: CdHom, check: bool = True) -> LsaStructure:
    if check:
        _require_o(A, R, T)
    m = R.module.rank
    table = tuple(tuple(R.act(T.image(i), unit_vec(m, j)) for j in range(m)) for i in range(m))
    return LsaStructure(R.module, table)


def check_left_symmetric(S: LsaStructure) -> Report:
    """(a*_L b)*_{L+M} c - a*_L(b*_M c) - (b*_M a)*_{L+M} c + b*_M(a*_L c)."""
    rep = Report("lsa", S.module.name)
    m, B, P = S.module.rank, S.module.basis, S.table
    at_mu = [[vec_subs(P[i][j], {"L": M}) for j in range(m)] for i in range(m)]
    for a in range(m):
        ea = unit_vec(m, a)
        for b in range(m):
            eb = unit_vec(m, b)
            for c in range(m):
                ec = unit_vec(m, c)
                terms = [
                    S.product(P[a][b], ec, L + M),
                    vec_scale(-1, S.product(ea, at_mu[b][c], L)),
                    vec_scale(-1, S.product(at_mu[b][a], ec, L + M)),
                    S.product(eb, P[a][c], M),
                ]
                rep.add_vec(f"lsa({B[a]},{B[b]},{B[c]})", B, terms, key=(a, b, c))
    return rep


def check_compatible(A: LcaStructure, R: RepStructure, T1: CdHom, T2: CdHom) -> Report:
    """k1*T1 + k2*T2 is an O-operator for indeterminate k1, k2."""
    combo = (T1 * K1 + T2 * K2).named(f"k1*{T1.name}+k2*{T2.name}")
    rep = check_o_operator(A, R, combo)
    rep.check = "compatible"
    rep.subject = f"{A.name} {R.name} {T1.name} {T2.name}".strip()
    for T in (T1, T2):
        pre = check_o_operator(A, R, T)
        pre.check = f"pre:ooperator {T.name}".rstrip()
        rep.parts.append(pre)
    return rep


def deformed_s_terms(R: RepStructure, T: CdHom, S: CdHom) -> tuple:
    """[u L v]^T_S = [S u L v]^T + [u L S v]^T - S[u L v]^T, kept as three terms per entry."""
    sub = subadjacent_table(R, T)
    m = R.module.rank
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            ei, ej = unit_vec(m, i), unit_vec(m, j)
            v = [
                sesq(sub, S.image(i), ej, L, m),
                sesq(sub, ei, S.image(j), L, m),
                vec_scale(-1, S.apply(sub[i][j])),
            ]
            row.append(v)
        rows.append(tuple(row))
    return tuple(rows)


def deformed_s_table(R: RepStructure, T: CdHom, S: CdHom) -> tuple:
    return tuple(tuple(vec_add(*terms) for terms in row) for row in deformed_s_terms(R, T, S))


def check_on_structure(A: LcaStructure, R: RepStructure, T: CdHom, N: CdHom, S: CdHom) -> Report:
    _shape(A, R, T)
    rep = Report("on-structure", f"{A.name} {R.name} {T.name} {N.name} {S.name}".strip())
    NT, TS = N @ T, T @ S
    for j in range(T.source.rank):
        for k in range(A.rank):
            rep.add(f"NT=TS({R.module.basis[j]})[{A.basis[k]}]", [NT.matrix[j][k], -TS.matrix[j][k]], key=("commute", j))
    lhs = subadjacent_table(R, NT)
    rhs = deformed_s_terms(R, T, S)
    vb = R.module.basis
    for i in range(R.module.rank):
        for j in range(R.module.rank):
            rep.add_vec(f"bracket({vb[i]},{vb[j]})", vb, [lhs[i][j]] + [vec_scale(-1, t) for t in rhs[i][j]],
                        key=("bracket", i, j))
    pre_o = check_o_operator(A, R, T)
    pre_o.check = "pre:ooperator"
    pre_n = check_nijenhuis_structure(A, R, N, S)
    pre_n.check = "pre:nijstructure"
    rep.parts += [pre_o, pre_n]
    return rep


@dataclass(frozen=True)
class ONCandidate:
    T: CdHom
    N: CdHom
    S: CdHom

    def check(self, A: LcaStructure, R: RepStructure) -> Report:
        return check_on_structure(A, R, self.T, self.N, self.S)


def hierarchy(A: LcaStructure, R: RepStructure, T: CdHom, N: CdHom, S: CdHom, kmax: int):
    """T_k = N^k o T for k <= kmax, with every operator and every pair checked."""
    ops = []
    for k in range(kmax + 1):
        Tk = (N ** k) @ T
        ops.append(Tk.with_modules(T.source, T.target).named(f"{N.name}^{k}{T.name}" if k else T.name))
    rep = Report("hierarchy", f"{A.name} {R.name} {T.name} {N.name} {S.name} kmax={kmax}")
    pre = check_on_structure(A, R, T, N, S)
    pre.check = "pre:on-structure"
    rep.parts.append(pre)
    for k, Tk in enumerate(ops):
        r = check_o_operator(A, R, Tk)
        r.check = f"T{k}"
        rep.parts.append(r)
    for k in range(len(ops)):
        for l in range(k + 1, len(ops)):
            r = check_o_operator(A, R, (ops[k] * K1 + ops[l] * K2))
            r.check = f"T{k}~T{l}"
            rep.parts.append(r)
    return ops, rep


def nijenhuis_from_compatible(A: LcaStructure, R: RepStructure, T1: CdHom, T2: CdHom):
    """N = T1 o T2^-1 together with its Nijenhuis report."""
    comp = check_compatible(A, R, T1, T2)
    if not comp.passed:
        raise PreconditionError("operators are not compatible", comp)
    N = (T1 @ invert_hom(T2)).with_modules(A.module, A.module).named("N")
    return N, check_nijenhuis_operator(A, N)


def on_from_compatible(A: LcaStructure, R: RepStructure, T: CdHom, T1: CdHom):
    """For invertible T compatible with T1: S = T^-1 o T1 and N = T1 o T^-1.

    Returns the candidates (T, N, S) and (T1, N, S) with their reports.
    """
    comp = check_compatible(A, R, T, T1)
    if not comp.passed:
        raise PreconditionError("operators are not compatible", comp)
    Tinv = invert_hom(T)
    S = (Tinv @ T1).with_modules(R.module, R.module).named("S")
    N = (T1 @ Tinv).with_modules(A.module, A.module).named("N")
    out = []
    for base in (T, T1):
        cand = ONCandidate(base, N, S)
        out.append((cand, cand.check(A, R)))
    return out


__all__ = [
    "check_o_operator", "subadjacent", "subadjacent_table", "induced_lsa", "check_left_symmetric",
    "LsaStructure", "check_compatible", "check_on_structure", "ONCandidate", "hierarchy",
    "nijenhuis_from_compatible", "on_from_compatible", "deformed_s_table", "deformed_s_terms",
]
