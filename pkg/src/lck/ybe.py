"""Tensors in A(x)A, the map r# and the conformal classical Yang-Baxter equation.

A tensor r = sum R[i][j](D1, D2) e_i (x) e_j stores one derivation symbol
per slot (``D1``, ``D2``, ``D3``), so that ``D1^p D2^q`` stands for
``d^p e_i (x) d^q e_j``.  The image of the total derivation on A(x)A(x)A is
the ideal generated by D1 + D2 + D3; we reduce modulo it by D3 -> -D1 - D2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .kernel import (
    ZERO,
    CdHom,
    D,
    D1,
    D2,
    D3,
    L,
    Poly,
    as_poly,
    hom_det_unit,
    invert_hom,
    vec_scale,
)
from .lca import ConstructionError, LcaStructure
from .report import Fact, Report


@dataclass(frozen=True)
class Tensor2:
    algebra: LcaStructure
    table: tuple  # table[i][j] is a polynomial in D1, D2
    name: str = field(default="r", compare=False)

    def __post_init__(self):
        n = self.algebra.rank
        rows = tuple(tuple(as_poly(x) for x in row) for row in self.table)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ConstructionError(f"tensor table must be {n}x{n}")
        for x in (x for r in rows for x in r):
            bad = [s for s in x.symbols if s in {"D", "L", "M", "D3", "_n"}]
            if bad:
                raise ConstructionError(f"tensor coefficients may only use D1, D2 and parameters, not {bad[0]}")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_entries(cls, algebra: LcaStructure, entries: Mapping, name: str = "r") -> "Tensor2":
        n = algebra.rank
        rows = [[ZERO] * n for _ in range(n)]
        for (a, b), c in entries.items():
            rows[algebra.module.index(a)][algebra.module.index(b)] = as_poly(c)
        return cls(algebra, tuple(tuple(r) for r in rows), name)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def __add__(self, other: "Tensor2") -> "Tensor2":
        return Tensor2(self.algebra, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.table, other.table)))

    def __mul__(self, c) -> "Tensor2":
        c = as_poly(c)
        return Tensor2(self.algebra, tuple(tuple(c * a for a in r) for r in self.table), self.name)

    __rmul__ = __mul__

    def named(self, name: str) -> "Tensor2":
        return Tensor2(self.algebra, self.table, name)

    def flip(self) -> "Tensor2":
        """r^21."""
        n = self.rank
        swap = {"D1": D2, "D2": D1}
        return Tensor2(self.algebra, tuple(tuple(self.table[j][i].subs(swap) for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class Tensor3:
    algebra: LcaStructure
    table: dict  # (i, j, k) -> polynomial in D1, D2, D3

    def reduced(self) -> "Tensor3":
        return Tensor3(self.algebra, {k: v.subs({"D3": -D1 - D2}) for k, v in self.table.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.table.values())


def is_skew(r: Tensor2) -> Report:
    rep = Report("skew", r.name)
    swap = {"D1": D2, "D2": D1}
    B = r.algebra.basis
    for i in range(r.rank):
        for j in range(r.rank):
            rep.add(f"skew({B[i]},{B[j]})", [r.table[i][j], r.table[j][i].subs(swap)], key=(i, j))
    return rep


def r_sharp_matrix(r: Tensor2) -> tuple:
    """r#_L(e_j*) = sum_k R[j][k](-L-D, D) e_k, as a matrix in (L, D)."""
    return tuple(tuple(x.subs({"D1": -L - D, "D2": D}) for x in row) for row in r.table)


def r_sharp0(r: Tensor2) -> CdHom:
    A = r.algebra
    rows = tuple(tuple(x.subs({"D1": -D, "D2": D}) for x in row) for row in r.table)
    return CdHom(A.module.dual(), A.module, rows, f"{r.name}#")


def is_lambda_constant(r: Tensor2) -> bool:
    """Whether r#_L does not depend on L."""
    return all(x.free_of("L") for row in r_sharp_matrix(r) for x in row)


def is_nondegenerate_r(r: Tensor2) -> Report:
    """Both halves of non-degeneracy: r#_L = r#_0 and r#_0 invertible."""
    rep = Report("nondegenerate-r", r.name)
    rep.facts.append(Fact("r# is independent of L", is_lambda_constant(r)))
    unit, d = hom_det_unit(r_sharp0(r))
    rep.facts.append(Fact("r#_0 is invertible", unit, f"det = {d}"))
    rep.notes.append("non-degeneracy is read as two separate conditions: L-independence and invertibility")
    return rep


def _cybe_terms(r: Tensor2):
    """The three sums of [[r, r]] as dictionaries over (i, j, k), not yet reduced."""
    A = r.algebra
    n, P, R = A.rank, A.table, r.table
    t1, t2, t3 = {}, {}, {}

    def bump(d, key, val):
        if not val.is_zero():
            d[key] = d.get(key, ZERO) + val

    # [a_i M a_j] (x) b_i (x) b_j, M -> D2
    R_a = [[R[p][q].subs({"D1": -D2}) for q in range(n)] for p in range(n)]
    R_b = [[R[p][q].subs({"D1": D1 + D2, "D2": D3}) for q in range(n)] for p in range(n)]
    P1 = [[[P[p][s][k].subs({"L": D2, "D": D1}) for k in range(n)] for s in range(n)] for p in range(n)]
    # a_i (x) [a_j M b_i] (x) b_j, M -> D3
    R_c = [[R[p][q].subs({"D2": D2 + D3}) for q in range(n)] for p in range(n)]
    R_d = [[R[p][q].subs({"D1": -D3, "D2": D3}) for q in range(n)] for p in range(n)]
    P2 = [[[P[p][s][k].subs({"L": D3, "D": D2}) for k in range(n)] for s in range(n)] for p in range(n)]
    # a_i (x) a_j (x) [b_j M b_i], M -> D2
    R_e = R_c
    R_f = [[R[p][q].subs({"D1": D2, "D2": -D2}) for q in range(n)] for p in range(n)]
    P3 = [[[P[p][s][k].subs({"L": D2, "D": D3}) for k in range(n)] for s in range(n)] for p in range(n)]

    for p in range(n):
        for q in range(n):
            for p2 in range(n):
                for q2 in range(n):
                    c1 = R_a[p][q] * R_b[p2][q2]
                    if not c1.is_zero():
                        for k in range(n):
                            bump(t1, (k, q, q2), c1 * P1[p][p2][k])
                    c2 = R_c[p][q] * R_d[p2][q2]
                    if not c2.is_zero():
                        for k in range(n):
                            bump(t2, (p, k, q2), c2 * P2[p2][q][k])
                    c3 = R_e[p][q] * R_f[p2][q2]
                    if not c3.is_zero():
                        for k in range(n):
                            bump(t3, (p, p2, k), c3 * P3[q2][q][k])
    return t1, t2, t3


def cybe_bracket(r: Tensor2, reduce: bool = True) -> Tensor3:
    """[[r, r]] as a Tensor3, reduced modulo D1 + D2 + D3 unless ``reduce`` is False."""
    t1, t2, t3 = _cybe_terms(r)
    n = r.rank
    table = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                key = (i, j, k)
                table[key] = t1.get(key, ZERO) - t2.get(key, ZERO) - t3.get(key, ZERO)
    out = Tensor3(r.algebra, table)
    return out.reduced() if reduce else out


def cybe_check(r: Tensor2) -> Report:
    rep = Report("cybe", r.name)
    t1, t2, t3 = _cybe_terms(r)
    n, B = r.rank, r.algebra.basis
    red = {"D3": -D1 - D2}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                key = (i, j, k)
                terms = [t1.get(key, ZERO).subs(red), -t2.get(key, ZERO).subs(red), -t3.get(key, ZERO).subs(red)]
                rep.add(f"cybe({B[i]},{B[j]},{B[k]})", terms, key=key)
    return rep


def check_cybe_equivalence(r: Tensor2) -> Report:
    """The tensor expansion of [[r, r]] and the O-operator test on r#_0 over ad*, side by side."""
    from .ooperator import check_o_operator
    from .rep import adjoint, coadjoint

    A = r.algebra
    direct = cybe_check(r)
    via = check_o_operator(A, coadjoint(adjoint(A), check=False), r_sharp0(r))
    via.check = "ooperator"
    rep = Report("cybe-equivalence", r.name, parts=[direct, via])
    rep.facts.append(Fact("both paths agree", direct.passed == via.passed,
                          f"cybe {direct.verdict}, ooperator {via.verdict}"))
    return rep


def check_rmatrix_nijenhuis(r: Tensor2, N: CdHom) -> Report:
    """N o r#_L = r#_L o N* at symbolic L, plus the ON condition for (r#_0, N, N*)."""
    from .kernel import dual_hom
    from .nijenhuis import check_nijenhuis_operator
    from .ooperator import check_on_structure
    from .rep import adjoint, coadjoint

    A = r.algebra
    rep = Report("rmatrix-nijenhuis", f"{r.name} {N.name}".strip())
    Rs = r_sharp_matrix(r)
    n = A.rank
    for p in range(n):
        left = N.apply(Rs[p])
        right = [ZERO] * n
        for q in range(n):
            f = N.matrix[q][p].subs({"D": -D - L})
            if f.is_zero():
                continue
            for k in range(n):
                right[k] = right[k] + f * Rs[q][k]
        rep.add_vec(f"intertwine({A.basis[p]}')", A.basis, [left, vec_scale(-1, right)], key=("intertwine", p))
    for check, sub in (("pre:skew", is_skew(r)), ("pre:cybe", cybe_check(r)), ("pre:nijenhuis", check_nijenhuis_operator(A, N))):
        sub.check = check
        rep.parts.append(sub)
    on = check_on_structure(A, coadjoint(adjoint(A)), r_sharp0(r), N, dual_hom(N))
    on.check = "on-structure"
    rep.parts.append(on)
    return rep


def r_deform(r: Tensor2, N: CdHom, k: int = 1) -> Tensor2:
    """(id (x) N^k)(r): R_N[i][l](D1, D2) = sum_j R[i][j](D1, D2) N^k[j][l](D2)."""
    Nk = N ** k
    n = r.rank
    mat = [[Nk.matrix[j][l].subs({"D": D2}) for l in range(n)] for j in range(n)]
    rows = tuple(
        tuple(sum((r.table[i][j] * mat[j][l] for j in range(n)), ZERO) for l in range(n)) for i in range(n)
    )
    return Tensor2(r.algebra, rows, f"{r.name}_{N.name or 'N'}^{k}" if k else r.name)


def r_family_compatibility(r: Tensor2, N: CdHom, kmax: int) -> Report:
    """Each r_{N^k} is skew and solves the CYBE, and so does every k1*r_{N^k} + k2*r_{N^l}."""
    k1, k2 = Poly.var("_k1"), Poly.var("_k2")
    fam = [r_deform(r, N, k) for k in range(kmax + 1)]
    rep = Report("r-family", f"{r.name} {N.name} kmax={kmax}")
    for k, rk in enumerate(fam):
        s = is_skew(rk)
        s.check = f"skew r{k}"
        c = cybe_check(rk)
        c.check = f"cybe r{k}"
        rep.parts += [s, c]
    for k in range(len(fam)):
        for l in range(k + 1, len(fam)):
            c = cybe_check(fam[k] * k1 + fam[l] * k2)
            c.check = f"r{k}~r{l}"
            rep.parts.append(c)
    return rep


def r_from_symplectic(omega) -> Tensor2:
    """The skew tensor r with <b, (w#)^-1(a)>_L = <a (x) b, r>_(-L, L) on dual generators."""
    from .symplectic import omega_natural

    G = invert_hom(omega_natural(omega))
    n = omega.algebra.rank
    half = Fraction(1, 2)
    rows = tuple(
        tuple((G.matrix[p][q].subs({"D": D2}) - G.matrix[q][p].subs({"D": D1})) * half for q in range(n))
        for p in range(n)
    )
    r = Tensor2(omega.algebra, rows, f"r_{omega.name}")
    for p in range(n):
        for q in range(n):
            if r.table[p][q].subs({"D1": -L, "D2": L}) != G.matrix[p][q].subs({"D": L}):
                raise ConstructionError("form is not skew-symmetric; no tensor satisfies the pairing identity")
    return r


__all__ = [
    "Tensor2", "Tensor3", "is_skew", "r_sharp0", "r_sharp_matrix", "is_lambda_constant", "is_nondegenerate_r",
    "cybe_bracket", "cybe_check", "check_cybe_equivalence", "check_rmatrix_nijenhuis", "r_deform", "r_family_compatibility",
    "r_from_symplectic",
]
