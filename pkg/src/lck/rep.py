"""Conformal modules: action tables, their axioms and standard constructions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .kernel import (
    NU,
    CdHom,
    CdModule,
    D,
    L,
    M,
    Vec,
    as_poly,
    coerce_vec,
    unit_vec,
    vec_add,
    vec_scale,
    vec_subs,
    zero_vec,
)
from .lca import ConstructionError, LcaStructure, PreconditionError, _check_table_symbols, deformed_bracket, sesq
from .report import Fact, Report


@dataclass(frozen=True)
class RepStructure:
    """rho(e_i)_L v_j = sum_k table[i][j][k](L, D) v_k."""

    algebra: LcaStructure
    module: CdModule
    table: tuple

    def __post_init__(self):
        n, m = self.algebra.rank, self.module.rank
        rows = tuple(tuple(tuple(as_poly(x) for x in v) for v in row) for row in self.table)
        if len(rows) != n or any(len(r) != m or any(len(v) != m for v in r) for r in rows):
            raise ConstructionError(f"action table of {self.module.name} must be {n}x{m}x{m}")
        _check_table_symbols((v for r in rows for v in r), {"L", "D"}, f"action table of {self.module.name}")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_entries(cls, algebra: LcaStructure, module: CdModule, entries: Mapping) -> "RepStructure":
        """Build from {(algebra generator, module generator): value}; missing entries are zero."""
        n, m = algebra.rank, module.rank
        table = [[zero_vec(m) for _ in range(m)] for _ in range(n)]
        for (a, v), val in entries.items():
            table[algebra.module.index(a)][module.index(v)] = coerce_vec(val, module, allowed={"D", "L"})
        return cls(algebra, module, tuple(tuple(r) for r in table))

    @property
    def name(self) -> str:
        return self.module.name

    def renamed(self, name: str) -> "RepStructure":
        return RepStructure(self.algebra, self.module.renamed(name), self.table)

    def act(self, x: Vec, v: Vec, lam=L) -> Vec:
        """rho(x)_lam v with the sesquilinear rule."""
        return sesq(self.table, x, v, lam, self.module.rank)

    @cached_property
    def verified(self) -> bool:
        return check_rep_axioms(self).passed


def check_rep_axioms(R: RepStructure) -> Report:
    A = R.algebra
    rep = Report("module", f"{R.name} over {A.name}")
    rep.facts.append(Fact("algebra satisfies the axioms", A.verified))
    n, m, P = A.rank, R.module.rank, A.table
    vb = R.module.basis
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(n):
            ej = unit_vec(n, j)
            for k in range(m):
                vk = unit_vec(m, k)
                t1 = R.act(P[i][j], vk, L + M)
                t2 = vec_scale(-1, R.act(ei, R.act(ej, vk, M), L))
                t3 = R.act(ej, R.act(ei, vk, L), M)
                rep.add_vec(f"module({A.basis[i]},{A.basis[j]},{vb[k]})", vb, [t1, t2, t3], key=(i, j, k))
    return rep


def adjoint(A: LcaStructure) -> RepStructure:
    return RepStructure(A, A.module, A.table)


def trivial(A: LcaStructure, m: int = 1, name: str = "C") -> RepStructure:
    module = CdModule(name, tuple(f"c{i + 1}" for i in range(m)))
    return RepStructure(A, module, tuple(tuple(zero_vec(m) for _ in range(m)) for _ in range(A.rank)))


def coadjoint(R: RepStructure, check: bool = True) -> RepStructure:
    """Dual module: rho*(e_i)_L e_j* = -sum_k Q[i][k][j](L, -L-D) e_k*."""
    if check and not R.verified:
        raise PreconditionError(f"{R.name} is not a verified module")
    n, m = R.algebra.rank, R.module.rank
    table = []
    for i in range(n):
        row = []
        for j in range(m):
            row.append(tuple(-R.table[i][k][j].subs({"D": -L - D}) for k in range(m)))
        table.append(tuple(row))
    return RepStructure(R.algebra, R.module.dual(), tuple(table))


def deformed_action_table(R: RepStructure, N: CdHom, S: CdHom) -> tuple:
    n, m = R.algebra.rank, R.module.rank
    rows = []
    for i in range(n):
        ei = unit_vec(n, i)
        row = []
        for j in range(m):
            vj = unit_vec(m, j)
            row.append(vec_add(
                R.act(N.image(i), vj),
                vec_scale(-1, R.act(ei, S.image(j))),
                S.apply(R.act(ei, vj)),
            ))
        rows.append(tuple(row))
    return tuple(rows)


def deformed_rep(R: RepStructure, N: CdHom, S: CdHom, check: bool = True) -> RepStructure:
    """rho~(a)_L v = rho(N a)_L v - rho(a)_L S v + S(rho(a)_L v), over the algebra deformed by N."""
    if check:
        from .nijenhuis import check_nijenhuis_structure

        pre = check_nijenhuis_structure(R.algebra, R, N, S)
        if not pre.passed:
            raise PreconditionError("(N, S) is not a Nijenhuis structure", pre)
    A_N = deformed_bracket(R.algebra, N)
    return RepStructure(A_N, R.module.renamed(f"{R.name}~"), deformed_action_table(R, N, S))


def shifted_action(R: RepStructure, x: Vec, v: Vec) -> Vec:
    """rho(x)_{-L-D} v."""
    return vec_subs(R.act(x, v, NU), {"_n": -L - D})
