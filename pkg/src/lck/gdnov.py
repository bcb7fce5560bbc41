"""Novikov algebras, Gel'fand-Dorfman bialgebras and the quadratic conformal algebras they give."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .kernel import ZERO, CdHom, CdModule, D, L, as_poly, unit_vec, vec_add, vec_scale, zero_vec
from .lca import ConstructionError, LcaStructure, PreconditionError, check_lie_table
from .report import Report


def _table(rows, d: int, what: str) -> tuple:
    t = tuple(tuple(tuple(as_poly(x) for x in v) for v in row) for row in rows)
    if len(t) != d or any(len(r) != d or any(len(v) != d for v in r) for r in t):
        raise ConstructionError(f"{what} table must be {d}x{d}x{d}")
    for x in (x for r in t for v in r for x in v):
        if not x.free_of("D", "L", "M", "D1", "D2", "D3", "_n"):
            raise ConstructionError(f"{what} structure constants must be scalars")
    return t


def _mul(table, x, y) -> tuple:
    d = len(table)
    out = [ZERO] * d
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y):
            if yj.is_zero():
                continue
            c = xi * yj
            for k, t in enumerate(table[i][j]):
                if not t.is_zero():
                    out[k] = out[k] + c * t
    return tuple(out)


def _matrix(N, d: int) -> tuple:
    if isinstance(N, CdHom):
        N = N.matrix
    M = tuple(tuple(as_poly(x) for x in row) for row in N)
    if len(M) != d or any(len(r) != d for r in M):
        raise ValueError(f"operator must be a {d}x{d} matrix")
    return M


def _apply(M, v) -> tuple:
    out = [ZERO] * len(M)
    for j, c in enumerate(v):
        if c.is_zero():
            continue
        for k, m in enumerate(M[j]):
            out[k] = out[k] + c * m
    return tuple(out)


def check_novikov(table, basis: Sequence[str] | None = None, subject: str = "") -> Report:
    """Right commutativity (a.b).c = (a.c).b and left symmetry of the associator."""
    d = len(table)
    basis = tuple(basis or (f"e{i + 1}" for i in range(d)))
    rep = Report("novikov", subject)
    E = [unit_vec(d, i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                a, b, c = E[i], E[j], E[k]
                ab, ac, ba = table[i][j], table[i][k], table[j][i]
                rep.add_vec(f"rcomm({basis[i]},{basis[j]},{basis[k]})", basis,
                            [_mul(table, ab, c), vec_scale(-1, _mul(table, ac, b))], key=("rcomm", i, j, k))
                rep.add_vec(f"lsym({basis[i]},{basis[j]},{basis[k]})", basis, [
                    _mul(table, ab, c),
                    vec_scale(-1, _mul(table, a, table[j][k])),
                    vec_scale(-1, _mul(table, ba, c)),
                    _mul(table, b, table[i][k]),
                ], key=("lsym", i, j, k))
    return rep


@dataclass(frozen=True)
class NovikovAlgebra:
    basis: tuple
    table: tuple  # a_i . a_j = sum table[i][j][k] a_k
    name: str = field(default="Nov", compare=False)

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "table", _table(self.table, len(basis), "Novikov"))
        rep = check_novikov(self.table, basis, self.name)
        if not rep.passed:
            labels = ", ".join(lab for lab, _ in rep.failures()[:4])
            raise ConstructionError(f"not a Novikov algebra: {labels}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul(self, x, y) -> tuple:
        return _mul(self.table, x, y)


def check_gd(nov_table, lie_table, basis: Sequence[str] | None = None, subject: str = "") -> Report:
    """Novikov axioms, Lie axioms and the compatibility identity."""
    d = len(nov_table)
    basis = tuple(basis or (f"e{i + 1}" for i in range(d)))
    rep = Report("gd", subject)
    E = [unit_vec(d, i) for i in range(d)]
    o = lambda x, y: _mul(nov_table, x, y)  # noqa: E731
    br = lambda x, y: _mul(lie_table, x, y)  # noqa: E731
    for i in range(d):
        for j in range(d):
            for k in range(d):
                a, b, c = E[i], E[j], E[k]
                terms = [
                    br(o(a, b), c),
                    o(br(a, b), c),
                    vec_scale(-1, o(a, br(b, c))),
                    vec_scale(-1, br(o(a, c), b)),
                    vec_scale(-1, o(br(a, c), b)),
                ]
                rep.add_vec(f"gd({basis[i]},{basis[j]},{basis[k]})", basis, terms, key=(i, j, k))
    nov = check_novikov(nov_table, basis, subject)
    lie = check_lie_table(basis, lie_table, subject)
    rep.parts += [nov, lie]
    return rep


@dataclass(frozen=True)
class GDBialgebra:
    novikov: NovikovAlgebra
    lie: tuple  # [a_i, a_j] = sum lie[i][j][k] a_k
    name: str = field(default="GD", compare=False)

    def __post_init__(self):
        lie = _table(self.lie, self.novikov.dim, "Lie")
        object.__setattr__(self, "lie", lie)
        rep = check_gd(self.novikov.table, lie, self.basis, self.name)
        if not rep.passed:
            labels = ", ".join(lab for lab, _ in rep.failures()[:4])
            raise ConstructionError(f"not a Gel'fand-Dorfman bialgebra: {labels}")

    @classmethod
    def from_novikov(cls, nov: NovikovAlgebra, name: str | None = None) -> "GDBialgebra":
        """The bialgebra with zero Lie bracket."""
        d = nov.dim
        zero = tuple(tuple(zero_vec(d) for _ in range(d)) for _ in range(d))
        return cls(nov, zero, name or nov.name)

    @property
    def basis(self) -> tuple:
        return self.novikov.basis

    @property
    def dim(self) -> int:
        return self.novikov.dim


def quadratic_from_gd(gd: GDBialgebra, name: str | None = None) -> LcaStructure:
    """[a L b] = D (b.a) + L (a.b + b.a) + [b, a]."""
    if not isinstance(gd, GDBialgebra):
        raise PreconditionError("quadratic_from_gd needs a verified GDBialgebra")
    d, P, Q = gd.dim, gd.novikov.table, gd.lie
    table = tuple(
        tuple(vec_add(vec_scale(D, P[j][i]), vec_scale(L, vec_add(P[i][j], P[j][i])), Q[j][i]) for j in range(d))
        for i in range(d)
    )
    return LcaStructure(CdModule(name or gd.name, gd.basis), table)


def _nij_terms(table, M, i, j):
    d = len(table)
    ei, ej = unit_vec(d, i), unit_vec(d, j)
    Na, Nb = M[i], M[j]
    return [
        _apply(M, _mul(table, Na, ej)),
        _apply(M, _mul(table, ei, Nb)),
        vec_scale(-1, _apply(M, _apply(M, table[i][j]))),
        vec_scale(-1, _mul(table, Na, Nb)),
    ]


def _check_nij(check: str, table, basis, N, subject) -> Report:
    d = len(table)
    M = _matrix(N, d)
    rep = Report(check, subject)
    for i in range(d):
        for j in range(d):
            rep.add_vec(f"nij({basis[i]},{basis[j]})", basis, _nij_terms(table, M, i, j), key=(i, j))
    return rep


def check_nijenhuis_novikov(nov: NovikovAlgebra, N) -> Report:
    """N(Na.b + a.Nb - N(a.b)) - Na.Nb on basis pairs."""
    return _check_nij("nijenhuis-novikov", nov.table, nov.basis, N, nov.name)


def check_nijenhuis_lie(basis, lie_table, N, subject: str = "") -> Report:
    return _check_nij("nijenhuis-lie", lie_table, tuple(basis), N, subject)


def check_nijenhuis_gd(gd: GDBialgebra, N) -> Report:
    return Report("nijenhuis-gd", gd.name, parts=[
        check_nijenhuis_novikov(gd.novikov, N),
        check_nijenhuis_lie(gd.basis, gd.lie, N, gd.name),
    ])


def _deformed(table, M) -> tuple:
    d = len(table)
    return tuple(
        tuple(vec_add(_mul(table, M[i], unit_vec(d, j)), _mul(table, unit_vec(d, i), M[j]),
                      vec_scale(-1, _apply(M, table[i][j]))) for j in range(d))
        for i in range(d)
    )


def deformed_novikov(nov: NovikovAlgebra, N, name: str | None = None) -> NovikovAlgebra:
    """a ._N b = Na.b + a.Nb - N(a.b); the constructor re-checks the Novikov axioms."""
    M = _matrix(N, nov.dim)
    return NovikovAlgebra(nov.basis, _deformed(nov.table, M), name or f"{nov.name}_N")


def deformed_gd(gd: GDBialgebra, N, name: str | None = None) -> GDBialgebra:
    M = _matrix(N, gd.dim)
    nov = deformed_novikov(gd.novikov, M, f"{gd.novikov.name}_N")
    return GDBialgebra(nov, _deformed(gd.lie, M), name or f"{gd.name}_N")


def lift_hom(N, module: CdModule | LcaStructure, name: str = "N~") -> CdHom:
    """The C[D]-linear extension f(D)a -> f(D)N(a) of a scalar matrix."""
    if isinstance(module, LcaStructure):
        module = module.module
    M = _matrix(N, module.rank)
    return CdHom(module, module, M, name)


__all__ = [
    "NovikovAlgebra", "GDBialgebra", "check_novikov", "check_gd", "quadratic_from_gd",
    "check_nijenhuis_novikov", "check_nijenhuis_lie", "check_nijenhuis_gd", "deformed_novikov",
    "deformed_gd", "lift_hom", "lift_report",
]


def lift_report(gd, N) -> Report:
    """Scalar Nijenhuis check, its conformal lift, and whether deforming commutes with lifting."""
    from .lca import deformed_bracket
    from .nijenhuis import check_nijenhuis_operator
    from .report import Fact

    if isinstance(gd, NovikovAlgebra):
        gd = GDBialgebra.from_novikov(gd)
    M = _matrix(N, gd.dim)
    Q = quadratic_from_gd(gd)
    Nt = lift_hom(M, Q)
    scalar = check_nijenhuis_gd(gd, M)
    conformal = check_nijenhuis_operator(Q, Nt)
    conformal.check = "lifted"
    rep = Report("lift", gd.name, parts=[scalar, conformal])
    if scalar.passed:
        left = quadratic_from_gd(deformed_gd(gd, M)).table
        right = deformed_bracket(Q, Nt).table
        rep.facts.append(Fact("quadratic(deformed GD) equals deformed(quadratic)", left == right))
    return rep
