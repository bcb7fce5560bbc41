"""Lie conformal algebras given by structure tables on free generators.

Everything reduces to one evaluation rule.  For a table ``T`` with
``T[i][j]`` the image of ``e_i (x) e_j`` as a vector of polynomials in
``(L, D)``::

    sesq(T, X, Y, lam) = sum_ij X_i(-lam) * Y_j(lam + D) * T[i][j](lam, D)

where ``X`` and ``Y`` are coefficient vectors whose ``D`` is the derivation
on each argument.  Other symbols in ``X`` and ``Y`` (an outer spectral
parameter, say) ride along as scalars, which is exactly the inner
coefficient rule needed for the Jacobi identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .kernel import (
    NU,
    ZERO,
    CdElement,
    CdHom,
    CdModule,
    D,
    L,
    M,
    Poly,
    Vec,
    as_poly,
    coerce_vec,
    unit_vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_subs,
    zero_vec,
)
from .report import Report

DEFORMATION_NOTE = (
    "the deformation parameter is a formal indeterminate, so the check holds for every real or complex value"
)


class ConstructionError(ValueError):
    pass


class PreconditionError(ValueError):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


class CochainError(ConstructionError):
    pass


class Unsupported(NotImplementedError):
    pass


def sesq(table, X: Sequence[Poly], Y: Sequence[Poly], lam: Poly, out_rank: int | None = None) -> Vec:
    """Sesquilinear extension of a generator table to coefficient vectors."""
    if not lam.free_of("D"):
        raise ValueError("spectral argument must not contain D; use sesq_shifted")
    if out_rank is None:
        out_rank = len(table[0][0])
    out = [ZERO] * out_rank
    plain = lam == L
    xs = [None if x.is_zero() else x.subs({"D": -lam}) for x in X]
    ys = [None if y.is_zero() else y.subs({"D": lam + D}) for y in Y]
    for i, xi in enumerate(xs):
        if xi is None:
            continue
        for j, yj in enumerate(ys):
            if yj is None:
                continue
            entry = table[i][j]
            if vec_is_zero(entry):
                continue
            c = xi * yj
            for k, t in enumerate(entry):
                if t.is_zero():
                    continue
                out[k] = out[k] + c * (t if plain else t.subs({"L": lam}))
    return tuple(out)


def shift_out(v: Vec) -> Vec:
    """Replace the helper spectral symbol by -L-D (the ``-lambda-d`` slot)."""
    return vec_subs(v, {"_n": -L - D})


def sesq_shifted(table, X, Y, out_rank: int | None = None) -> Vec:
    """The same evaluation at spectral argument -L-D."""
    return shift_out(sesq(table, X, Y, NU, out_rank))


def swap_table_entry(v: Vec) -> Vec:
    """T[i][j](L, D) -> -T[i][j](-L-D, D): the skew partner of an entry."""
    return tuple(-x.subs({"L": -L - D}) for x in v)


def _check_table_symbols(entries, allowed: set, where: str):
    for v in entries:
        for x in v:
            bad = [s for s in x.symbols if s in {"D", "L", "M", "D1", "D2", "D3", "_n"} and s not in allowed]
            if bad:
                raise ConstructionError(f"{where}: symbol {bad[0]} not permitted")


@dataclass(frozen=True)
class LcaStructure:
    """Rank-n lambda-bracket table: [e_i L e_j] = sum_k table[i][j][k](L, D) e_k."""

    module: CdModule
    table: tuple
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.module.rank
        rows = tuple(tuple(tuple(as_poly(x) for x in v) for v in row) for row in self.table)
        if len(rows) != n or any(len(r) != n or any(len(v) != n for v in r) for r in rows):
            raise ConstructionError(f"bracket table of {self.module.name} must be {n}x{n}x{n}")
        _check_table_symbols((v for r in rows for v in r), {"L", "D"}, f"bracket table of {self.module.name}")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_entries(cls, module: CdModule | Sequence[str], entries: Mapping, name: str = "A", notes=()) -> "LcaStructure":
        """Build from {(i, j): value} given on one triangle; the other is filled by skew-symmetry.

        Values may be vectors, {generator: coefficient} maps or DSL text such as
        ``"(D + 2*L)*a"``.  Redundant entries must agree with skew-symmetry.
        """
        if not isinstance(module, CdModule):
            module = CdModule(name, tuple(module))
        n = module.rank
        given: dict = {}
        for (a, b), val in entries.items():
            i, j = module.index(a), module.index(b)
            given[(i, j)] = coerce_vec(val, module, allowed={"D", "L"})
        table = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
        for (i, j), v in given.items():
            table[i][j] = v
        for (i, j), v in given.items():
            if i == j:
                continue
            partner = swap_table_entry(v)
            if (j, i) in given:
                if given[(j, i)] != partner:
                    raise ConstructionError(
                        f"[{module.basis[j]},{module.basis[i]}] disagrees with skew-symmetry of "
                        f"[{module.basis[i]},{module.basis[j]}]"
                    )
            else:
                table[j][i] = partner
        return cls(module, tuple(tuple(r) for r in table), tuple(notes))

    @property
    def rank(self) -> int:
        return self.module.rank

    @property
    def basis(self) -> tuple:
        return self.module.basis

    @property
    def name(self) -> str:
        return self.module.name

    def renamed(self, name: str) -> "LcaStructure":
        return LcaStructure(self.module.renamed(name), self.table, self.notes)

    def bracket(self, X: Sequence[Poly], Y: Sequence[Poly], lam: Poly = L) -> Vec:
        return sesq(self.table, X, Y, lam, self.rank)

    def bracket_shifted(self, X, Y) -> Vec:
        return sesq_shifted(self.table, X, Y, self.rank)

    def gen(self, i) -> Vec:
        return unit_vec(self.rank, self.module.index(i))

    @cached_property
    def verified(self) -> bool:
        return check_lca_axioms(self).passed

    def is_abelian(self) -> bool:
        return all(vec_is_zero(v) for r in self.table for v in r)


def _elem(L_: LcaStructure, x) -> Vec:
    if isinstance(x, CdElement):
        if x.module.rank != L_.rank:
            raise ValueError(f"element of {x.module.name} does not belong to {L_.name}")
        return x.coeffs
    return coerce_vec(x, L_.module, allowed={"D"})


def bracket_eval(L_: LcaStructure, x, y, lam: Poly = L) -> Vec:
    """[x_lam y] for elements given as CdElement, vectors or DSL text."""
    return L_.bracket(_elem(L_, x), _elem(L_, y), lam)


def bracket_shifted(L_: LcaStructure, x, y) -> Vec:
    """[x_{-lam-D} y]."""
    return L_.bracket_shifted(_elem(L_, x), _elem(L_, y))


def check_lca_axioms(A: LcaStructure) -> Report:
    rep = Report("lca", A.name, notes=list(A.notes))
    n, P, B = A.rank, A.table, A.basis
    for i in range(n):
        for j in range(n):
            partner = vec_subs(P[j][i], {"L": -L - D})
            rep.add_vec(f"skew({B[i]},{B[j]})", B, [P[i][j], partner], key=("skew", i, j))
    at_mu = [[vec_subs(P[i][j], {"L": M}) for j in range(n)] for i in range(n)]
    for i in range(n):
        ei = unit_vec(n, i)
        for j in range(n):
            ej = unit_vec(n, j)
            for k in range(n):
                ek = unit_vec(n, k)
                t1 = A.bracket(ei, at_mu[j][k], L)
                t2 = vec_scale(-1, A.bracket(ej, P[i][k], M))
                t3 = vec_scale(-1, A.bracket(P[i][j], ek, L + M))
                rep.add_vec(f"jacobi({B[i]},{B[j]},{B[k]})", B, [t1, t2, t3], key=("jacobi", i, j, k))
    return rep


def check_lie_table(basis: Sequence[str], table, subject: str = "") -> Report:
    """Antisymmetry and Jacobi for a Lie algebra table over the scalar ring."""
    rep = Report("lie", subject)
    n = len(basis)

    def br(x, y):
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                for k, t in enumerate(table[i][j]):
                    out[k] = out[k] + xi * yj * t
        return tuple(out)

    for i in range(n):
        for j in range(i, n):
            rep.add_vec(f"antisym({basis[i]},{basis[j]})", basis, [table[i][j], table[j][i]], key=("antisym", i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = (unit_vec(n, t) for t in (i, j, k))
                terms = [br(ei, br(ej, ek)), br(ej, br(ek, ei)), br(ek, br(ei, ej))]
                rep.add_vec(f"jacobi({basis[i]},{basis[j]},{basis[k]})", basis, terms, key=("jacobi", i, j, k))
    return rep


class LieAlgebraError(ConstructionError):
    def __init__(self, report: Report):
        labels = ", ".join(lab for lab, _ in report.failures()[:4])
        super().__init__(f"not a Lie algebra: {labels}")
        self.report = report


def current(structure: Sequence, basis: Sequence[str] | None = None, name: str = "Cur") -> LcaStructure:
    """Current conformal algebra of a finite-dimensional Lie algebra.

    ``structure[i][j]`` is the vector of structure constants of [x_i, x_j].
    """
    n = len(structure)
    basis = tuple(basis or (f"x{i + 1}" for i in range(n)))
    table = tuple(tuple(tuple(as_poly(c) for c in structure[i][j]) for j in range(n)) for i in range(n))
    for v in (v for r in table for v in r):
        if any(not x.free_of("D", "L", "M") for x in v):
            raise ConstructionError("structure constants must be scalars")
    rep = check_lie_table(basis, table, name)
    if not rep.passed:
        raise LieAlgebraError(rep)
    return LcaStructure(CdModule(name, basis), table)


def _vbasis(A: LcaStructure, names: Sequence[str], tag: str) -> tuple:
    if set(names) & set(A.basis):
        return tuple(f"{b}_{tag}" for b in names)
    return tuple(names)


def semidirect(A: LcaStructure, R, name: str | None = None) -> LcaStructure:
    """A x| V with [e_i L v_j] = rho(e_i)_L v_j and [v L w] = 0."""
    if not R.verified:
        raise PreconditionError(f"{R.name} is not a verified module over {A.name}")
    n, m = A.rank, R.module.rank
    basis = A.basis + _vbasis(A, R.module.basis, R.name)
    z_n, z_m = zero_vec(n), zero_vec(m)
    table = [[None] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            table[i][j] = A.table[i][j] + z_m
        for j in range(m):
            act = R.table[i][j]
            table[i][n + j] = z_n + act
            table[n + j][i] = z_n + swap_table_entry(act)
    for i in range(m):
        for j in range(m):
            table[n + i][n + j] = z_n + z_m
    return LcaStructure(CdModule(name or f"{A.name}x{R.name}", basis), tuple(tuple(r) for r in table))


def _check_endo(A: LcaStructure, N: CdHom):
    if N.source.rank != A.rank or N.target.rank != A.rank:
        raise ValueError(f"map {N.name or ''} is not an endomorphism of {A.name} (rank {A.rank})")


def deformed_table(A: LcaStructure, N: CdHom) -> tuple:
    n = A.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            ei, ej = unit_vec(n, i), unit_vec(n, j)
            v = vec_add(
                A.bracket(N.image(i), ej),
                A.bracket(ei, N.image(j)),
                vec_scale(-1, N.apply(A.table[i][j])),
            )
            row.append(v)
        rows.append(tuple(row))
    return tuple(rows)


def deformed_bracket(A: LcaStructure, N: CdHom, name: str | None = None) -> LcaStructure:
    """{a L b}_N = [N a L b] + [a L N b] - N [a L b] (no Nijenhuis assumption)."""
    _check_endo(A, N)
    return LcaStructure(A.module.renamed(name or f"{A.name}_{N.name or 'N'}"), deformed_table(A, N))


# -- cochains ----------------------------------------------------------------

@dataclass(frozen=True)
class Cochain2:
    """A 2-lambda-cochain: c(e_i L e_j) = table[i][j].

    ``coefficients`` is a module over ``algebra`` or ``None`` for the trivial
    one-dimensional module, on which D acts by zero; then the entries are
    polynomials in L alone.
    """

    algebra: LcaStructure
    coefficients: object
    table: tuple

    def __post_init__(self):
        rows = tuple(tuple(tuple(as_poly(x) for x in v) for v in row) for row in self.table)
        object.__setattr__(self, "table", rows)
        bad = []
        n = self.algebra.rank
        for i in range(n):
            for j in range(i, n):
                if self.trivial:
                    s = vec_add(rows[i][j], vec_subs(rows[j][i], {"L": -L}))
                    if any(not x.free_of("D") for x in rows[i][j]):
                        raise CochainError("trivial-coefficient cochains cannot involve D")
                else:
                    s = vec_add(rows[i][j], vec_subs(rows[j][i], {"L": -L - D}))
                if not vec_is_zero(s):
                    bad.append((self.algebra.basis[i], self.algebra.basis[j], s))
        if bad:
            a, b, s = bad[0]
            raise CochainError(
                f"cochain is not skew-symmetric (sesquilinear extension fails) at ({a},{b}): "
                f"residual {', '.join(str(x) for x in s)}"
            )

    @property
    def trivial(self) -> bool:
        return self.coefficients is None

    @property
    def out_rank(self) -> int:
        return 1 if self.trivial else self.coefficients.module.rank

    @property
    def out_basis(self) -> tuple:
        return ("1",) if self.trivial else self.coefficients.module.basis

    def eval(self, X, Y, lam: Poly = L) -> Vec:
        return sesq(self.table, X, Y, lam, self.out_rank)


@dataclass(frozen=True)
class Cochain3:
    algebra: LcaStructure
    coefficients: object
    table: dict  # (i, j, k) -> vector in (L, M, D)


def _act(c, x: Vec, w: Vec, lam: Poly) -> Vec:
    if c.trivial:
        return zero_vec(1)
    return c.coefficients.act(x, w, lam)


def coboundary_1(A: LcaStructure, N: CdHom, coefficients=None) -> Cochain2:
    """dN(a L b) = rho(a)_L N b - rho(b)_{-L-D} N a - N [a L b]; adjoint coefficients by default."""
    from .rep import adjoint

    R = coefficients if coefficients is not None else adjoint(A)
    if N.source.rank != A.rank or N.target.rank != R.module.rank:
        raise ValueError("1-cochain has the wrong shape")
    n = A.rank
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            ei, ej = unit_vec(n, i), unit_vec(n, j)
            v = vec_add(
                R.act(ei, N.image(j), L),
                vec_scale(-1, shift_out(R.act(ej, N.image(i), NU))),
                vec_scale(-1, N.apply(A.table[i][j])),
            )
            row.append(v)
        table.append(tuple(row))
    return Cochain2(A, R, tuple(table))


def coboundary_2_terms(c: Cochain2, i: int, j: int, k: int) -> list:
    """The six terms of dc(e_i L e_j M e_k), before they are added."""
    A = c.algebra
    n = A.rank
    ei, ej, ek = (unit_vec(n, t) for t in (i, j, k))
    lam3 = -L - M - D
    terms = [
        _act(c, ei, c.eval(ej, ek, M), L),
        vec_scale(-1, _act(c, ej, c.eval(ei, ek, L), M)),
        vec_subs(c.eval(ek, A.bracket(ei, ej, L), NU), {"_n": lam3}),
        vec_subs(_act(c, ek, c.eval(ei, ej, L), NU), {"_n": lam3}),
        vec_scale(-1, c.eval(ej, A.bracket(ei, ek, L), M)),
        c.eval(ei, A.bracket(ej, ek, M), L),
    ]
    if c.trivial:
        terms = [vec_subs(t, {"D": ZERO}) for t in terms]
    return terms


def coboundary_2(c: Cochain2) -> Cochain3:
    n = c.algebra.rank
    table = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                table[(i, j, k)] = vec_add(*coboundary_2_terms(c, i, j, k))
    return Cochain3(c.algebra, c.coefficients, table)


def coboundary(x, A: LcaStructure | None = None, coefficients=None):
    """d on 1- and 2-cochains; higher degrees are out of scope."""
    if isinstance(x, CdHom):
        if A is None:
            raise ValueError("a 1-cochain needs its algebra")
        return coboundary_1(A, x, coefficients)
    if isinstance(x, Cochain2):
        return coboundary_2(x)
    raise Unsupported("only cochains of degree 1 and 2 are supported")


def check_2cocycle(c: Cochain2) -> Report:
    A = c.algebra
    rep = Report("cocycle", A.name)
    n = A.rank
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lab = f"d({A.basis[i]},{A.basis[j]},{A.basis[k]})"
                rep.add_vec(lab, c.out_basis, coboundary_2_terms(c, i, j, k), key=(i, j, k))
    return rep


def deform_with_parameter(A: LcaStructure, omega: Cochain2, param: str = "t", name: str | None = None) -> LcaStructure:
    """The table P + t*C, with t a fresh indeterminate."""
    if omega.trivial or omega.out_rank != A.rank:
        raise ValueError("deformation cochain must take values in the adjoint module")
    used = {s for r in A.table for v in r for x in v for s in x.symbols}
    used |= {s for r in omega.table for v in r for x in v for s in x.symbols}
    if param in used:
        raise ValueError(f"parameter {param!r} already occurs in the data")
    t = Poly.var(param)
    table = tuple(
        tuple(vec_add(A.table[i][j], vec_scale(t, omega.table[i][j])) for j in range(A.rank))
        for i in range(A.rank)
    )
    return LcaStructure(A.module.renamed(name or f"{A.name}_{param}"), table, A.notes + (DEFORMATION_NOTE,))


def virasoro(name: str = "Vir", gen: str = "a") -> LcaStructure:
    return LcaStructure.from_entries(CdModule(name, (gen,)), {(gen, gen): ((D + 2 * L),)})


def abelian(basis: Sequence[str], name: str = "Ab") -> LcaStructure:
    return LcaStructure.from_entries(CdModule(name, tuple(basis)), {})


__all__ = [
    "LcaStructure", "Cochain2", "Cochain3", "sesq", "sesq_shifted", "bracket_eval", "bracket_shifted",
    "check_lca_axioms", "current", "semidirect", "deformed_bracket", "deform_with_parameter",
    "coboundary", "coboundary_1", "coboundary_2", "check_2cocycle", "virasoro", "abelian",
    "ConstructionError", "PreconditionError", "CochainError", "Unsupported", "LieAlgebraError",
]
