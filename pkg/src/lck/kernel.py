"""Exact polynomials over Q and free modules over C[d].

Polynomials carry named, commuting symbols.  By convention ``D`` is the
derivation acting on the output slot, ``L`` and ``M`` are spectral
parameters, ``D1``, ``D2``, ``D3`` are the derivations acting on the slots
of a tensor, and every other name is a scalar parameter.  Keeping one symbol
per slot is what lets "move the derivation to the left" be plain
substitution.
"""
from __future__ import annotations

import os
import random
import zlib
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import product
from math import lcm
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np


class SymbolKind(Enum):
    DERIV = "deriv"
    SPECTRAL = "spectral"
    SLOT = "slot"
    PARAM = "param"


_KINDS = {
    "D": SymbolKind.DERIV,
    "L": SymbolKind.SPECTRAL,
    "M": SymbolKind.SPECTRAL,
    "_n": SymbolKind.SPECTRAL,
    "D1": SymbolKind.SLOT,
    "D2": SymbolKind.SLOT,
    "D3": SymbolKind.SLOT,
}
RESERVED_SYMBOLS = frozenset(k for k in _KINDS if not k.startswith("_"))
_RENDER_RANK = {SymbolKind.DERIV: 0, SymbolKind.SPECTRAL: 1, SymbolKind.SLOT: 2, SymbolKind.PARAM: 3}


def symbol_kind(name: str) -> SymbolKind:
    return _KINDS.get(name, SymbolKind.PARAM)


class PolyError(Exception):
    pass


class DegreeOverflow(PolyError):
    def __init__(self, symbol: str, exponent: int, cap: int):
        super().__init__(f"exponent {exponent} of {symbol!r} exceeds cap {cap} (set LCK_MAX_DEGREE to raise it)")
        self.symbol, self.exponent, self.cap = symbol, exponent, cap


class UnknownSymbolError(PolyError):
    def __init__(self, symbol: str):
        super().__init__(f"unknown symbol {symbol!r}")
        self.symbol = symbol


class NonInvertible(ArithmeticError):
    def __init__(self, det: "Poly"):
        super().__init__(f"determinant {det} is not a nonzero rational")
        self.det = det


MAX_DEGREE = int(os.environ.get("LCK_MAX_DEGREE", "64"))


def set_max_degree(cap: int) -> None:
    global MAX_DEGREE
    MAX_DEGREE = int(cap)


Monomial = tuple  # sorted tuple of (symbol, exponent) pairs
Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for s, e in m2:
        e2 = d.get(s, 0) + e
        if e2 > MAX_DEGREE:
            raise DegreeOverflow(s, e2, MAX_DEGREE)
        d[s] = e2
    return tuple(sorted(d.items()))


def _sym_sort_key(s: str):
    return (_RENDER_RANK[symbol_kind(s)], s)


def _render_key(m: Monomial):
    core = [(s, e) for s, e in m if symbol_kind(s) is not SymbolKind.PARAM]
    par = [(s, e) for s, e in m if symbol_kind(s) is SymbolKind.PARAM]
    core.sort(key=lambda t: _sym_sort_key(t[0]))
    par.sort()
    return (
        -sum(e for _, e in core),
        [(_sym_sort_key(s), -e) for s, e in core],
        -sum(e for _, e in par),
        [(s, -e) for s, e in par],
    )


class Poly:
    """Polynomial with rational coefficients; immutable and canonical."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm(c)
        self.terms: dict = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Poly":
        if exp > MAX_DEGREE:
            raise DegreeOverflow(name, exp, MAX_DEGREE)
        return cls._raw({((name, exp),): 1} if exp else {(): 1})

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise PolyError(f"{self} is not constant")
        return self.terms.get((), 0)

    @property
    def symbols(self) -> tuple:
        return tuple(sorted({s for m in self.terms for s, _ in m}))

    def degree(self, symbol: str | None = None) -> int:
        if not self.terms:
            return -1
        if symbol is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(symbol, 0) for m in self.terms)

    def free_of(self, *symbols: str) -> bool:
        names = set(symbols)
        return not any(s in names for m in self.terms for s, _ in m)

    def coefficients(self, symbol: str) -> dict:
        """Split into {exponent: coefficient polynomial} with respect to one symbol."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for s, k in m:
                if s == symbol:
                    e = k
                else:
                    rest.append((s, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: Poly._raw(t) for e, t in out.items()}

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = _norm(v)
            else:
                t.pop(m, None)
        return Poly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: _norm(c * other) for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly._raw({})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            other = other.constant_value()
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        inv = Fraction(1) / Fraction(other)
        return self * _norm(inv)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def subs(self, bindings: Mapping[str, "Poly | int | Fraction"]) -> "Poly":
        """Simultaneous substitution; symbols not bound are left alone."""
        if not bindings or not self.terms:
            return self
        bind = {k: Poly._coerce(v) for k, v in bindings.items()}
        powers: dict = {}

        def power(s, e):
            key = (s, e)
            if key not in powers:
                powers[key] = bind[s] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self.terms.items():
            keep = []
            factor = None
            for s, e in m:
                if s in bind:
                    p = power(s, e)
                    factor = p if factor is None else factor * p
                else:
                    keep.append((s, e))
            base = Poly._raw({tuple(keep): c})
            term = base if factor is None else base * factor
            for mm, cc in term.terms.items():
                acc[mm] = acc.get(mm, 0) + cc
        return Poly(acc)

    def evaluate(self, point: Mapping[str, Coeff]) -> Coeff:
        total = 0
        for m, c in self.terms.items():
            v = c
            for s, e in m:
                if s not in point:
                    raise UnknownSymbolError(s)
                v = v * point[s] ** e
            total += v
        return _norm(total) if isinstance(total, Fraction) else total

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return render(self)


def render(p: Poly) -> str:
    """Canonical text: sorted monomials with explicit ``*`` and ``^``."""
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, key=_render_key):
        c = p.terms[m]
        factors = [s if e == 1 else f"{s}^{e}" for s, e in sorted(m, key=lambda t: _render_factor_key(t[0]))]
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _render_factor_key(s: str):
    kind = symbol_kind(s)
    return (0 if kind is SymbolKind.PARAM else 1, _sym_sort_key(s))


ZERO = Poly()
ONE = Poly.const(1)
D = Poly.var("D")
L = Poly.var("L")
M = Poly.var("M")
NU = Poly.var("_n")
D1, D2, D3 = Poly.var("D1"), Poly.var("D2"), Poly.var("D3")


def as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        from .dsl import parse_poly

        return parse_poly(x)
    return Poly.const(x)


def substitute(p: Poly, bindings: Mapping[str, Poly]) -> Poly:
    """Simultaneous substitution that insists every bound symbol occurs in ``p``."""
    present = set(p.symbols)
    for name in bindings:
        if name not in present:
            raise UnknownSymbolError(name)
    return p.subs(bindings)


def identity_test(p: Poly) -> bool:
    return p.is_zero()


# -- evaluation oracle ------------------------------------------------------

def oracle_values(symbol: str, count: int, seed: int = 0) -> list[int]:
    """``count`` distinct small integers for ``symbol``, fixed by ``seed``."""
    rng = random.Random((seed * 1_000_003) ^ zlib.crc32(symbol.encode()))
    span = max(count, 3)
    return rng.sample(range(-span, span + 1), count)


def _as_terms(p) -> list[Poly]:
    if isinstance(p, Poly):
        return [p]
    return [as_poly(t) for t in p]


def _grid(terms: list[Poly], count: int | None, seed: int):
    syms = sorted({s for t in terms for s in t.symbols})
    if count is None:
        counts = [max(t.degree(s) for t in terms) + 1 for s in syms]
    else:
        counts = [count] * len(syms)
    values = {s: oracle_values(s, n, seed) for s, n in zip(syms, counts)}
    return syms, values


def _evaluate_sum(terms: list[Poly], syms, values):
    """Evaluate the sum of ``terms`` on the full grid, exactly."""
    shape = tuple(len(values[s]) for s in syms)
    denoms = [c.denominator for t in terms for c in t.terms.values() if isinstance(c, Fraction)]
    scale = reduce(lcm, denoms, 1)
    bound = 0
    for t in terms:
        for m, c in t.terms.items():
            b = abs(c * scale)
            for s, e in m:
                b *= max(abs(v) for v in values[s]) ** e
            bound += b
    dtype = np.int64 if bound < 2**62 else object
    axes = {}
    for k, s in enumerate(syms):
        a = np.array(values[s], dtype=dtype)
        view = [1] * len(syms)
        view[k] = len(values[s])
        axes[s] = a.reshape(view)
    total = np.zeros(shape, dtype=dtype)
    for t in terms:
        for m, c in t.terms.items():
            block = np.full(shape, int(c * scale), dtype=dtype)
            for s, e in m:
                block = block * axes[s] ** e
            total = total + block
    return total


def evaluation_oracle(p, count: int | None = None, seed: int = 0) -> bool:
    """Decide whether ``p`` (a polynomial or a list of terms to be summed) vanishes
    by exact evaluation on a grid of ``count`` seeded integers per symbol.

    With ``count=None`` each symbol gets one more point than its degree, which
    certifies the answer; the terms are never combined symbolically.
    """
    return find_witness(p, count, seed) is None


def find_witness(p, count: int | None = None, seed: int = 0) -> dict | None:
    terms = _as_terms(p)
    syms, values = _grid(terms, count, seed)
    if not syms:
        return None if sum((t.terms.get((), 0) for t in terms), 0) == 0 else {}
    total = _evaluate_sum(terms, syms, values)
    nz = np.argwhere(total != 0)
    if len(nz) == 0:
        return None
    idx = nz[0]
    return {s: values[s][int(i)] for s, i in zip(syms, idx)}


# -- free C[d]-modules ------------------------------------------------------

@dataclass(frozen=True)
class CdModule:
    """Free C[d]-module with named generators."""

    name: str
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("a free module needs rank >= 1")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError(f"repeated basis name in {self.basis}")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self.basis.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a generator of {self.name}") from None

    def dual(self) -> "CdModule":
        return CdModule(self.name + "'", tuple(b + "'" for b in self.basis))

    def renamed(self, name: str) -> "CdModule":
        return CdModule(name, self.basis)


Vec = tuple  # tuple of Poly, one coefficient per generator


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(*vs: Vec) -> Vec:
    return tuple(sum(cs, ZERO) for cs in zip(*vs))


def vec_scale(c, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_subs(v: Vec, bindings) -> Vec:
    return tuple(x.subs(bindings) for x in v)


def vec_is_zero(v: Vec) -> bool:
    return all(x.is_zero() for x in v)


@dataclass(frozen=True)
class CdElement:
    """An element sum_i f_i(D) e_i of a free module."""

    module: CdModule
    coeffs: Vec

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_poly(c) for c in self.coeffs))
        if len(self.coeffs) != self.module.rank:
            raise ValueError(f"{len(self.coeffs)} coefficients for rank {self.module.rank}")

    @classmethod
    def generator(cls, module: CdModule, name) -> "CdElement":
        return cls(module, unit_vec(module.rank, module.index(name)))


@dataclass(frozen=True)
class CdHom:
    """C[d]-linear map given by T(e_j) = sum_k matrix[j][k](D) e_k."""

    source: CdModule
    target: CdModule
    matrix: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rows = tuple(tuple(as_poly(x) for x in row) for row in self.matrix)
        if len(rows) != self.source.rank or any(len(r) != self.target.rank for r in rows):
            raise ValueError(
                f"matrix shape does not match {self.source.rank} -> {self.target.rank}"
            )
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, module: CdModule, name: str = "id") -> "CdHom":
        n = module.rank
        return cls(module, module, tuple(unit_vec(n, j) for j in range(n)), name)

    @classmethod
    def zero(cls, source: CdModule, target: CdModule) -> "CdHom":
        return cls(source, target, tuple(zero_vec(target.rank) for _ in range(source.rank)), "0")

    @classmethod
    def scalar(cls, module: CdModule, c, name: str = "") -> "CdHom":
        c = as_poly(c)
        n = module.rank
        return cls(module, module, tuple(vec_scale(c, unit_vec(n, j)) for j in range(n)), name)

    @classmethod
    def from_images(cls, source: CdModule, target: CdModule, images: Mapping, name: str = "") -> "CdHom":
        """Build from {generator: image}; images are vectors, {name: coeff} maps or DSL text."""
        rows = [zero_vec(target.rank) for _ in range(source.rank)]
        for key, img in images.items():
            rows[source.index(key)] = coerce_vec(img, target, allowed={"D"})
        return cls(source, target, tuple(rows), name)

    @property
    def is_endo(self) -> bool:
        return self.source.rank == self.target.rank

    def apply(self, v: Sequence[Poly]) -> Vec:
        """Image of sum_j v_j e_j; coefficients may involve other symbols."""
        out = [ZERO] * self.target.rank
        for j, c in enumerate(v):
            c = as_poly(c)
            if c.is_zero():
                continue
            for k, t in enumerate(self.matrix[j]):
                if not t.is_zero():
                    out[k] = out[k] + c * t
        return tuple(out)

    def image(self, j: int) -> Vec:
        return self.matrix[j]

    def __matmul__(self, other: "CdHom") -> "CdHom":
        """Composition ``self o other``."""
        if other.target.rank != self.source.rank:
            raise ValueError("cannot compose: rank mismatch")
        rows = tuple(self.apply(other.matrix[j]) for j in range(other.source.rank))
        return CdHom(other.source, self.target, rows)

    def __add__(self, other: "CdHom") -> "CdHom":
        self._same_shape(other)
        return CdHom(self.source, self.target, tuple(vec_add(a, b) for a, b in zip(self.matrix, other.matrix)))

    def __sub__(self, other: "CdHom") -> "CdHom":
        self._same_shape(other)
        return CdHom(self.source, self.target, tuple(vec_sub(a, b) for a, b in zip(self.matrix, other.matrix)))

    def __mul__(self, c) -> "CdHom":
        c = as_poly(c)
        return CdHom(self.source, self.target, tuple(vec_scale(c, r) for r in self.matrix))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CdHom":
        if not self.is_endo:
            raise ValueError("powers need an endomorphism")
        out = CdHom.identity(self.source)
        for _ in range(k):
            out = self @ out
        return out

    def _same_shape(self, other):
        if (self.source.rank, self.target.rank) != (other.source.rank, other.target.rank):
            raise ValueError("homomorphisms have different shapes")

    def subs(self, bindings) -> "CdHom":
        return CdHom(self.source, self.target, tuple(vec_subs(r, bindings) for r in self.matrix), self.name)

    def with_modules(self, source: CdModule, target: CdModule) -> "CdHom":
        return CdHom(source, target, self.matrix, self.name)

    def named(self, name: str) -> "CdHom":
        return CdHom(self.source, self.target, self.matrix, name)

    def is_constant(self) -> bool:
        return all(x.free_of("D") for row in self.matrix for x in row)


def coerce_vec(value, module: CdModule, allowed=None) -> Vec:
    if isinstance(value, str):
        from .dsl import parse_element

        return parse_element(value, module.basis, allowed=allowed)
    if isinstance(value, Mapping):
        out = [ZERO] * module.rank
        for k, c in value.items():
            out[module.index(k)] = as_poly(c)
        return tuple(out)
    if isinstance(value, CdElement):
        return value.coeffs
    v = tuple(as_poly(c) for c in value)
    if len(v) != module.rank:
        raise ValueError(f"expected {module.rank} coefficients, got {len(v)}")
    return v


def pairing(alpha: Sequence[Poly], v: Sequence[Poly], lam: Poly = L) -> Poly:
    """<sum f_j e_j*, sum g_j e_j>_lam = sum f_j(-lam) g_j(lam)."""
    total = ZERO
    for f, g in zip(alpha, v):
        if f.is_zero() or g.is_zero():
            continue
        total = total + f.subs({"D": -lam}) * g.subs({"D": lam})
    return total


def dual_hom(S: CdHom) -> CdHom:
    """S*(e_j*) = sum_k S[k][j](-D) e_k*."""
    n, m = S.source.rank, S.target.rank
    rows = tuple(
        tuple(S.matrix[k][j].subs({"D": -D}) for k in range(n)) for j in range(m)
    )
    name = S.name + "*" if S.name else ""
    return CdHom(S.target.dual(), S.source.dual(), rows, name)


# -- determinants -----------------------------------------------------------

def det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant by Laplace expansion with memoised minors."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    memo: dict = {}

    def minor(row: int, cols: tuple) -> Poly:
        if row == n:
            return ONE
        if cols in memo:
            return memo[cols]
        total = ZERO
        for pos, c in enumerate(cols):
            a = matrix[row][c]
            if a.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def adjugate(matrix: Sequence[Sequence[Poly]]) -> tuple:
    n = len(matrix)
    if n == 1:
        return ((ONE,),)

    def cofactor(i, j):
        sub = [[matrix[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
        d = det(sub)
        return -d if (i + j) % 2 else d

    return tuple(tuple(cofactor(j, i) for j in range(n)) for i in range(n))


class UnitTest(NamedTuple):
    unit: bool
    det: Poly


def hom_det_unit(T: CdHom) -> UnitTest:
    if not T.is_endo:
        raise ValueError("determinant needs a square matrix")
    d = det(T.matrix)
    return UnitTest(d.is_constant() and not d.is_zero(), d)


def invert_hom(T: CdHom) -> CdHom:
    unit, d = hom_det_unit(T)
    if not unit:
        raise NonInvertible(d)
    inv = Fraction(1) / Fraction(d.constant_value())
    adj = adjugate(T.matrix)
    rows = tuple(tuple(x * _norm(inv) for x in row) for row in adj)
    name = T.name + "^-1" if T.name else ""
    return CdHom(T.target, T.source, rows, name)


def grid_points(symbols: Iterable[str], count: int, seed: int = 0):
    """All points of the seeded evaluation grid (for diagnostics and tests)."""
    syms = sorted(symbols)
    vals = [oracle_values(s, count, seed) for s in syms]
    for combo in product(*vals):
        yield dict(zip(syms, combo))
