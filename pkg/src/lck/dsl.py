"""The ``.lck`` language: tokenizer, parser, workspace and canonical emitter.

A file is a sequence of statements::

    scalars k l;
    algebra A basis a b { [a,a] = (D + 2*L)*a; [a,b] = (D + k*L + l)*b; }
    module V over A basis a b { a.a = (D + L)*a; }
    module Vs = coadjoint(V);
    algebra DA = semidirect(A, Vs);
    map N : DA -> DA { a -> k*a; }
    tensor r in A (x) A = a (x) b - b (x) a;
    form w on DA { (a, a') = -1; }
    check lca DA;

Inside expressions ``D`` is the derivation, ``L`` and ``M`` the spectral
parameters and ``D1 D2 D3`` the slot derivations of a tensor.  Which of these
may appear depends on the block.  ``(x)`` after a generator in a tensor
expression is always the tensor sign.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .kernel import (
    RESERVED_SYMBOLS,
    ZERO,
    CdHom,
    CdModule,
    Poly,
    dual_hom,
    invert_hom,
    render,
    zero_vec,
)
from .lca import (
    LcaStructure,
    coboundary_1,
    deform_with_parameter,
    deformed_bracket,
    semidirect,
    swap_table_entry,
)
from .rep import RepStructure, adjoint, coadjoint, deformed_rep, trivial
from .report import Report


class DslError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected=()):
        self.message, self.line, self.col, self.expected = message, line, col, tuple(expected)
        where = f"{line}:{col}: " if line else ""
        tail = f" (expected {' or '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{tail}")


# -- tokens ------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, op, eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>(?:#|//)[^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<int>\d+)"
    r"|(?P<op>->|\*\*|[\[\]{}(),;.=+\-*/^:])"
)


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind in ("ident", "int", "op"):
            out.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- workspace ---------------------------------------------------------------

@dataclass
class CheckStmt:
    kind: str
    args: tuple
    line: int = 0


@dataclass
class Workspace:
    params: list = field(default_factory=list)
    objects: dict = field(default_factory=dict)  # name -> (kind, object)
    checks: list = field(default_factory=list)

    def get(self, name: str, *kinds: str):
        if name not in self.objects:
            raise KeyError(name)
        kind, obj = self.objects[name]
        if kinds and kind not in kinds:
            raise TypeError(f"{name} is a {kind}, expected {' or '.join(kinds)}")
        return obj

    def kind(self, name: str) -> str:
        return self.objects[name][0]

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, (k, _) in self.objects.items() if kind is None or k == kind]

    def module_of(self, name: str) -> CdModule:
        """The free module behind a space, algebra or representation; ``X'`` is the dual of X."""
        if name in self.objects:
            kind, obj = self.objects[name]
            if kind == "space":
                return obj
            if kind == "algebra":
                return obj.module
            if kind == "module":
                return obj.module
            raise TypeError(f"{name} is a {kind}, not a space")
        if name.endswith("'"):
            return self.module_of(name[:-1]).dual()
        raise KeyError(name)

    def rep_of(self, name: str) -> RepStructure:
        """A representation; an algebra name stands for its adjoint module."""
        kind, obj = self.objects[name]
        if kind == "module":
            return obj
        if kind == "algebra":
            return adjoint(obj)
        raise TypeError(f"{name} is a {kind}, expected module or algebra")


# -- expressions -------------------------------------------------------------

class _Lin(dict):
    """A linear combination: generator (or generator pair) -> coefficient."""

    def add(self, other: "_Lin", sign: int = 1) -> "_Lin":
        out = _Lin(self)
        for k, c in other.items():
            out[k] = out.get(k, ZERO) + sign * c
        return out

    def scale(self, c: Poly) -> "_Lin":
        return _Lin({k: c * v for k, v in self.items()})


@dataclass
class _Ctx:
    allowed: frozenset
    gens: tuple = ()
    pairs: bool = False
    what: str = "expression"


class Parser:
    def __init__(self, text: str, ws: Workspace | None = None):
        self.toks = tokenize(text)
        self.pos = 0
        self.ws = ws if ws is not None else Workspace()

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def error(self, msg: str, expected=(), tok: Token | None = None):
        t = tok or self.tok
        raise DslError(msg, t.line, t.col, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def eat(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of file"
            self.error(f"unexpected {found!r}", (repr(text),))
        t = self.tok
        self.pos += 1
        return t

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            found = self.tok.text or "end of file"
            self.error(f"unexpected {found!r}", (what,))
        t = self.tok
        self.pos += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.error(f"unexpected {self.tok.text or 'end of file'!r}", ("integer",))
        t = self.tok
        self.pos += 1
        return int(t.text)

    # expressions
    def expr(self, ctx: _Ctx):
        neg = False
        if self.at("-"):
            self.pos += 1
            neg = True
        elif self.at("+"):
            self.pos += 1
        val = self.term(ctx)
        if neg:
            val = self._neg(val)
        while self.at("+") or self.at("-"):
            op = self.tok
            self.pos += 1
            rhs = self.term(ctx)
            val = self._add(val, rhs if op.text == "+" else self._neg(rhs), op)
        return val

    def term(self, ctx: _Ctx):
        val = self.unary(ctx)
        while self.at("*") or self.at("/"):
            op = self.tok
            self.pos += 1
            rhs = self.unary(ctx)
            if op.text == "*":
                val = self._mul(val, rhs, op)
            else:
                if not isinstance(rhs, Poly) or not rhs.is_constant() or rhs.is_zero():
                    self.error("can only divide by a nonzero number", tok=op)
                val = self._mul(val, Poly.const(Fraction(1) / Fraction(rhs.constant_value())), op)
        return val

    def unary(self, ctx: _Ctx):
        if self.at("-"):
            self.pos += 1
            return self._neg(self.unary(ctx))
        base = self.atom(ctx)
        if self.at("^") or self.at("**"):
            op = self.tok
            self.pos += 1
            e = self.integer()
            if not isinstance(base, Poly):
                self.error("powers of generators are not defined", tok=op)
            base = base ** e
        return base

    def atom(self, ctx: _Ctx):
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return Poly.const(int(t.text))
        if self.at("("):
            self.pos += 1
            val = self.expr(ctx)
            self.eat(")")
            return val
        if t.kind == "ident":
            self.pos += 1
            name = t.text
            if name in RESERVED_SYMBOLS:
                if name not in ctx.allowed:
                    self.error(f"{name} not permitted in {ctx.what}", tok=t)
                return Poly.var(name)
            if name in ctx.gens:
                if ctx.pairs:
                    self.eat("(")
                    self.eat("x")
                    self.eat(")")
                    second = self.ident("generator")
                    if second.text not in ctx.gens:
                        self.error(f"{second.text!r} is not a generator", ctx.gens, tok=second)
                    return _Lin({(name, second.text): Poly.const(1)})
                return _Lin({name: Poly.const(1)})
            if name in self.ws.params:
                return Poly.var(name)
            expected = tuple(sorted(ctx.allowed)) + tuple(ctx.gens) + ("declared scalar",)
            self.error(f"unknown identifier {name!r}", expected, tok=t)
        self.error(f"unexpected {t.text or 'end of file'!r}", ("number", "identifier", "'('"))

    def _neg(self, v):
        return -v if isinstance(v, Poly) else v.scale(Poly.const(-1))

    def _add(self, a, b, op):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a + b
        if isinstance(a, Poly) and a.is_zero():
            return b
        if isinstance(b, Poly) and b.is_zero():
            return a
        if isinstance(a, _Lin) and isinstance(b, _Lin):
            return a.add(b)
        self.error("cannot add a scalar to an element", tok=op)

    def _mul(self, a, b, op):
        if isinstance(a, Poly) and isinstance(b, Poly):
            return a * b
        if isinstance(a, Poly):
            return b.scale(a)
        if isinstance(b, Poly):
            return a.scale(b)
        self.error("cannot multiply two generators", tok=op)

    def poly_expr(self, ctx: _Ctx) -> Poly:
        t = self.tok
        v = self.expr(ctx)
        if not isinstance(v, Poly):
            self.error(f"expected a polynomial in {ctx.what}, got an element", tok=t)
        return v

    def element(self, ctx: _Ctx) -> tuple:
        t = self.tok
        v = self.expr(ctx)
        if isinstance(v, Poly):
            if not v.is_zero():
                self.error(f"expected an element of {{{', '.join(ctx.gens)}}}, got a scalar", tok=t)
            v = _Lin()
        if ctx.pairs:
            return v
        return tuple(v.get(g, ZERO) for g in ctx.gens)

    # statements
    def parse(self) -> Workspace:
        while self.tok.kind != "eof":
            self.statement()
        return self.ws

    def statement(self):
        t = self.tok
        handlers = {
            "scalars": self.st_scalars, "space": self.st_space, "algebra": self.st_algebra,
            "module": self.st_module, "map": self.st_map, "tensor": self.st_tensor, "form": self.st_form,
            "novikov": self.st_novikov, "gd": self.st_gd, "check": self.st_check,
        }
        if t.kind != "ident" or t.text not in handlers:
            self.error(f"unexpected {t.text or 'end of file'!r}", tuple(handlers))
        self.pos += 1
        handlers[t.text]()

    def new_name(self) -> Token:
        t = self.ident("name")
        if t.text in self.ws.objects or t.text in self.ws.params:
            self.error(f"name {t.text!r} is already defined", tok=t)
        if t.text in RESERVED_SYMBOLS:
            self.error(f"{t.text!r} is a reserved symbol", tok=t)
        return t

    def bind(self, kind: str, name: str, obj):
        self.ws.objects[name] = (kind, obj)

    def basis_list(self, stop=("{", ";")) -> tuple:
        names = []
        while self.tok.kind == "ident" and not any(self.at(s) for s in stop):
            t = self.ident("generator")
            if t.text in RESERVED_SYMBOLS or t.text in self.ws.params:
                self.error(f"{t.text!r} cannot be a generator name", tok=t)
            if t.text in names:
                self.error(f"repeated generator {t.text!r}", tok=t)
            names.append(t.text)
        if not names:
            self.error("empty basis", ("generator",))
        return tuple(names)

    def rank_basis(self) -> tuple:
        rank = None
        if self.at("rank"):
            self.pos += 1
            rt = self.tok
            rank = self.integer()
        self.eat("basis")
        basis = self.basis_list()
        if rank is not None and rank != len(basis):
            self.error(f"rank {rank} but {len(basis)} generators", tok=rt)
        return basis

    def ref(self, *kinds: str) -> tuple:
        t = self.ident("name")
        try:
            return t, self.ws.get(t.text, *kinds)
        except KeyError:
            self.error(f"undefined name {t.text!r}", tuple(kinds), tok=t)
        except TypeError as exc:
            self.error(str(exc), tok=t)

    def gen_ref(self, basis: tuple) -> int:
        t = self.ident("generator")
        if t.text not in basis:
            self.error(f"{t.text!r} is not a generator", basis, tok=t)
        return basis.index(t.text)

    def st_scalars(self):
        while not self.at(";"):
            t = self.new_name()
            if t.text in self.ws.params:
                self.error(f"scalar {t.text!r} declared twice", tok=t)
            self.ws.params.append(t.text)
        self.eat(";")

    def st_space(self):
        name = self.new_name().text
        basis = self.rank_basis()
        self.eat(";")
        self.bind("space", name, CdModule(name, basis))

    def ctor_call(self) -> tuple:
        fn = self.ident("constructor")
        self.eat("(")
        args = []
        while not self.at(")"):
            if args:
                self.eat(",")
            args.append(self.tok)
            if self.tok.kind not in ("ident", "int"):
                self.error(f"unexpected {self.tok.text!r}", ("name", "integer"))
            self.pos += 1
        self.eat(")")
        self.eat(";")
        return fn, args

    def _arg(self, tok: Token, *kinds: str):
        try:
            return self.ws.get(tok.text, *kinds)
        except KeyError:
            self.error(f"undefined name {tok.text!r}", kinds, tok=tok)
        except TypeError as exc:
            self.error(str(exc), tok=tok)

    def _rep_arg(self, tok: Token) -> RepStructure:
        try:
            return self.ws.rep_of(tok.text)
        except KeyError:
            self.error(f"undefined name {tok.text!r}", ("module",), tok=tok)
        except TypeError as exc:
            self.error(str(exc), tok=tok)

    def _int_arg(self, tok: Token) -> int:
        if tok.kind != "int":
            self.error("expected an integer", tok=tok)
        return int(tok.text)

    def _scalar_arg(self, tok: Token) -> Poly:
        if tok.kind == "int":
            return Poly.const(int(tok.text))
        if tok.text in self.ws.params:
            return Poly.var(tok.text)
        self.error(f"{tok.text!r} is not a declared scalar", ("integer", "scalar"), tok=tok)

    def _call(self, table: dict, fn: Token, args: list):
        if fn.text not in table:
            self.error(f"unknown constructor {fn.text!r}", tuple(table), tok=fn)
        arity, build = table[fn.text]
        if len(args) not in (arity if isinstance(arity, tuple) else (arity,)):
            self.error(f"{fn.text} takes {arity} arguments, got {len(args)}", tok=fn)
        try:
            return build(*args)
        except DslError:
            raise
        except Exception as exc:
            self.error(f"{fn.text}: {exc}", tok=fn)

    def st_algebra(self):
        name = self.new_name().text
        if self.at("="):
            self.pos += 1
            fn, args = self.ctor_call()
            A = self._call(self._algebra_ctors(name), fn, args)
            self.bind("algebra", name, A.renamed(name))
            return
        basis = self.rank_basis()
        ctx = _Ctx(frozenset({"D", "L"}), basis, what="a bracket table")
        given, where = {}, {}
        self.eat("{")
        while not self.at("}"):
            self.eat("[")
            i = self.gen_ref(basis)
            self.eat(",")
            j = self.gen_ref(basis)
            self.eat("]")
            eq = self.eat("=")
            if (i, j) in given:
                self.error(f"entry [{basis[i]},{basis[j]}] given twice", tok=eq)
            given[(i, j)] = self.element(ctx)
            where[(i, j)] = eq
            self.eat(";")
        self.eat("}")
        for (i, j), v in given.items():
            if i != j and (j, i) in given and given[(j, i)] != swap_table_entry(v):
                later = max((i, j), (j, i), key=lambda k: (where[k].line, where[k].col))
                self.error(f"[{basis[later[0]]},{basis[later[1]]}] disagrees with skew-symmetry of "
                           f"[{basis[later[1]]},{basis[later[0]]}]", tok=where[later])
        n = len(basis)
        table = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
        for (i, j), v in given.items():
            table[i][j] = v
            if (j, i) not in given:
                table[j][i] = swap_table_entry(v)
        self.bind("algebra", name, LcaStructure(CdModule(name, basis), tuple(tuple(r) for r in table)))

    def _algebra_ctors(self, name):
        from .gdnov import GDBialgebra, NovikovAlgebra, quadratic_from_gd
        from .ooperator import subadjacent

        def quadratic(g):
            G = self._arg(g, "gd", "novikov")
            if isinstance(G, NovikovAlgebra):
                G = GDBialgebra.from_novikov(G)
            return quadratic_from_gd(G, name)

        def tdeform(a, n, t=None):
            A, N = self._arg(a, "algebra"), self._arg(n, "map")
            param = t.text if t is not None else "t"
            if param in self.ws.objects or param in RESERVED_SYMBOLS:
                self.error(f"{param!r} cannot be used as a deformation parameter", tok=t or a)
            out = deform_with_parameter(A, coboundary_1(A, N), param, name)
            if param not in self.ws.params:
                self.ws.params.append(param)
            return out

        return {
            "semidirect": (2, lambda a, v: semidirect(self._arg(a, "algebra"), self._rep_arg(v), name)),
            "quadratic": (1, quadratic),
            "deformed": (2, lambda a, n: deformed_bracket(self._arg(a, "algebra"), self._arg(n, "map"), name)),
            "tdeform": ((2, 3), tdeform),
            "subadjacent": (3, lambda a, v, t: subadjacent(self._arg(a, "algebra"), self._rep_arg(v),
                                                           self._arg(t, "map"))),
        }

    def st_module(self):
        name = self.new_name().text
        if self.at("="):
            self.pos += 1
            fn, args = self.ctor_call()
            R = self._call(self._module_ctors(name), fn, args)
            R = R.renamed(name)
            self.bind("module", name, R)
            return
        self.eat("over")
        _, A = self.ref("algebra")
        basis = self.rank_basis()
        ctx = _Ctx(frozenset({"D", "L"}), basis, what="an action table")
        n, m = A.rank, len(basis)
        table = [[zero_vec(m) for _ in range(m)] for _ in range(n)]
        seen = set()
        self.eat("{")
        while not self.at("}"):
            i = self.gen_ref(A.basis)
            self.eat(".")
            j = self.gen_ref(basis)
            eq = self.eat("=")
            if (i, j) in seen:
                self.error(f"entry {A.basis[i]}.{basis[j]} given twice", tok=eq)
            seen.add((i, j))
            table[i][j] = self.element(ctx)
            self.eat(";")
        self.eat("}")
        self.bind("module", name, RepStructure(A, CdModule(name, basis), tuple(tuple(r) for r in table)))

    def _module_ctors(self, name):
        def deformed(v, n, s):
            R = self._rep_arg(v)
            N, S = self._arg(n, "map"), self._arg(s, "map")
            return deformed_rep(R, N, S, check=False)

        return {
            "adjoint": (1, lambda a: adjoint(self._arg(a, "algebra"))),
            "coadjoint": (1, lambda v: coadjoint(self._rep_arg(v), check=False)),
            "trivial": (2, lambda a, m: trivial(self._arg(a, "algebra"), self._int_arg(m), name)),
            "deformed": (3, deformed),
        }

    def st_map(self):
        name = self.new_name().text
        if self.at("="):
            self.pos += 1
            fn, args = self.ctor_call()
            T = self._call(self._map_ctors(), fn, args)
            self.bind("map", name, T.named(name))
            return
        self.eat(":")
        src = self.space_ref()
        self.eat("->")
        dst = self.space_ref()
        ctx = _Ctx(frozenset({"D"}), dst.basis, what="a map image")
        rows = [zero_vec(dst.rank) for _ in range(src.rank)]
        seen = set()
        self.eat("{")
        while not self.at("}"):
            j = self.gen_ref(src.basis)
            arrow = self.eat("->")
            if j in seen:
                self.error(f"image of {src.basis[j]} given twice", tok=arrow)
            seen.add(j)
            rows[j] = self.element(ctx)
            self.eat(";")
        self.eat("}")
        self.bind("map", name, CdHom(src, dst, tuple(rows), name))

    def space_ref(self) -> CdModule:
        t = self.ident("space")
        try:
            return self.ws.module_of(t.text)
        except KeyError:
            self.error(f"undefined name {t.text!r}", ("space", "algebra", "module"), tok=t)
        except TypeError as exc:
            self.error(str(exc), tok=t)

    def _map_ctors(self):
        from .symplectic import omega_natural
        from .ybe import r_sharp0

        def identity(x):
            try:
                return CdHom.identity(self.ws.module_of(x.text))
            except (KeyError, TypeError):
                self.error(f"undefined space {x.text!r}", tok=x)

        def scalar(x, c):
            try:
                mod = self.ws.module_of(x.text)
            except (KeyError, TypeError):
                self.error(f"undefined space {x.text!r}", tok=x)
            return CdHom.scalar(mod, self._scalar_arg(c))

        def compose(s, t):
            S, T = self._arg(s, "map"), self._arg(t, "map")
            if S.source != T.target:
                raise ValueError(f"{s.text} starts at {S.source.name}, {t.text} ends at {T.target.name}")
            return (S @ T).with_modules(T.source, S.target)

        def power(n, k):
            N = self._arg(n, "map")
            return (N ** self._int_arg(k)).with_modules(N.source, N.target)

        return {
            "dual": (1, lambda s: dual_hom(self._arg(s, "map"))),
            "inverse": (1, lambda s: invert_hom(self._arg(s, "map"))),
            "compose": (2, compose),
            "power": (2, power),
            "natural": (1, lambda w: omega_natural(self._arg(w, "form"))),
            "sharp": (1, lambda r: r_sharp0(self._arg(r, "tensor"))),
            "identity": (1, identity),
            "scalar": (2, scalar),
        }

    def st_tensor(self):
        from .ybe import Tensor2, r_deform, r_from_symplectic

        name = self.new_name().text
        if self.at("="):
            self.pos += 1
            fn, args = self.ctor_call()
            table = {
                "from_form": (1, lambda w: r_from_symplectic(self._arg(w, "form"))),
                "deform": (3, lambda r, n, k: r_deform(self._arg(r, "tensor"), self._arg(n, "map"),
                                                       self._int_arg(k))),
            }
            self.bind("tensor", name, self._call(table, fn, args).named(name))
            return
        self.eat("in")
        _, A = self.ref("algebra")
        self.eat("(")
        self.eat("x")
        self.eat(")")
        t2, B = self.ref("algebra")
        if A is not B:
            self.error("both tensor factors must be the same algebra", tok=t2)
        self.eat("=")
        ctx = _Ctx(frozenset({"D1", "D2"}), A.basis, pairs=True, what="a tensor")
        lin = self.element(ctx)
        self.eat(";")
        n = A.rank
        rows = [[ZERO] * n for _ in range(n)]
        for (a, b), c in lin.items():
            i, j = A.basis.index(a), A.basis.index(b)
            rows[i][j] = rows[i][j] + c
        self.bind("tensor", name, Tensor2(A, tuple(tuple(r) for r in rows), name))

    def st_form(self):
        from .symplectic import TwoForm, form_from_r, omega_N

        name = self.new_name().text
        if self.at("="):
            self.pos += 1
            fn, args = self.ctor_call()
            table = {
                "from_tensor": (1, lambda r: form_from_r(self._arg(r, "tensor"))),
                "deform": (3, lambda w, n, k: omega_N(self._arg(w, "form"), self._arg(n, "map"), self._int_arg(k))),
            }
            self.bind("form", name, self._call(table, fn, args).named(name))
            return
        self.eat("on")
        at, A = self.ref("algebra")
        ctx = _Ctx(frozenset({"L"}), (), what="a 2-form")
        entries = {}
        self.eat("{")
        while not self.at("}"):
            self.eat("(")
            i = self.gen_ref(A.basis)
            self.eat(",")
            j = self.gen_ref(A.basis)
            self.eat(")")
            eq = self.eat("=")
            if (i, j) in entries:
                self.error("entry given twice", tok=eq)
            entries[(i, j)] = self.poly_expr(ctx)
            self.eat(";")
        self.eat("}")
        try:
            w = TwoForm.from_entries(A, entries, name)
        except Exception as exc:
            self.error(str(exc), tok=at)
        self.bind("form", name, w)

    def _products(self, basis, lie: bool):
        ctx = _Ctx(frozenset(), basis, what="a Novikov or Lie table")
        d = len(basis)
        nov = [[zero_vec(d) for _ in range(d)] for _ in range(d)]
        br = [[zero_vec(d) for _ in range(d)] for _ in range(d)]
        seen = set()
        self.eat("{")
        while not self.at("}"):
            if lie and self.at("["):
                self.pos += 1
                i = self.gen_ref(basis)
                self.eat(",")
                j = self.gen_ref(basis)
                self.eat("]")
                key = ("lie", i, j)
            else:
                i = self.gen_ref(basis)
                self.eat("*")
                j = self.gen_ref(basis)
                key = ("nov", i, j)
            eq = self.eat("=")
            if key in seen:
                self.error("entry given twice", tok=eq)
            seen.add(key)
            v = self.element(ctx)
            if key[0] == "nov":
                nov[i][j] = v
            else:
                br[i][j] = v
                if ("lie", j, i) not in seen:
                    br[j][i] = tuple(-x for x in v)
            self.eat(";")
        self.eat("}")
        return tuple(tuple(r) for r in nov), tuple(tuple(r) for r in br)

    def st_novikov(self):
        from .gdnov import NovikovAlgebra

        nt = self.new_name()
        basis = self.rank_basis()
        nov, _ = self._products(basis, lie=False)
        try:
            obj = NovikovAlgebra(basis, nov, nt.text)
        except Exception as exc:
            self.error(str(exc), tok=nt)
        self.bind("novikov", nt.text, obj)

    def st_gd(self):
        from .gdnov import GDBialgebra, NovikovAlgebra

        nt = self.new_name()
        basis = self.rank_basis()
        nov, br = self._products(basis, lie=True)
        try:
            obj = GDBialgebra(NovikovAlgebra(basis, nov, nt.text), br, nt.text)
        except Exception as exc:
            self.error(str(exc), tok=nt)
        self.bind("gd", nt.text, obj)

    def st_check(self):
        from .checks import CHECKS

        start = self.tok
        parts = [self.ident("check kind").text]
        while self.at("-"):
            self.pos += 1
            parts.append(self.ident("check kind").text)
        kind = "-".join(parts)
        if kind not in CHECKS:
            self.error(f"unknown check {kind!r}", tuple(CHECKS), tok=start)
        args = []
        while not self.at(";"):
            t = self.tok
            if t.kind == "int":
                args.append(int(t.text))
            elif t.kind == "ident":
                if t.text not in self.ws.objects:
                    self.error(f"undefined name {t.text!r}", tok=t)
                args.append(t.text)
            else:
                self.error(f"unexpected {t.text or 'end of file'!r}", ("name", "integer", "';'"))
            self.pos += 1
        self.eat(";")
        spec = CHECKS[kind]
        if len(args) != len(spec.args):
            self.error(f"check {kind} takes {len(spec.args)} arguments ({' '.join(spec.args)}), got {len(args)}",
                       tok=start)
        for a, want in zip(args, spec.args):
            if want == "int":
                if not isinstance(a, int):
                    self.error(f"check {kind}: expected an integer, got {a!r}", tok=start)
                continue
            if isinstance(a, int):
                self.error(f"check {kind}: expected a {want}, got {a}", tok=start)
            have = self.ws.kind(a)
            ok = want.split("|")
            if want == "module":
                ok = ["module", "algebra"]
            if have not in ok:
                self.error(f"check {kind}: {a} is a {have}, expected {want.replace('|', ' or ')}", tok=start)
        self.ws.checks.append(CheckStmt(kind, tuple(args), start.line))


def parse(text: str) -> Workspace:
    return Parser(text).parse()


def parse_file(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _params_ws(text: str) -> Workspace:
    names = set(re.findall(r"[A-Za-z_][A-Za-z0-9_]*'*", text)) - RESERVED_SYMBOLS
    return Workspace(params=sorted(names))


def parse_poly(text: str, allowed=None) -> Poly:
    """A polynomial from text; every non-reserved identifier is a parameter."""
    allowed = frozenset(RESERVED_SYMBOLS if allowed is None else allowed)
    p = Parser(text, _params_ws(text))
    v = p.poly_expr(_Ctx(allowed, what="this expression"))
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}", ("end of input",))
    return v


def parse_element(text: str, basis, allowed=None) -> tuple:
    """A vector over ``basis`` from text such as ``"(D + 2*L)*a - b"``."""
    allowed = frozenset(RESERVED_SYMBOLS if allowed is None else allowed)
    ws = _params_ws(text)
    ws.params = [s for s in ws.params if s not in basis]
    p = Parser(text, ws)
    v = p.element(_Ctx(allowed, tuple(basis), what="this expression"))
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}", ("end of input",))
    return v


# -- emitter -----------------------------------------------------------------

def _coef(c: Poly) -> str:
    s = render(c)
    if c.is_constant() and c.constant_value() == 1:
        return ""
    if c.is_constant() and c.constant_value() == -1:
        return "-"
    if len(c.terms) == 1 and "/" not in s:
        return s + "*"
    return f"({s})*"


def render_element(v, basis) -> str:
    parts = []
    for c, g in zip(v, basis):
        if c.is_zero():
            continue
        parts.append(_coef(c) + g)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") and not p.startswith("-(") else " + " + p
    return out


def _render_pairs(table, basis) -> str:
    parts = []
    for i, row in enumerate(table):
        for j, c in enumerate(row):
            if not c.is_zero():
                parts.append(_coef(c) + f"{basis[i]} (x) {basis[j]}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") and not p.startswith("-(") else " + " + p
    return out


def _emit_algebra(A: LcaStructure) -> str:
    B, n = A.basis, A.rank
    lines = [f"algebra {A.name} basis {' '.join(B)} {{"]
    for i in range(n):
        for j in range(n):
            v = A.table[i][j]
            if i <= j:
                if any(not x.is_zero() for x in v):
                    lines.append(f"  [{B[i]},{B[j]}] = {render_element(v, B)};")
            elif v != swap_table_entry(A.table[j][i]):
                lines.append(f"  [{B[i]},{B[j]}] = {render_element(v, B)};")
    lines.append("}")
    return "\n".join(lines)


def _emit_module(R: RepStructure) -> str:
    A, B = R.algebra, R.module.basis
    lines = [f"module {R.name} over {A.name} basis {' '.join(B)} {{"]
    for i in range(A.rank):
        for j in range(R.module.rank):
            v = R.table[i][j]
            if any(not x.is_zero() for x in v):
                lines.append(f"  {A.basis[i]}.{B[j]} = {render_element(v, B)};")
    lines.append("}")
    return "\n".join(lines)


def _emit_space(X: CdModule) -> str:
    return f"space {X.name} basis {' '.join(X.basis)};"


def _emit_map(T: CdHom, name: str) -> str:
    lines = [f"map {name} : {T.source.name} -> {T.target.name} {{"]
    for j, row in enumerate(T.matrix):
        if any(not x.is_zero() for x in row):
            lines.append(f"  {T.source.basis[j]} -> {render_element(row, T.target.basis)};")
    lines.append("}")
    return "\n".join(lines)


def _emit_products(G, lie=None) -> list[str]:
    B = G.basis
    out = []
    for i in range(len(B)):
        for j in range(len(B)):
            v = G.table[i][j]
            if any(not x.is_zero() for x in v):
                out.append(f"  {B[i]}*{B[j]} = {render_element(v, B)};")
    if lie is not None:
        for i in range(len(B)):
            for j in range(i, len(B)):
                v = lie[i][j]
                if any(not x.is_zero() for x in v):
                    out.append(f"  [{B[i]},{B[j]}] = {render_element(v, B)};")
        for i in range(len(B)):
            for j in range(i):
                if lie[i][j] != tuple(-x for x in lie[j][i]):
                    out.append(f"  [{B[i]},{B[j]}] = {render_element(lie[i][j], B)};")
    return out


def _poly_symbols(obj) -> set:
    out = set()

    def walk(x):
        if isinstance(x, Poly):
            out.update(x.symbols)
        elif isinstance(x, (tuple, list)):
            for y in x:
                walk(y)

    for attr in ("table", "matrix", "lie"):
        if hasattr(obj, attr):
            walk(getattr(obj, attr))
    if hasattr(obj, "novikov"):
        walk(obj.novikov.table)
    return out


def emit_object(kind: str, obj, name: str) -> str:
    """Self-contained canonical text for one object and everything it depends on."""
    from .gdnov import GDBialgebra

    blocks, deps = [], []
    if kind == "algebra":
        deps = [obj]
        blocks = [_emit_algebra(obj.renamed(name))]
    elif kind == "module":
        deps = [obj.algebra, obj]
        blocks = [_emit_algebra(obj.algebra), _emit_module(obj.renamed(name))]
    elif kind == "space":
        blocks = [_emit_space(obj)]
    elif kind == "map":
        deps = [obj]
        spaces = [obj.source] if obj.source == obj.target else [obj.source, obj.target]
        blocks = [_emit_space(s) for s in spaces] + [_emit_map(obj, name)]
    elif kind == "tensor":
        deps = [obj.algebra, obj]
        A = obj.algebra
        blocks = [_emit_algebra(A), f"tensor {name} in {A.name} (x) {A.name} = {_render_pairs(obj.table, A.basis)};"]
    elif kind == "form":
        deps = [obj.algebra, obj]
        A = obj.algebra
        lines = [f"form {name} on {A.name} {{"]
        for i in range(A.rank):
            for j in range(i, A.rank):
                if not obj.table[i][j].is_zero():
                    lines.append(f"  ({A.basis[i]}, {A.basis[j]}) = {render(obj.table[i][j])};")
        lines.append("}")
        blocks = [_emit_algebra(A), "\n".join(lines)]
    elif kind == "novikov":
        deps = [obj]
        blocks = ["\n".join([f"novikov {name} basis {' '.join(obj.basis)} {{"] + _emit_products(obj) + ["}"])]
    elif kind == "gd":
        assert isinstance(obj, GDBialgebra)
        deps = [obj]
        body = _emit_products(obj.novikov, obj.lie)
        blocks = ["\n".join([f"gd {name} basis {' '.join(obj.basis)} {{"] + body + ["}"])]
    else:
        raise ValueError(f"cannot emit a {kind}")
    params = sorted(set().union(*(_poly_symbols(d) for d in deps)) - RESERVED_SYMBOLS) if deps else []
    head = [f"scalars {' '.join(params)};"] if params else []
    return "\n".join(head + blocks) + "\n"


def emit(ws: Workspace, name: str) -> str:
    kind, obj = ws.objects[name]
    return emit_object(kind, obj, name)


def run_checks(ws: Workspace) -> list[Report]:
    from .checks import run_check

    return [run_check(ws, c)[0] for c in ws.checks]


__all__ = [
    "DslError", "Token", "tokenize", "Workspace", "CheckStmt", "Parser", "parse", "parse_file",
    "parse_poly", "parse_element", "emit", "emit_object", "render_element", "run_checks",
]
