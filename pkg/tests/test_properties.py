"""Algebraic laws checked on generated data; sympy serves as an independent arithmetic oracle."""
import sympy
from hypothesis import assume, given, strategies as st

import lck
from lck import D, D1, D2, L, M, ONE, ZERO, CdHom, CdModule, Poly
from lck.dsl import emit_object, parse
from lck.kernel import det, dual_hom, evaluation_oracle, invert_hom, pairing
from lck.lca import LcaStructure, check_2cocycle, coboundary, virasoro
from lck.nijenhuis import check_semidirect_characterization
from lck.ooperator import check_o_operator
from lck.rep import RepStructure, adjoint, coadjoint
from lck.ybe import Tensor2, cybe_check, r_deform, r_sharp0

import suites

coeffs = st.integers(-3, 3)


def polys(symbols=("D", "L", "k"), max_deg=2, max_terms=4):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in symbols])

    def build(items):
        p = ZERO
        for c, exps in items:
            m = ONE
            for s, e in zip(symbols, exps):
                m = m * Poly.var(s, e)
            p = p + c * m
        return p

    return st.lists(st.tuples(coeffs, mono), max_size=max_terms).map(build)


def to_sympy(p: Poly):
    return sympy.sympify(str(p).replace("^", "**")) if not p.is_zero() else sympy.Integer(0)


def homs(module, symbols=("D",), max_deg=2):
    n = module.rank
    return st.lists(polys(symbols, max_deg, 3), min_size=n * n, max_size=n * n).map(
        lambda xs: CdHom(module, module, tuple(tuple(xs[i * n:(i + 1) * n]) for i in range(n))))


X2 = CdModule("X", ("a", "b"))


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * (q * r) == (p * q) * r
    assert p * q == q * p
    assert p - p == ZERO


@given(polys(), polys())
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys(("D", "L")), polys(("D", "L")), polys(("D", "L")))
def test_substitution_composes(p, a, b):
    s1 = p.subs({"L": a}).subs({"D": b})
    s2 = p.subs({"L": a.subs({"D": b}), "D": b})
    assert s1 == s2
    x, y = sympy.symbols("D L")
    want = to_sympy(p).subs({y: to_sympy(a)}, simultaneous=True).subs({x: to_sympy(b)})
    assert sympy.expand(to_sympy(s1) - want) == 0


@given(st.lists(polys(("D", "k"), 2, 3), min_size=9, max_size=9))
def test_det_matches_sympy(xs):
    m = [xs[0:3], xs[3:6], xs[6:9]]
    want = sympy.Matrix([[to_sympy(x) for x in row] for row in m]).det()
    assert sympy.expand(to_sympy(det(m)) - want) == 0


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1), polys(("D",), 2, 2)), max_size=5))
def test_inverse_of_unimodular(steps):
    T = CdHom.identity(X2)
    for i, j, f in steps:
        if i == j:
            continue
        rows = [list(r) for r in CdHom.identity(X2).matrix]
        rows[i][j] = f
        T = T @ CdHom(X2, X2, tuple(tuple(r) for r in rows))
    Ti = invert_hom(T)
    assert (T @ Ti).matrix == CdHom.identity(X2).matrix
    assert (Ti @ T).matrix == CdHom.identity(X2).matrix


@given(homs(X2), st.lists(polys(("D",), 2, 2), min_size=2, max_size=2),
       st.lists(polys(("D",), 2, 2), min_size=2, max_size=2))
def test_dual_is_adjoint_for_pairing(S, alpha, v):
    # <S* alpha, v> = <alpha, S v>
    assert pairing(dual_hom(S).apply(alpha), v) == pairing(alpha, S.apply(v))


@given(st.lists(st.tuples(polys(), coeffs), max_size=3))
def test_oracle_agrees_with_symbolic_zero(parts):
    terms = []
    for p, c in parts:
        terms += [p, -p]
        if c:
            terms.append(c * L * D)
    value = sum(terms, ZERO)
    assert evaluation_oracle(terms) == value.is_zero()


@given(polys(("D", "L", "M", "k"), 3, 5))
def test_oracle_decides_single_polynomials(p):
    assert evaluation_oracle(p) == p.is_zero()


@given(homs(virasoro().module, ("D", "k"), 2))
def test_coboundary_squares_to_zero_virasoro(N):
    A = virasoro()
    assert check_2cocycle(coboundary(N, A)).passed


@given(homs(X2, ("D",), 2))
def test_coboundary_squares_to_zero_quadratic(N):
    Q = suites.ws("rank2_quadratic").get("Q")
    assert check_2cocycle(coboundary(N.with_modules(Q.module, Q.module), Q)).passed


@given(st.lists(polys(("L", "D"), 2, 3), min_size=8, max_size=8))
def test_coadjoint_is_involutive(xs):
    A = suites.ws("rank2_quadratic").get("Q")
    table = tuple(tuple((xs[4 * i + 2 * j], xs[4 * i + 2 * j + 1]) for j in range(2)) for i in range(2))
    R = RepStructure(A, X2, tuple(tuple(tuple(v) for v in row) for row in table))
    assert coadjoint(coadjoint(R, check=False), check=False).table == R.table


@given(st.data())
def test_cybe_agrees_with_o_operator(data):
    alg = data.draw(st.sampled_from([
        suites.ws("virasoro").get("Vir"), suites.ws("rank2_quadratic").get("Q"),
        suites.ws("current_2d").get("Cur"), suites.ws("sn3").get("A"),
    ]))
    n = alg.rank
    cells = data.draw(st.lists(polys(("D1", "D2"), 2, 3), min_size=n * n, max_size=n * n))
    c = Tensor2(alg, tuple(tuple(cells[i * n:(i + 1) * n]) for i in range(n)))
    r = c + c.flip() * -1
    via = check_o_operator(alg, coadjoint(adjoint(alg), check=False), r_sharp0(r)).passed
    assert cybe_check(r).passed == via


@given(st.lists(polys(("D1", "D2"), 2, 2), min_size=4, max_size=4), homs(X2, ("D",), 2), st.integers(0, 2))
def test_deformed_tensor_composes(cells, N, k):
    Q = suites.ws("rank2_quadratic").get("Q")
    N = N.with_modules(Q.module, Q.module)
    r = Tensor2(Q, ((cells[0], cells[1]), (cells[2], cells[3])))
    assert r_sharp0(r_deform(r, N, k)).matrix == ((N ** k) @ r_sharp0(r)).matrix


@given(st.lists(polys(("D", "L", "k"), 2, 3), min_size=4, max_size=4))
def test_emit_round_trip_random_tables(xs):
    A = LcaStructure.from_entries(("a", "b"), {("a", "a"): (xs[0], xs[1]), ("a", "b"): (xs[2], xs[3])}, "A")
    text = emit_object("algebra", A, "A")
    assert parse(text).get("A") == A


@given(polys(("D", "k1"), 1, 2), polys(("D", "k2"), 1, 2))
def test_semidirect_sides_agree(f, g):
    s = suites.ws("sn2")
    A, V = s.get("A"), s.get("V")
    N = CdHom.scalar(A.module, f)
    S = CdHom.scalar(V.module, g)
    rep = check_semidirect_characterization(A, V, N, S)
    assert all(fact.holds for _, fact in rep.all_facts())


@given(st.integers(1, 3))
def test_closed_family_small_powers(k):
    s = suites.ws("sn2")
    w, N = s.get("w"), s.get("N")
    assert lck.check_omega_Nk_closed(w, N, k).passed
