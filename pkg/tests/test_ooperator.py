import pytest

import lck
from lck import D, L, ZERO, CdHom, poly
from lck.kernel import invert_hom
from lck.lca import PreconditionError, check_lca_axioms
from lck.ooperator import (
    _lsa_terms, check_compatible, check_left_symmetric, check_o_operator, check_on_structure, hierarchy,
    induced_lsa, nijenhuis_from_compatible, on_from_compatible, subadjacent,
)
from lck.rep import adjoint, coadjoint


@pytest.fixture
def quad(corpus):
    q = corpus("rank2_quadratic")
    return q.get("Q"), q.get("R1"), q.get("R2")


@pytest.fixture
def sn2(corpus):
    s = corpus("sn2")
    DA = s.get("DA")
    return DA, coadjoint(adjoint(DA)), s.get("T"), s.get("N"), s.get("Ns")


def test_rota_baxter_intermediate_terms(quad):
    Q, R1, _ = quad
    fwd, back = _lsa_terms(adjoint(Q), R1, 0, 0)
    assert fwd == (-(D + 2 * L), -L)
    assert back == (D + 2 * L, L + D)
    both = (D + 2 * L, D + 2 * L)
    assert Q.bracket(R1.image(0), R1.image(0)) == both
    assert R1.apply(tuple(f - b for f, b in zip(fwd, back))) == both


def test_identity_is_not_rota_baxter(quad):
    Q, _, _ = quad
    assert not check_o_operator(Q, adjoint(Q), CdHom.identity(Q.module)).passed


def test_subadjacent_and_lsa(quad):
    Q, R1, _ = quad
    sub = subadjacent(Q, adjoint(Q), R1)
    assert check_lca_axioms(sub).passed
    assert check_left_symmetric(induced_lsa(Q, adjoint(Q), R1)).passed


def test_subadjacent_requires_o_operator(quad):
    Q, _, _ = quad
    with pytest.raises(PreconditionError):
        subadjacent(Q, adjoint(Q), CdHom.identity(Q.module))


def test_compatible_pair(quad):
    Q, R1, R2 = quad
    rep = check_compatible(Q, adjoint(Q), R1, R2)
    assert rep.passed
    assert [p.check for p in rep.parts] == ["pre:ooperator R1", "pre:ooperator R2"]


def test_on_structure_sn2(sn2):
    DA, R, T, N, Ns = sn2
    assert check_on_structure(DA, R, T, N, Ns).passed


def test_on_structure_fails_when_s_is_wrong(sn2):
    DA, R, T, N, Ns = sn2
    rep = check_on_structure(DA, R, T, N, CdHom.identity(Ns.source))
    assert not rep.passed
    assert ("commute", 0) in rep.failed_keys()


def test_compatible_pair_recovers_nijenhuis(sn2):
    DA, R, T, N, Ns = sn2
    T1 = (N @ T).with_modules(T.source, T.target).named("T1")
    N2, rep = nijenhuis_from_compatible(DA, R, T1, T)
    assert N2.matrix == N.matrix
    assert rep.passed
    results = on_from_compatible(DA, R, T, T1)
    assert all(r.passed for _, r in results)
    cand, _ = results[0]
    assert cand.N.matrix == N.matrix
    assert cand.S.matrix == Ns.matrix


def test_hierarchy_on_rota_baxter(quad):
    # N = S = k id is an ON-structure with R1 on the adjoint pair
    Q, R1, _ = quad
    k = CdHom.scalar(Q.module, poly("k"), "N")
    ops, rep = hierarchy(Q, adjoint(Q), R1, k, k, 3)
    assert rep.passed
    assert ops[3].matrix == (R1 * poly("k^3")).matrix


def test_hierarchy_sn2(sn2):
    DA, R, T, N, Ns = sn2
    ops, rep = hierarchy(DA, R, T, N, Ns, 2)
    assert rep.passed
    assert len(ops) == 3
    assert ops[2].matrix == (N @ N @ T).matrix


def test_inverse_of_o_operator_is_closed_form(sn2, corpus):
    # the inverse of an invertible O-operator on ad* is a closed 2-form's w#
    DA, R, T, _, _ = sn2
    H = invert_hom(T)
    assert H.matrix == corpus("sn2").get("H").matrix


def test_virasoro_coadjoint_has_no_constant_o_operator():
    Vir = lck.virasoro()
    c = poly("c")
    R = coadjoint(adjoint(Vir))
    T = CdHom(R.module, Vir.module, ((c,),))
    (_, res), = check_o_operator(Vir, R, T).failures()
    assert res.value == 2 * c ** 2 * (D + 2 * L)


def test_powers_keep_on_structure(sn2):
    DA, R, T, N, Ns = sn2
    for k in range(1, 4):
        Nk, Sk = N ** k, Ns ** k
        assert check_on_structure(DA, R, T, Nk, Sk).passed
        assert check_on_structure(DA, R, (Nk @ T).with_modules(T.source, T.target), Nk, Sk).passed


def test_mismatched_scalars_fail_commutation(sn2):
    DA, R, T, _, _ = sn2
    N = CdHom.scalar(DA.module, poly("k1"))
    S = CdHom.scalar(R.module, poly("k2"))
    rep = check_on_structure(DA, R, T, N, S)
    assert any(k[0] == "commute" for k in rep.failed_keys())
