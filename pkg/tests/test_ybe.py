import pytest

import lck
from lck import D, D1, D2, L, ZERO, CdHom, poly
from lck.lca import ConstructionError, abelian, virasoro
from lck.symplectic import TwoForm
from lck.ybe import (
    Tensor2, check_cybe_equivalence, check_rmatrix_nijenhuis, cybe_bracket, cybe_check, is_lambda_constant,
    is_nondegenerate_r, is_skew, r_deform, r_family_compatibility, r_from_symplectic, r_sharp0,
)


@pytest.fixture
def sn2(corpus):
    s = corpus("sn2")
    return s.get("DA"), s.get("w"), s.get("N"), s.get("r")


def test_rotation_r_sharp():
    A = abelian(("a", "b"))
    r = Tensor2.from_entries(A, {("a", "b"): 1, ("b", "a"): -1})
    assert is_skew(r).passed
    assert r_sharp0(r).apply((1, 0)) == (ZERO, poly("1"))
    assert r_sharp0(r).apply((0, 1)) == (poly("-1"), ZERO)


def test_slot_difference_r_sharp():
    Vir = virasoro()
    r = Tensor2(Vir, ((D1 - D2,),))
    assert is_skew(r).passed
    assert r_sharp0(r).matrix == ((-2 * D,),)
    assert not is_lambda_constant(r)


def test_tensor_rejects_spectral_symbols():
    with pytest.raises(ConstructionError):
        Tensor2(virasoro(), ((L,),))


def test_r_from_rotation_form():
    A = abelian(("a", "b"))
    w = TwoForm.from_entries(A, {("a", "b"): -1})
    r = r_from_symplectic(w)
    assert r.table == ((ZERO, poly("1")), (poly("-1"), ZERO))


def test_sn2_r_matrix(sn2):
    DA, w, N, r = sn2
    B = DA.basis
    expected = {("a", "a'"): 1, ("b", "b'"): 1, ("a'", "a"): -1, ("b'", "b"): -1}
    assert r.table == Tensor2.from_entries(DA, expected).table
    assert r.table == r_from_symplectic(w).table
    assert cybe_check(r).passed
    assert cybe_bracket(r).is_zero()
    assert is_nondegenerate_r(r).passed


def test_non_solution_fails_both_ways():
    Vir = virasoro()
    r = Tensor2(Vir, ((D1 - D2,),))
    eq = check_cybe_equivalence(r)
    assert not eq.part("cybe").passed
    assert not eq.part("ooperator").passed
    assert eq.facts[0].holds


def test_unreduced_bracket_keeps_d3(sn2):
    _, _, _, r = sn2
    t = cybe_bracket(r, reduce=False)
    assert t.reduced().is_zero()


def test_rmatrix_nijenhuis(sn2):
    _, _, N, r = sn2
    rep = check_rmatrix_nijenhuis(r, N)
    assert rep.passed
    assert {p.check for p in rep.parts} == {"pre:skew", "pre:cybe", "pre:nijenhuis", "on-structure"}


def test_rmatrix_nijenhuis_fails_for_non_intertwining(sn2):
    DA, _, _, r = sn2
    S = CdHom.from_images(DA.module, DA.module, {"a": "b", "b": "a", "a'": "a'", "b'": "b'"})
    rep = check_rmatrix_nijenhuis(r, S)
    assert not rep.passed
    assert any(k[0] == "intertwine" for k in rep.failed_keys())


def test_r_deform_matches_composition(sn2):
    _, _, N, r = sn2
    for k in range(3):
        assert r_sharp0(r_deform(r, N, k)).matrix == ((N ** k) @ r_sharp0(r)).matrix


def test_r_family(sn2):
    _, _, N, r = sn2
    rep = r_family_compatibility(r, N, 2)
    assert rep.passed
    assert {p.check for p in rep.parts} == {"skew r0", "cybe r0", "skew r1", "cybe r1", "skew r2", "cybe r2",
                                            "r0~r1", "r0~r2", "r1~r2"}


def test_flip_and_scale():
    Vir = virasoro()
    r = Tensor2(Vir, ((D1 ** 2,),))
    assert r.flip().table == ((D2 ** 2,),)
    assert (r * 2).table == ((2 * D1 ** 2,),)
    assert not is_skew(r).passed
