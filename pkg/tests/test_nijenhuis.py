import pytest

import lck
from lck import D, L, ZERO, CdHom, poly
from lck.kernel import dual_hom
from lck.lca import PreconditionError, check_lca_axioms, deformed_bracket, semidirect, virasoro
from lck.nijenhuis import (
    check_nijenhuis_operator, check_nijenhuis_structure, check_semidirect_characterization,
    deformed_bracket_checked, direct_sum_hom, powers, trivial_deformation_residuals,
)
from lck.rep import adjoint, coadjoint


def test_derivation_map_is_not_nijenhuis_on_virasoro():
    Vir = virasoro()
    N = CdHom(Vir.module, Vir.module, ((D,),), "N")
    rep = check_nijenhuis_operator(Vir, N)
    (label, res), = rep.failures()
    assert label == "nij(a,a)[a]"
    assert res.value == L * (L + D) * (D + 2 * L)


def test_deformed_quadratic_entries(corpus):
    q = corpus("rank2_quadratic")
    Q, N = q.get("Q"), q.get("N")
    f = N.matrix[0][1]
    AN = deformed_bracket(Q, N)
    expected = L * f.subs({"D": -L}) + (L + D) * f.subs({"D": L + D}) - (D + 2 * L) * f
    assert AN.table[0][0] == (ZERO, expected)
    assert AN.table[0][1] == (ZERO, ZERO)
    assert AN.table[1][0] == (ZERO, ZERO)
    assert AN.table[1][1] == (ZERO, ZERO)


def test_scalar_deformation_scales_virasoro():
    Vir = virasoro()
    N = CdHom.scalar(Vir.module, poly("k"))
    assert deformed_bracket(Vir, N).table == (((poly("k") * (D + 2 * L),),),)


def test_checked_deformation_refuses_non_nijenhuis():
    Vir = virasoro()
    with pytest.raises(PreconditionError) as e:
        deformed_bracket_checked(Vir, CdHom(Vir.module, Vir.module, ((D,),)))
    assert e.value.report is not None


def test_structure_on_coadjoint(corpus):
    q = corpus("rank2_quadratic")
    Q, N, Ns = q.get("Q"), q.get("N"), q.get("Ns")
    assert check_nijenhuis_structure(Q, coadjoint(adjoint(Q)), N, Ns).passed


def test_semidirect_characterization_positive(corpus):
    q = corpus("rank2_quadratic")
    Q, N, Ns = q.get("Q"), q.get("N"), q.get("Ns")
    rep = check_semidirect_characterization(Q, coadjoint(adjoint(Q)), N, Ns)
    assert rep.passed


def test_semidirect_characterization_negative_control(corpus):
    # S(v) = D v on the SN2 module: both sides fail, at the same places
    s = corpus("sn2")
    A, V = s.get("A"), s.get("V")
    N = CdHom.identity(A.module)
    S = CdHom.scalar(V.module, D)
    rep = check_semidirect_characterization(A, V, N, S)
    assert rep.part("semidirect").verdict == "fail"
    assert rep.part("components").verdict == "fail"
    assert all(f.holds for _, f in rep.all_facts())


def test_trivial_deformation_for_scalar_pair(corpus):
    s = corpus("sn2")
    A, V = s.get("A"), s.get("V")
    k = poly("k1")
    rep = trivial_deformation_residuals(A, V, CdHom.scalar(A.module, k), CdHom.scalar(V.module, k))
    assert rep.passed


def test_powers_of_structure_stay_structures(corpus):
    q = corpus("rank2_quadratic")
    Q, N, Ns = q.get("Q"), q.get("N"), q.get("Ns")
    R = coadjoint(adjoint(Q))
    for k in range(4):
        assert check_nijenhuis_structure(Q, R, powers(N, k), powers(Ns, k)).passed


def test_direct_sum_is_block_diagonal():
    Vir = virasoro()
    DV = semidirect(Vir, coadjoint(adjoint(Vir)))
    h = direct_sum_hom(CdHom.scalar(Vir.module, 2), CdHom.scalar(Vir.module.dual(), 3), DV.module)
    assert h.matrix == ((poly("2"), ZERO), (ZERO, poly("3")))


def test_nijenhuis_deformation_passes_axioms(corpus):
    c = corpus("current_2d")
    Cur, N = c.get("Cur"), c.get("N")
    assert check_nijenhuis_operator(Cur, N).passed
    assert check_lca_axioms(deformed_bracket(Cur, N)).passed
