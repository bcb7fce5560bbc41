import pytest

import lck
from lck import D, L, ZERO, CdHom, CdModule, poly
from lck.kernel import dual_hom
from lck.lca import PreconditionError, virasoro
from lck.rep import RepStructure, adjoint, check_rep_axioms, coadjoint, deformed_rep, trivial


def test_virasoro_coadjoint():
    assert coadjoint(adjoint(virasoro())).table == ((((D - L),),),)


def test_coadjoint_twice_returns_the_module(corpus):
    V = corpus("sn2").get("V")
    back = coadjoint(coadjoint(V))
    assert back.table == V.table


def test_adjoint_and_coadjoint_pass(corpus):
    for name, alg in (("sn2", "A"), ("rank2_quadratic", "Q"), ("sn3", "A")):
        A = corpus(name).get(alg)
        assert check_rep_axioms(adjoint(A)).passed
        assert check_rep_axioms(coadjoint(adjoint(A))).passed


def test_trivial_module():
    R = trivial(virasoro(), 2)
    assert R.module.basis == ("c1", "c2")
    assert check_rep_axioms(R).passed


def test_bad_module_fails():
    Vir = virasoro()
    R = RepStructure.from_entries(Vir, CdModule("V", ("v",)), {("a", "v"): "L*L*v"})
    assert not check_rep_axioms(R).passed


def test_parametrised_module_over_virasoro():
    # rho(a)_L v = (D + k L + l) v is a module for every k, l
    Vir = virasoro()
    R = RepStructure.from_entries(Vir, CdModule("V", ("v",)), {("a", "v"): "(D + k*L + l)*v"})
    assert check_rep_axioms(R).passed


def test_coadjoint_needs_verified_module():
    Vir = virasoro()
    R = RepStructure.from_entries(Vir, CdModule("V", ("v",)), {("a", "v"): "L*L*v"})
    with pytest.raises(PreconditionError):
        coadjoint(R)
    assert coadjoint(R, check=False).module.basis == ("v'",)


def test_deformed_coadjoint_is_scaled():
    Vir = virasoro()
    N = CdHom.scalar(Vir.module, poly("k"))
    Rs = coadjoint(adjoint(Vir))
    Rt = deformed_rep(Rs, N, dual_hom(N))
    assert Rt.table == (((poly("k") * (D - L),),),)
    assert check_rep_axioms(Rt).passed


def test_deformed_dual_matches_dual_of_deformed(corpus):
    # the deformed coadjoint module equals the coadjoint of the deformed adjoint module
    q = corpus("rank2_quadratic")
    Q, N, Ns = q.get("Q"), q.get("N"), q.get("Ns")
    left = deformed_rep(coadjoint(adjoint(Q)), N, Ns)
    right = coadjoint(adjoint(lck.deformed_bracket(Q, N)))
    assert left.table == right.table


def test_deformed_rep_checks_precondition():
    Vir = virasoro()
    N = CdHom(Vir.module, Vir.module, ((D,),))
    with pytest.raises(PreconditionError):
        deformed_rep(adjoint(Vir), N, N)
