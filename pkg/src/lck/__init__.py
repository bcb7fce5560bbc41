"""Exact checks for finite Lie conformal algebras.

Polynomials in the derivation ``D`` and the spectral parameters ``L``, ``M``
are handled exactly over the rationals, so every check is an identity test,
never a floating point comparison.

    >>> from lck import virasoro, check_lca_axioms
    >>> check_lca_axioms(virasoro()).verdict
    'pass'
"""
from pathlib import Path

from .kernel import (
    D, D1, D2, D3, L, M, ONE, ZERO,
    CdElement, CdHom, CdModule, NonInvertible, Poly, DegreeOverflow, PolyError,
    det, dual_hom, evaluation_oracle, find_witness, hom_det_unit, invert_hom, pairing, set_max_degree,
)
from .report import Fact, Report, Residual
from .lca import (
    Cochain2, ConstructionError, CochainError, LcaStructure, PreconditionError, Unsupported,
    abelian, bracket_eval, check_2cocycle, check_lca_axioms, coboundary, current, deform_with_parameter,
    deformed_bracket, semidirect, virasoro,
)
from .rep import RepStructure, adjoint, check_rep_axioms, coadjoint, deformed_rep, trivial
from .nijenhuis import (
    check_nijenhuis_operator, check_nijenhuis_structure, check_semidirect_characterization,
)
from .ooperator import (
    ONCandidate, check_compatible, check_left_symmetric, check_o_operator, check_on_structure, hierarchy,
    induced_lsa, nijenhuis_from_compatible, on_from_compatible, subadjacent,
)
from .ybe import (
    Tensor2, check_cybe_equivalence, check_rmatrix_nijenhuis, cybe_bracket, cybe_check, is_skew,
    r_deform, r_family_compatibility, r_from_symplectic, r_sharp0,
)
from .symplectic import (
    TwoForm, check_closed, check_omega_Nk_closed, check_sn_structure, check_symplectic, o_from_symplectic,
    omega_N, omega_natural, on_from_sn,
)
from .gdnov import (
    GDBialgebra, NovikovAlgebra, check_gd, check_nijenhuis_gd, check_novikov, deformed_gd, deformed_novikov,
    lift_hom, quadratic_from_gd,
)
from .dsl import DslError, Workspace, emit, parse, parse_file

__version__ = "0.1.0"

CORPUS = Path(__file__).parent / "corpus"


def poly(text: str) -> Poly:
    """Parse ``text`` such as ``"D + 2*L"``; other identifiers become parameters."""
    from .dsl import parse_poly

    return parse_poly(text)


def corpus_file(name: str) -> Path:
    return CORPUS / (name if name.endswith(".lck") else name + ".lck")
