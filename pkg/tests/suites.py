"""Report builders shared by the acceptance tests; criterion 7 re-checks everything they produce."""
import random
from functools import lru_cache

import lck
from lck import (
    D1, D2, Poly, Tensor2, adjoint, check_compatible, check_lca_axioms, check_nijenhuis_operator,
    check_o_operator, coadjoint, deformed_bracket, parse_file, corpus_file,
)
from lck.ooperator import check_on_structure, hierarchy
from lck.symplectic import check_sn_structure, check_symplectic
from lck.ybe import check_cybe_equivalence, check_rmatrix_nijenhuis, cybe_check, is_skew, r_family_compatibility


@lru_cache(maxsize=None)
def ws(name):
    return parse_file(corpus_file(name))


def axiom_reports():
    return {
        "virasoro": check_lca_axioms(ws("virasoro").get("Vir")),
        "current": check_lca_axioms(ws("current_2d").get("Cur")),
        "quadratic": check_lca_axioms(ws("rank2_quadratic").get("Q")),
        "sn2": check_lca_axioms(ws("sn2").get("DA")),
        "sn3": check_lca_axioms(ws("sn3").get("A")),
    }


def nijenhuis_reports():
    v, q = ws("virasoro"), ws("rank2_quadratic")
    Vir, NV = v.get("Vir"), v.get("N")
    Q, NQ = q.get("Q"), q.get("N")
    out = {}
    for tag, A, N in (("vir", Vir, NV), ("q", Q, NQ)):
        out[f"nijenhuis {tag}"] = check_nijenhuis_operator(A, N)
        out[f"deformed {tag}"] = check_lca_axioms(deformed_bracket(A, N))
        out[f"t-deformed {tag}"] = check_lca_axioms(
            lck.deform_with_parameter(A, lck.coboundary(N, A), "t"))
    out["corpus VirT"] = check_lca_axioms(v.get("VirT"))
    return out


def rota_baxter_reports():
    q = ws("rank2_quadratic")
    Q, R1, R2 = q.get("Q"), q.get("R1"), q.get("R2")
    ad = adjoint(Q)
    k1, k2 = Poly.var("k1"), Poly.var("k2")
    return {
        "R1": check_o_operator(Q, ad, R1),
        "R2": check_o_operator(Q, ad, R2),
        "k1 R1 + k2 R2": check_o_operator(Q, ad, R1 * k1 + R2 * k2),
        "compatible": check_compatible(Q, ad, R1, R2),
    }


def bridge_reports():
    s = ws("sn2")
    DA, w, N, Ns, T, r = (s.get(x) for x in ("DA", "w", "N", "Ns", "T", "r"))
    R = coadjoint(adjoint(DA))
    return {
        "symplectic": check_symplectic(w),
        "sn-structure": check_sn_structure(w, N),
        "on-structure": check_on_structure(DA, R, T, N, Ns),
        "skew r": is_skew(r),
        "cybe r": cybe_check(r),
        "cybe-equivalence r": check_cybe_equivalence(r),
        "rmatrix-nijenhuis": check_rmatrix_nijenhuis(r, N),
        "hierarchy k<=3": hierarchy(DA, R, T, N, Ns, 3)[1],
        "r-family k<=3": r_family_compatibility(r, N, 3),
    }


def random_skew_tensor(A, rng: random.Random, degree: int = 2) -> Tensor2:
    """c - c^21 with c random of total degree <= ``degree`` in D1, D2."""
    n = A.rank

    def rand_poly():
        p = Poly()
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                c = rng.randint(-2, 2)
                if c:
                    p = p + c * D1 ** a * D2 ** b
        return p

    c = Tensor2(A, tuple(tuple(rand_poly() for _ in range(n)) for _ in range(n)))
    return c + c.flip() * -1


def random_skew_suite(count: int = 20, seed: int = 2024):
    rng = random.Random(seed)
    algebras = [ws("virasoro").get("Vir"), ws("rank2_quadratic").get("Q"), ws("current_2d").get("Cur"),
                ws("sn3").get("A")]
    return [random_skew_tensor(algebras[i % len(algebras)], rng) for i in range(count)]


def corpus_skew_tensors():
    out = []
    for name in ("virasoro", "current_2d", "rank2_quadratic", "sn2", "sn3", "gd"):
        w = ws(name)
        for t in w.names("tensor"):
            r = w.get(t)
            if is_skew(r).passed:
                out.append(r)
    return out

