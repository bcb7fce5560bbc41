import pytest

import lck
from lck import D, L, ZERO, poly
from lck.dsl import DslError, emit, parse, parse_element, parse_poly, render_element, tokenize

SMALL = """
scalars k;
algebra Vir basis a { [a,a] = (D + 2*L)*a; }
map N : Vir -> Vir { a -> k*a; }
check lca Vir;
check nijenhuis Vir N;
"""


def test_parse_small_workspace():
    ws = parse(SMALL)
    assert ws.params == ["k"]
    assert ws.names("algebra") == ["Vir"]
    assert [c.kind for c in ws.checks] == ["lca", "nijenhuis"]
    assert ws.get("N").matrix == ((poly("k"),),)


def test_tokenizer_comments_and_primes():
    toks = [t.text for t in tokenize("a' -> b'' // note\n# other\n x**2")]
    assert toks == ["a'", "->", "b''", "x", "**", "2", ""]


def test_poly_text_round_trip():
    p = parse_poly("(D + 2*L)^2 - k/3")
    assert p == (D + 2 * L) ** 2 - poly("k") / 3
    assert parse_poly(str(p)) == p


def test_element_text():
    v = parse_element("(D + 2*L)*a - b", ("a", "b"))
    assert v == (D + 2 * L, poly("-1"))
    assert render_element(v, ("a", "b")) == "(D + 2*L)*a - b"


def test_undefined_name_error_position():
    with pytest.raises(DslError) as e:
        parse("check lca Foo;")
    assert e.value.line == 1
    assert "Foo" in e.value.message


def test_mu_not_allowed_in_bracket():
    with pytest.raises(DslError) as e:
        parse("algebra A basis a { [a,a] = M*a; }")
    assert "M not permitted in a bracket table" in str(e.value)


def test_names_are_unique():
    with pytest.raises(DslError):
        parse("algebra A basis a { }\nalgebra A basis b { }")


def test_wrong_argument_kind():
    with pytest.raises(DslError) as e:
        parse(SMALL + "check lca N;")
    assert "expected algebra" in str(e.value)


def test_wrong_arity():
    with pytest.raises(DslError):
        parse(SMALL + "check nijenhuis Vir;")


def test_unknown_check():
    with pytest.raises(DslError) as e:
        parse(SMALL + "check jacobi Vir;")
    assert "lca" in e.value.expected


def test_unexpected_character():
    with pytest.raises(DslError):
        parse("algebra A basis a { [a,a] = a @ a; }")


def test_redundant_entry_must_agree():
    ws = parse("algebra A basis a b { [a,b] = (D + L)*b; [b,a] = L*b; }")
    assert ws.get("A").table[1][0] == (ZERO, L)
    with pytest.raises(DslError) as e:
        parse("algebra A basis a b { [a,b] = b;\n [b,a] = b; }")
    assert e.value.line == 2
    assert "skew-symmetry" in e.value.message


def test_non_skew_diagonal_parses_and_fails_check():
    ws = parse("algebra A basis a { [a,a] = L*a; }\ncheck lca A;")
    assert lck.dsl.run_checks(ws)[0].verdict == "fail"


def test_dual_space_reference(corpus):
    ws = corpus("sn2")
    assert ws.module_of("DA'") == ws.get("DA").module.dual()


def test_emit_is_self_contained(corpus):
    ws = corpus("virasoro")
    text = emit(ws, "VirN")
    assert text.startswith("scalars k;")
    assert "[a,a] = (k*D + 2*k*L)*a;" in text
    again = parse(text)
    assert again.get("VirN") == ws.get("VirN")


def test_emit_map_declares_spaces(corpus):
    text = emit(corpus("sn2"), "T")
    assert "space DA'" in text
    assert parse(text).get("T") == corpus("sn2").get("T")


def test_tdeform_adds_parameter(corpus):
    ws = corpus("virasoro")
    assert "t" in ws.params
    assert "t" in ws.get("VirT").table[0][0][0].symbols


def test_gd_block(corpus):
    G = corpus("gd").get("G")
    assert G.basis == ("a", "b")
    assert G.novikov.table[1][0] == (ZERO, poly("1"))
