import pytest
from hypothesis import given, settings

from fuzz import corpus, formulas, terms
from oracles import expanded_symbol_count
from godelkit.errors import FormulaSyntaxError, OpenTermError
from godelkit.syntax import (
    ZERO, And, Equals, Exists, Forall, Implies, Not, Numeral, Or, Plus, ProofPred, Succ, Times,
    Var, free_vars, parse, parse_term, render, substitute_ast, symbol_count,
)


def test_smallest_atom():
    assert parse("0=0") == Equals(ZERO, ZERO)
    assert render(Equals(ZERO, ZERO)) == "0=0"


def test_quantified_proof_predicate():
    f = parse("~(Er:Es:(P(r,s) & s=N[5]))")
    body = And(ProofPred(Var("r"), Var("s")), Equals(Var("s"), Numeral(5)))
    assert f == Not(Exists("r", Exists("s", body)))
    assert free_vars(f) == set()


def test_truncated_input_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("0=")
    assert info.value.offset == 2


@pytest.mark.parametrize("text", ["", "0", "=0", "(0=0", "0=0)", "Ex", "P(0)", "0=0 &", "N[x]=0"])
def test_malformed(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_numeral_display_threshold():
    assert render(Equals(Numeral(3), ZERO)) == "sss0=0"
    assert render(Equals(Numeral(10 ** 6), ZERO)) == "N[1000000]=0"
    assert render(Equals(Numeral(10 ** 6), ZERO), threshold=10 ** 7).startswith("sss")


def test_zero_and_numeral_zero_coincide():
    assert render(Numeral(0)) == render(ZERO) == "0"
    assert Succ(Succ(ZERO)) == Numeral(2)


def test_successor_folds_into_numeral():
    assert parse_term("ssN[3]") == Numeral(5)
    assert parse_term("s(x+0)") == Succ(Plus(Var("x"), ZERO))


def test_variable_s_versus_successor():
    assert parse("s=0") == Equals(Var("s"), ZERO)
    assert parse("ss=0") == Equals(Succ(Var("s")), ZERO)
    assert parse("Es:s=0") == Exists("s", Equals(Var("s"), ZERO))


def test_precedence():
    assert parse("0=0 & 0=0 | 0=0") == Or(And(parse("0=0"), parse("0=0")), parse("0=0"))
    assert parse("0=0 -> 0=0 -> 0=0") == Implies(parse("0=0"), parse("0=0 -> 0=0"))
    assert parse_term("x+y*z") == Plus(Var("x"), Times(Var("y"), Var("z")))


def test_unicode_connectives():
    assert parse("¬(0=0) ∧ ∀x:(x=x)") == And(Not(parse("0=0")), Forall("x", parse("x=x")))


def test_colon_optional():
    assert parse("Az:(z=0)") == parse("Az(z=0)")


def test_free_vars():
    assert free_vars(parse("z=0")) == {"z"}
    assert free_vars(parse("Az:(z=0)")) == set()
    assert free_vars(parse("Ax:(x=y) & x=0")) == {"x", "y"}


def test_substitute_examples():
    assert substitute_ast(parse("z=0"), "z", Numeral(2)) == parse("ss0=0")
    f = parse("Az:(z=0)")
    assert substitute_ast(f, "z", Numeral(2)) == f
    with pytest.raises(OpenTermError):
        substitute_ast(parse("z=0"), "z", Var("y"))


def test_symbol_count_examples():
    assert symbol_count(parse("0=0")) == 3
    assert symbol_count(Numeral(1185)) == 1186


def test_round_trip_seeded_corpus():
    for f in corpus(2000, seed=5):
        assert parse(render(f)) == f
        assert parse(render(f, threshold=0)) == f


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_round_trip_property(f):
    assert parse(render(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_substitution_absent_variable_is_identity(f):
    for v in ("x", "y", "z", "r", "w", "u", "v", "s"):
        if v not in free_vars(f):
            assert substitute_ast(f, v, Numeral(4)) == f


def test_single_occurrence_accounting():
    for f in corpus(2000, seed=9):
        for v in free_vars(f):
            if render(f, threshold=0).count(v) != 1:
                continue
            g = substitute_ast(f, v, Numeral(37))
            assert symbol_count(g) == symbol_count(f) - 1 + 38


@pytest.mark.parametrize("k", [0, 1, 9, 10, 11, 500, 10 ** 4])
def test_compressed_count_matches_expansion(k):
    f = Equals(Plus(Numeral(k), Var("x")), Numeral(k // 2))
    assert symbol_count(f) == expanded_symbol_count(f)


@settings(max_examples=200, deadline=None)
@given(terms)
def test_term_count_matches_expansion(t):
    assert symbol_count(t) == expanded_symbol_count(t)


def test_long_conjunction_no_recursion_limit():
    f = parse(" & ".join(["0=0"] * 300))
    assert symbol_count(f) == 300 * 3 + 299
    assert parse(render(f)) == f
