import pytest

from fuzz import corpus
from oracles import expanded_symbol_count
from godelkit import diagonal, numbering
from godelkit.diagonal import Conclusion, Reading
from godelkit.errors import (
    ArityError, BoundsError, CapExceeded, UnsupportedScheme, VariableNotFree,
)
from godelkit.numbering import PRIME_SCHEME
from godelkit.syntax import Numeral, SubApp, free_vars, parse, parse_term, substitute_ast


def test_eval_sub_term():
    assert diagonal.eval_sub_term(parse_term("sub(N[20641],ss0)")) == 2163873
    assert diagonal.eval_sub_term(parse_term("N[4]+N[3]*s0")) == 7
    with pytest.raises(VariableNotFree):
        diagonal.eval_sub_term(parse_term("sub(N[1185],0)"))
    with pytest.raises(ArityError):
        diagonal.eval_sub_term(SubApp(Numeral(numbering.encode(parse("x=y"))), Numeral(0)))
    with pytest.raises(CapExceeded):
        diagonal.eval_sub_term(SubApp(Numeral(20641), Numeral(10 ** 7)))


@pytest.mark.parametrize("text, v", [("w=w", "w"), ("~(x=0)", "x"), ("Ar:~P(r,x)", "x"),
                                     ("x=s0", "x"), ("Ey:(y+y=x)", "x")])
def test_diagonalize(text, v):
    d = parse(text)
    res = diagonal.diagonalize(d, v)
    assert res.fixed_point
    assert free_vars(res.alpha) == set()
    assert numbering.decode_formula(res.n) == res.theta
    assert res.witness_report == res.alpha_code_report
    tampered = substitute_ast(res.theta, res.diagonal_variable, Numeral(res.n + 1))
    assert not diagonal.verify_fixed_point(tampered, d, v)


def test_diagonalize_arity():
    with pytest.raises(ArityError):
        diagonal.diagonalize(parse("x=y"), "x")
    with pytest.raises(ArityError):
        diagonal.diagonalize(parse("0=0"), "x")


def test_prime_scheme_fixed_point():
    res = diagonal.diagonalize(parse("x=0"), "x", PRIME_SCHEME)
    assert res.fixed_point
    assert res.alpha_code_report.symbol_count > PRIME_SCHEME.prime_cap
    assert not res.alpha_code_report.materializable


def test_goedel_sentence():
    g = diagonal.goedel_sentence()
    assert g.fixed_point
    assert g.n == 577956181869040258279
    assert g.alpha_code_report.symbol_count == 1155912363738080516572
    assert g.alpha_code_report.digit_length == g.alpha_code_report.symbol_count
    assert diagonal.goedel_sentence() == g


@pytest.mark.parametrize("text, expect", [("0=0", (3, 1186)), ("z=0", (3, 20642))])
def test_certificate_examples(text, expect):
    c = diagonal.self_numeral_certificate(parse(text))
    assert (c.formula_symbols, c.numeral_symbols) == expect
    assert c.conclusion is Conclusion.IMPOSSIBLE


def test_certificate_corpus_and_huge():
    for f in corpus(1000, seed=21):
        assert diagonal.self_numeral_certificate(f).conclusion is Conclusion.IMPOSSIBLE
    c = diagonal.self_numeral_certificate(diagonal.goedel_sentence().alpha)
    assert c.numeral_symbols is None and c.conclusion is Conclusion.IMPOSSIBLE
    with pytest.raises(UnsupportedScheme):
        diagonal.self_numeral_certificate(parse("0=0"), PRIME_SCHEME)


@pytest.mark.parametrize("reading", list(Reading))
def test_literal_pipeline(reading):
    rep = diagonal.literal_pipeline(reading)
    assert rep.fixed_point
    assert rep.certificate.conclusion is Conclusion.IMPOSSIBLE
    assert rep.impossible_step
    assert isinstance(rep.sub_report.symbol_count, int)
    assert isinstance(rep.sub_report.digit_length, int)
    assert diagonal.literal_pipeline(reading) == rep


def test_readings_differ():
    z = diagonal.literal_pipeline("z-free")
    y = diagonal.literal_pipeline("y-free")
    assert z.n != y.n


def test_gamma_prefix():
    g = diagonal.gamma_prefix(1, [parse("z=z")], parse("z=0"))
    assert g.report.symbol_count == expanded_symbol_count(g.prefix) == 4 + 20642 + 20661
    S = [parse("z=z"), parse("z=s0")]
    assert (diagonal.gamma_prefix(2, S, parse("z=0")).report.symbol_count
            > g.report.symbol_count)
    with pytest.raises(BoundsError):
        diagonal.gamma_prefix(0, S, parse("z=0"))
    with pytest.raises(BoundsError):
        diagonal.gamma_prefix(3, S, parse("z=0"))
    with pytest.raises(ArityError):
        diagonal.gamma_prefix(1, [parse("0=0")], parse("z=0"))


def test_gamma_divergence():
    rows = diagonal.gamma_divergence(diagonal.numeral_generator(), 10)
    counts = [c for _, c in rows]
    assert len(rows) == 10 and all(a < b for a, b in zip(counts, counts[1:]))
    one = diagonal.gamma_divergence(iter([parse("z=z")]), 1, Z=parse("z=0"))
    assert one == [(1, diagonal.gamma_prefix(1, [parse("z=z")], parse("z=0")).report.symbol_count)]
    other = (parse(f"Ex:(x+z=N[{i}])") for i in range(50))
    counts = [c for _, c in diagonal.gamma_divergence(other, 20)]
    assert all(a < b for a, b in zip(counts, counts[1:]))
    with pytest.raises(ArityError):
        diagonal.gamma_divergence(iter([parse("z=z")] * 2), 2)
