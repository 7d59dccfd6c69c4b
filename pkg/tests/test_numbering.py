import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzz import corpus, formulas, small_corpus
from oracles import base32_digit_count, expanded_digits, positional_code, prime_code
from godelkit import numbering
from godelkit.errors import (
    CapExceeded, EmptySequence, NotDecodable, UnsupportedScheme, VariableNotFree,
)
from godelkit.numbering import DEFAULT_SCHEME, PRIME_SCHEME, SizeReport
from godelkit.syntax import Numeral, free_vars, parse, render_symbols, substitute_ast, to_symbols


def test_pinned_codes():
    assert numbering.encode(parse("0=0")) == 1185
    assert numbering.encode(parse("z=0")) == 20641
    assert numbering.encode(parse("z=z")) == 20660
    assert numbering.encode(parse("0=0"), PRIME_SCHEME) == 2430 == 2 ** 1 * 3 ** 5 * 5 ** 1


def test_decode_pinned():
    assert render_symbols(numbering.decode(1185)) == "0=0"
    assert numbering.decode_formula(20641) == parse("z=0")
    assert numbering.decode_formula(2430, PRIME_SCHEME) == parse("0=0")


@pytest.mark.parametrize("n", [0, 32, 27, 26 * 32 + 1, -5])
def test_not_decodable(n):
    with pytest.raises(NotDecodable):
        numbering.decode_formula(n)


def test_prime_gap_not_decodable():
    with pytest.raises(NotDecodable):
        numbering.decode(2 * 5, PRIME_SCHEME)


def test_non_canonical_spelling_rejected():
    # "(0=0)" spells a formula but is not its canonical rendering
    digits = [6, 1, 5, 1, 7]
    with pytest.raises(NotDecodable):
        numbering.decode_formula(positional_code(digits))


def test_empty_sequence():
    with pytest.raises(EmptySequence):
        numbering.encode([])


def test_cap_exceeded_carries_report():
    f = parse("z=N[300000]")
    with pytest.raises(CapExceeded) as info:
        numbering.encode(f)
    assert info.value.report == numbering.encode_size(f)
    assert not info.value.report.materializable


def test_encode_matches_oracles_on_corpus():
    for f in corpus(500, seed=3):
        assert numbering.encode(f) == positional_code(expanded_digits(f))
    for f in small_corpus(200, seed=4):
        assert numbering.encode(f, PRIME_SCHEME) == prime_code(expanded_digits(f))


def test_prime_cap():
    with pytest.raises(CapExceeded):
        numbering.encode(parse("z=N[70]"), PRIME_SCHEME)


def test_scheme_independence():
    for f in small_corpus(300, seed=8):
        a = numbering.decode_formula(numbering.encode(f))
        b = numbering.decode_formula(numbering.encode(f, PRIME_SCHEME), PRIME_SCHEME)
        assert a == b == f


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_round_trip_property(f):
    assert numbering.decode_formula(numbering.encode(f)) == f


def test_numeral_of():
    assert numbering.numeral_of(1185) == Numeral(1185)
    with pytest.raises(ValueError):
        numbering.numeral_of(-1)


def test_encode_size_examples():
    assert numbering.encode_size(parse("0=0")) == SizeReport(3, 3, True)
    rep = numbering.encode_size(parse("z=N[10000000]"))
    assert rep == SizeReport(10_000_003, 10_000_003, False)
    with pytest.raises(UnsupportedScheme):
        numbering.encode_size(parse("0=0"), PRIME_SCHEME)


def test_encode_size_soundness():
    for f in corpus(1000, seed=12):
        assert numbering.encode_size(f).digit_length == base32_digit_count(numbering.encode(f))


def test_sub_examples():
    assert numbering.sub(20641, "z", 2) == numbering.encode(parse("ss0=0")) == 2163873
    assert numbering.sub(20641, "z", 0) == 1185
    with pytest.raises(VariableNotFree):
        numbering.sub(1185, "z", 2)


def test_sub_prime_scheme_agrees_with_ast():
    y = numbering.encode(parse("z=0"), PRIME_SCHEME)
    assert numbering.sub(y, "z", 3, PRIME_SCHEME) == numbering.encode(parse("sss0=0"), PRIME_SCHEME)


@settings(max_examples=200, deadline=None)
@given(formulas, st.integers(0, 1000), st.randoms(use_true_random=False))
def test_sub_matches_ast_route(f, j, rng):
    fv = sorted(free_vars(f))
    if not fv:
        return
    v = rng.choice(fv)
    assert numbering.sub(numbering.encode(f), v, j) == numbering.encode(
        substitute_ast(f, v, Numeral(j)))


def test_huge_sub_size_and_residues():
    f = parse("Ex:(x=sub(z,z) & z=z)")
    y = numbering.encode(f)
    j = 10 ** 9
    g = substitute_ast(f, "z", Numeral(j))
    rep = numbering.sub_size(y, "z", j)
    assert rep == numbering.encode_size(g)
    assert not rep.materializable
    with pytest.raises(CapExceeded):
        numbering.sub(y, "z", j)
    for m in (97, 2 ** 61 - 1, 10 ** 18 + 9):
        assert numbering.sub_residue(y, "z", j, m) == numbering.code_residue(to_symbols(g), m)


def test_residue_matches_materialized():
    rng = random.Random(1)
    for f in corpus(200, seed=13):
        m = rng.randint(2, 10 ** 12)
        assert numbering.code_residue(to_symbols(f), m) == numbering.encode(f) % m


def test_proof_codes():
    lines = [parse("0=0"), parse("0=0 -> (0=0 -> 0=0)"), parse("0=0 -> 0=0")]
    r = numbering.encode_proof(lines)
    assert numbering.decode_proof(r) == lines
    assert numbering.encode_proof(lines[:1]) == 1185
    short = [parse("0=0"), parse("0=0")]
    rp = numbering.encode_proof(short, PRIME_SCHEME)
    assert rp == 2 ** 2430 * 3 ** 2430
    assert numbering.decode_proof(rp, PRIME_SCHEME) == short
    with pytest.raises(CapExceeded):
        numbering.encode_proof(lines, PRIME_SCHEME)


def test_scheme_validation():
    assert DEFAULT_SCHEME.code(DEFAULT_SCHEME.symbol(5)) == 5
    with pytest.raises(UnsupportedScheme):
        PRIME_SCHEME.require_positional("sub")
