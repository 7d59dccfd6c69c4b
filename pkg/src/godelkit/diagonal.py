"""Diagonal fixed points, the Gödel sentence, and size experiments.

A fixed point of ``D(v)`` is built the usual way: put ``sub(y, y)`` in place
of ``v`` to get ``theta(y)``, let ``n`` be the code of ``theta`` and set
``alpha = theta(N[n])``. The embedded term ``sub(N[n], N[n])`` then evaluates
to the code of ``alpha`` itself. That claim is checked by computation, never
assumed: exactly when the code fits under the cap, otherwise by comparing the
size report, canonical symbol sequences, and residues modulo several primes.
The residues on the two sides come from different routes (rendering
``alpha`` versus splicing digit blocks of ``n``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Sequence

from . import numbering
from .errors import (
    ArityError, BoundsError, CapExceeded, GodelError, OpenTermError, UnsupportedScheme,
    VariableNotFree,
)
from .numbering import DEFAULT_SCHEME, PRIME, CodecScheme, SizeReport
from .syntax import (
    ANY_TERM, VARIABLES, Equals, Formula, Not, Numeral, Plus, Succ, SubApp, SymbolSeq,
    Term, Times, Var, all_vars, big_and, free_vars, match_instance, normalize, parse,
    replace_free, seq_length, substitute_ast, term_vars, to_symbols,
)

# Mersenne and other large primes used for residue fingerprints.
RESIDUE_MODULI = (2 ** 61 - 1, 2 ** 89 - 1, 2 ** 107 - 1, 10 ** 18 + 9)

GOEDEL_D = "Ar:~P(r,s)"


@dataclass(frozen=True)
class PendingSub:
    """The value of ``sub(y, j)`` kept symbolic because it may be too large."""

    y: int
    var: str
    j: int
    scheme: CodecScheme

    def report(self) -> SizeReport:
        return numbering.sub_size(self.y, self.var, self.j, self.scheme)

    def sequence(self) -> SymbolSeq:
        return numbering.sub_sequence(self.y, self.var, self.j, self.scheme)

    def residue(self, modulus: int) -> int:
        return numbering.sub_residue(self.y, self.var, self.j, modulus, self.scheme)

    def value(self) -> int:
        return numbering.sub(self.y, self.var, self.j, self.scheme)


def _materialize(v) -> int:
    return v.value() if isinstance(v, PendingSub) else v


def _unique_free_var(y: int, scheme: CodecScheme) -> str:
    fv = free_vars(numbering.decode_formula(y, scheme))
    if not fv:
        raise VariableNotFree(f"the formula coded by {y} is closed")
    if len(fv) > 1:
        raise ArityError(f"the formula coded by {y} has free variables {sorted(fv)}")
    return next(iter(fv))


def evaluate(t: Term, scheme: CodecScheme = DEFAULT_SCHEME):
    """Value of a closed term, innermost first.

    Returns an int, or a :class:`PendingSub` when the outermost operation is
    a ``sub`` whose result is too large to build.
    """
    tp = type(t)
    if tp is Numeral:
        return t.count
    if tp is Var:
        raise OpenTermError(f"variable {t.name} has no value")
    if tp is Succ:
        return _materialize(evaluate(t.arg, scheme)) + 1
    if tp is Plus:
        return _materialize(evaluate(t.left, scheme)) + _materialize(evaluate(t.right, scheme))
    if tp is Times:
        return _materialize(evaluate(t.left, scheme)) * _materialize(evaluate(t.right, scheme))
    if tp is SubApp:
        y = _materialize(evaluate(t.left, scheme))
        j = _materialize(evaluate(t.right, scheme))
        var = _unique_free_var(y, scheme)
        pending = PendingSub(y, var, j, scheme)
        try:
            return pending.value()
        except CapExceeded:
            return pending
    raise TypeError(f"not a term: {t!r}")


def eval_sub_term(t: Term, scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """Evaluate a closed term; ``sub(a, b)`` substitutes into the unique free variable.

    Raises CapExceeded with the would-be SizeReport for oversized results.
    """
    v = evaluate(t, scheme)
    if isinstance(v, PendingSub):
        raise CapExceeded(v.report())
    return v


def code_report(f, scheme: CodecScheme = DEFAULT_SCHEME) -> SizeReport:
    seq = to_symbols(f)
    if scheme.kind == PRIME:
        n = seq_length(seq)
        return SizeReport(n, None, n <= scheme.prime_cap)
    return numbering.size_of(seq, scheme)


def same_code(f: Formula, value, scheme: CodecScheme = DEFAULT_SCHEME) -> bool:
    """Does ``value`` (an int or PendingSub) equal the code of ``f``?"""
    seq = to_symbols(f)
    if not isinstance(value, PendingSub):
        try:
            return numbering.encode(seq, scheme) == value
        except CapExceeded:
            return False
    if normalize(seq) != value.sequence():
        return False
    if scheme.kind == PRIME:
        return True
    if code_report(f, scheme) != value.report():
        return False
    return all(numbering.code_residue(seq, m, scheme) == value.residue(m)
               for m in RESIDUE_MODULI)


# ---------------------------------------------------------------- fixed points


@dataclass(frozen=True)
class FixedPointResult:
    alpha: Formula
    d: Formula
    variable: str
    diagonal_variable: str
    theta: Formula
    n: int
    witness_code: int | None
    witness_report: SizeReport
    alpha_code_report: SizeReport
    fixed_point: bool


def _fresh_variable(f: Formula) -> str:
    used = all_vars(f)
    for name in ("y",) + VARIABLES:
        if name not in used:
            return name
    raise ArityError("no variable left for the diagonal argument")


def verify_fixed_point(alpha: Formula, d: Formula, v: str,
                       scheme: CodecScheme = DEFAULT_SCHEME) -> bool:
    """Check that ``alpha == d[v := t]`` for a closed ``t`` whose value is ``code(alpha)``."""
    t = match_instance(d, v, alpha)
    if t is None or t is ANY_TERM or term_vars(t):
        return False
    try:
        value = evaluate(t, scheme)
    except GodelError:
        return False
    return same_code(alpha, value, scheme)


def diagonalize(d: Formula, v: str, scheme: CodecScheme = DEFAULT_SCHEME) -> FixedPointResult:
    fv = free_vars(d)
    if fv != {v}:
        raise ArityError(f"expected exactly the free variable {v}, found {sorted(fv) or 'none'}")
    y = _fresh_variable(d)
    theta = replace_free(d, v, SubApp(Var(y), Var(y)))
    n = numbering.encode(theta, scheme)
    alpha = substitute_ast(theta, y, Numeral(n))
    pending = PendingSub(n, y, n, scheme)
    try:
        witness = pending.value()
    except CapExceeded:
        witness = None
    return FixedPointResult(
        alpha=alpha,
        d=d,
        variable=v,
        diagonal_variable=y,
        theta=theta,
        n=n,
        witness_code=witness,
        witness_report=pending.report(),
        alpha_code_report=code_report(alpha, scheme),
        fixed_point=verify_fixed_point(alpha, d, v, scheme),
    )


def goedel_sentence(scheme: CodecScheme = DEFAULT_SCHEME) -> FixedPointResult:
    """Fixed point of ``D(s) = Ar:~P(r,s)``: a sentence denying its own provability."""
    return diagonalize(parse(GOEDEL_D), "s", scheme)


# ---------------------------------------------------------------- certificates


class Conclusion(str, enum.Enum):
    IMPOSSIBLE = "self-containment-impossible"
    INCONCLUSIVE = "inconclusive"

    @property
    def short(self) -> str:
        return "impossible" if self is Conclusion.IMPOSSIBLE else "inconclusive"


@dataclass(frozen=True)
class Certificate:
    formula_symbols: int
    numeral_symbols: int | None  # None when code(f) + 1 is too large to build
    code_digits: int
    conclusion: Conclusion


def self_numeral_certificate(f: Formula, scheme: CodecScheme = DEFAULT_SCHEME) -> Certificate:
    """Compare the size of ``f`` with the size of the numeral naming ``f``."""
    if scheme.kind != numbering.POSITIONAL:
        raise UnsupportedScheme("certificates need a positional scheme")
    report = numbering.encode_size(f, scheme)
    length = report.symbol_count
    if report.materializable:
        numeral = numbering.encode(f, scheme) + 1
        bigger = numeral > length
    else:
        # code >= base**(L-1) >= 2**(k*(L-1)) with k = floor(log2 base)
        numeral = None
        bigger = (scheme.base.bit_length() - 1) * (report.digit_length - 1) >= length.bit_length()
    return Certificate(length, numeral, report.digit_length,
                       Conclusion.IMPOSSIBLE if bigger else Conclusion.INCONCLUSIVE)


# ---------------------------------------------------------------- literal construction


class Reading(str, enum.Enum):
    Z_FREE = "z-free"
    Y_FREE = "y-free"


@dataclass(frozen=True)
class LiteralReport:
    reading: Reading
    variable: str
    open_formula: Formula  # no proof of the formula coded by sub(v, v)
    n: int
    instance: Formula  # open_formula with v replaced by N[n]
    sub_report: SizeReport
    sub_code: int | None
    fixed_point: bool
    certificate: Certificate
    impossible_step: str | None


def literal_pipeline(reading: Reading | str,
                     scheme: CodecScheme = DEFAULT_SCHEME) -> LiteralReport:
    """Replay the literal construction under one reading of the free variable.

    The self-naming numeral is kept as the finite term ``sub(v, v)``. The
    literal version, a numeral equal to the code of its own container, is
    then refuted by a certificate.
    """
    reading = Reading(reading)
    v = "z" if reading is Reading.Z_FREE else "y"
    open_formula = parse(f"~(Er:Es:(P(r,s) & s=sub({v},{v})))")
    n = numbering.encode(open_formula, scheme)
    instance = substitute_ast(open_formula, v, Numeral(n))
    pending = PendingSub(n, v, n, scheme)
    try:
        code = pending.value()
    except CapExceeded:
        code = None
    value = code if code is not None else pending
    cert = self_numeral_certificate(instance, scheme)
    return LiteralReport(
        reading=reading,
        variable=v,
        open_formula=open_formula,
        n=n,
        instance=instance,
        sub_report=pending.report(),
        sub_code=code,
        fixed_point=same_code(instance, value, scheme),
        certificate=cert,
        impossible_step=("literal self-numeral" if cert.conclusion is Conclusion.IMPOSSIBLE
                         else None),
    )


# ---------------------------------------------------------------- gamma prefixes


@dataclass(frozen=True)
class GammaPrefix:
    k: int
    prefix: Formula
    report: SizeReport


def gamma_prefix(k: int, S: Sequence[Formula], Z: Formula,
                 scheme: CodecScheme = DEFAULT_SCHEME) -> GammaPrefix:
    """Conjunction of ``~(N[code Z] = N[code s_i])`` for the first ``k`` members of ``S``."""
    if k < 1 or k > len(S):
        raise BoundsError(f"k={k} outside 1..{len(S)}")
    for i, s in enumerate(S[:k]):
        if len(free_vars(s)) != 1:
            raise ArityError(f"S[{i}] must have exactly one free variable")
    gz = numbering.encode(Z, scheme)
    conjuncts = [Not(Equals(Numeral(gz), Numeral(numbering.encode(s, scheme)))) for s in S[:k]]
    prefix = big_and(conjuncts)
    return GammaPrefix(k, prefix, code_report(prefix, scheme))


def numeral_generator(start: int = 1) -> Iterable[Formula]:
    """``z=N[i]`` for ``i = start, start+1, ...``"""
    i = start
    while True:
        yield Equals(Var("z"), Numeral(i))
        i += 1


def gamma_divergence(S_generator: Iterable[Formula], k_max: int,
                     scheme: CodecScheme = DEFAULT_SCHEME,
                     Z: Formula | None = None) -> list[tuple[int, int]]:
    """``(k, symbol_count)`` rows of the gamma prefixes for ``k = 1..k_max``."""
    S = list(islice(S_generator, k_max))
    if len(set(S)) != len(S):
        raise ArityError("the generator repeated a formula")
    Z = Z if Z is not None else parse("z=0")
    return [(k, gamma_prefix(k, S, Z, scheme).report.symbol_count) for k in range(1, k_max + 1)]
