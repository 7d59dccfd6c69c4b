"""Hilbert-style proof checking over Robinson arithmetic.

A proof is a bare sequence of formulas; the justification of each line
(axiom instance, modus ponens, generalization) is recovered by search over
the earlier lines. ``P(r, s)`` is the decidable relation "the code ``r``
names a valid proof whose last line has code ``s``".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import numbering
from .diagonal import eval_sub_term
from .errors import CapExceeded, GodelError, UnsupportedScheme
from .numbering import DEFAULT_SCHEME, POSITIONAL, CodecScheme, digit_count
from .syntax import (
    ANY_TERM, VARIABLES, Equals, Exists, Forall, Formula, Iff, Implies, Not, Numeral, Or,
    And, Plus, ProofPred, Succ, SubApp, Times, Var, _unsucc, match_instance, parse,
    symbol_count, term_vars,
)


class Axiom(str, enum.Enum):
    K = "K"
    S = "S"
    CP = "CP"
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"
    Q5 = "Q5"
    Q6 = "Q6"
    Q7 = "Q7"
    EQ_REFL = "EqRefl"
    EQ_SUB = "EqSub"
    UNIV_INST = "UnivInst"
    SUB_EVAL = "SubEval"


ROBINSON = {
    Axiom.Q1: parse("Ax:~(sx=0)"),
    Axiom.Q2: parse("Ax:Ay:(sx=sy -> x=y)"),
    Axiom.Q3: parse("Ax:(~(x=0) -> Ey:(x=sy))"),
    Axiom.Q4: parse("Ax:(x+0=x)"),
    Axiom.Q5: parse("Ax:Ay:(x+sy=s(x+y))"),
    Axiom.Q6: parse("Ax:(x*0=0)"),
    Axiom.Q7: parse("Ax:Ay:(x*sy=x*y+x)"),
}


def _closed(t) -> bool:
    return not term_vars(t)


def _is_k(f) -> bool:
    return (type(f) is Implies and type(f.right) is Implies
            and f.right.right == f.left)


def _is_s(f) -> bool:
    if not (type(f) is Implies and type(f.left) is Implies and type(f.right) is Implies):
        return False
    abc, (ab, ac) = f.left, (f.right.left, f.right.right)
    return (type(abc.right) is Implies and type(ab) is Implies and type(ac) is Implies
            and abc.left == ab.left == ac.left
            and abc.right.left == ab.right
            and abc.right.right == ac.right)


def _is_cp(f) -> bool:
    if not (type(f) is Implies and type(f.left) is Implies and type(f.right) is Implies):
        return False
    na, nb = f.left.left, f.left.right
    return (type(na) is Not and type(nb) is Not
            and f.right.left == nb.body and f.right.right == na.body)


def _is_eq_refl(f) -> bool:
    return type(f) is Equals and f.left == f.right and _closed(f.left)


def _same_but(a, b, t, u) -> bool:
    """Is there a formula phi with ``a == phi[v:=t]`` and ``b == phi[v:=u]``?"""
    if a == b:
        return True
    if a == t and b == u:
        return True
    if type(a) is type(b) and not isinstance(a, (Var, Numeral)):
        if isinstance(a, (Exists, Forall)):
            return a.var == b.var and _same_but(a.body, b.body, t, u)
        fields = [getattr(a, k) for k in a.__dataclass_fields__]
        others = [getattr(b, k) for k in b.__dataclass_fields__]
        return all(_same_but(x, y, t, u) for x, y in zip(fields, others))
    ia, ib = _unsucc(a), _unsucc(b)
    return ia is not None and ib is not None and _same_but(ia, ib, t, u)


def _is_eq_sub(f) -> bool:
    if not (type(f) is Implies and type(f.left) is Equals and type(f.right) is Implies):
        return False
    t, u = f.left.left, f.left.right
    if not (_closed(t) and _closed(u)):
        return False
    return _same_but(f.right.left, f.right.right, t, u)


def _is_univ_inst(f) -> bool:
    if not (type(f) is Implies and type(f.left) is Forall):
        return False
    t = match_instance(f.left.body, f.left.var, f.right)
    return t is ANY_TERM or (t is not None and _closed(t))


def _is_sub_eval(f, scheme: CodecScheme) -> bool:
    if not (type(f) is Equals and type(f.left) is SubApp and type(f.right) is Numeral):
        return False
    if not _closed(f.left):
        return False
    try:
        return eval_sub_term(f.left, scheme) == f.right.count
    except GodelError:
        return False


def is_axiom(f: Formula, scheme: CodecScheme = DEFAULT_SCHEME) -> Axiom | None:
    """First axiom schema matching ``f``, in the fixed reporting order."""
    if _is_k(f):
        return Axiom.K
    if _is_s(f):
        return Axiom.S
    if _is_cp(f):
        return Axiom.CP
    for name, q in ROBINSON.items():
        if f == q:
            return name
    if _is_eq_refl(f):
        return Axiom.EQ_REFL
    if _is_eq_sub(f):
        return Axiom.EQ_SUB
    if _is_univ_inst(f):
        return Axiom.UNIV_INST
    if _is_sub_eval(f, scheme):
        return Axiom.SUB_EVAL
    return None


@dataclass(frozen=True)
class Verdict:
    valid: bool
    line: int | None = None  # 1-based
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "valid" if self.valid else f"invalid {self.line}: {self.reason}"


def justify(f: Formula, earlier: Sequence[Formula], scheme: CodecScheme = DEFAULT_SCHEME):
    """How ``f`` follows from ``earlier``: an Axiom, ``("MP", i, j)``, ``("Gen", i)`` or None."""
    ax = is_axiom(f, scheme)
    if ax is not None:
        return ax
    index = {g: i for i, g in enumerate(earlier)}
    for j, g in enumerate(earlier):
        if type(g) is Implies and g.right == f and g.left in index:
            return ("MP", index[g.left], j)
    if type(f) is Forall and f.body in index:
        return ("Gen", index[f.body])
    return None


def check_proof(lines: Sequence[Formula], scheme: CodecScheme = DEFAULT_SCHEME) -> Verdict:
    if not lines:
        return Verdict(False, 0, "empty proof")
    for i, f in enumerate(lines):
        if justify(f, lines[:i], scheme) is None:
            return Verdict(False, i + 1, "not-an-axiom" if i == 0 else "unjustified")
    return Verdict(True)


def P(r: int, s: int, scheme: CodecScheme = DEFAULT_SCHEME) -> bool:
    """True iff ``r`` codes a valid proof whose last line has code ``s``. Total."""
    try:
        lines = numbering.decode_proof(r, scheme)
        if not check_proof(lines, scheme):
            return False
        return numbering.encode(lines[-1], scheme) == s
    except GodelError:
        return False


@dataclass(frozen=True, order=True)
class ProvablePair:
    r: int
    s: int


# ---------------------------------------------------------------- enumeration


def _terms_and_formulas(max_len: int):
    """All canonical terms and formulas with at most ``max_len`` symbols, by length."""
    terms: list[list] = [[] for _ in range(max_len + 1)]
    forms: list[list] = [[] for _ in range(max_len + 1)]

    def place(bucket, node, n):
        if symbol_count(node) == n:
            bucket[n].append(node)

    for n in range(1, max_len + 1):
        terms[n].append(Numeral(n - 1))
        if n == 1:
            terms[1].extend(Var(v) for v in VARIABLES)
        for i in range(1, n):
            for t in terms[i]:
                if not isinstance(t, Numeral):
                    place(terms, Succ(t), n)
        for i in range(1, n - 1):
            for j in range(1, n - i):
                for a in terms[i]:
                    for b in terms[j]:
                        place(terms, Plus(a, b), n)
                        place(terms, Times(a, b), n)
                        if i + j + 4 == n:
                            terms[n].append(SubApp(a, b))
                        if i + j + 1 == n:
                            forms[n].append(Equals(a, b))
                        if i + j + 4 == n:
                            forms[n].append(ProofPred(a, b))
                for a in forms[i]:
                    for b in forms[j]:
                        for op in (And, Or, Implies, Iff):
                            place(forms, op(a, b), n)
        for i in range(1, n):
            for a in forms[i]:
                place(forms, Not(a), n)
                for v in VARIABLES:
                    place(forms, Exists(v, a), n)
                    place(forms, Forall(v, a), n)
    return terms, forms


def _proofs_within(max_len: int, scheme: CodecScheme) -> Iterator[list[Formula]]:
    """Every valid proof whose coded sequence has at most ``max_len`` symbols."""
    _, forms = _terms_and_formulas(max_len)
    axioms = [(f, n) for n in range(1, max_len + 1) for f in forms[n]
              if is_axiom(f, scheme) is not None]

    def extend(lines: list, used: int):
        room = max_len - used - (1 if lines else 0)
        seen = set(lines)
        cands = {f: n for f, n in axioms if n <= room}
        derived = [g.right for g in lines if type(g) is Implies and g.left in seen]
        derived += [Forall(v, g) for g in lines for v in VARIABLES]
        for f in derived:
            if f not in cands:
                cands[f] = symbol_count(f)
        for f, n in cands.items():
            if n <= room:
                new = lines + [f]
                yield new
                yield from extend(new, used + n + (1 if lines else 0))

    yield from extend([], 0)


def enumerate_provable(max_code: int, scheme: CodecScheme = DEFAULT_SCHEME) -> list[ProvablePair]:
    """All ``(r, s)`` with ``r <= max_code`` and ``P(r, s)``, ascending in ``r``.

    Proofs are generated from axiom instances, modus ponens and
    generalization rather than by scanning every ``r``; a code with ``L``
    digits spells exactly ``L`` symbols, which bounds the search.
    """
    if scheme.kind != POSITIONAL:
        raise UnsupportedScheme("enumeration needs a positional scheme")
    if max_code < 1:
        return []
    max_len = digit_count(max_code, scheme.base)
    if max_len > scheme.cap_digits:
        raise CapExceeded(numbering.SizeReport(max_len, max_len, False))
    pairs = set()
    for lines in _proofs_within(max_len, scheme):
        r = numbering.encode_proof(lines, scheme)
        if r <= max_code:
            pairs.add(ProvablePair(r, numbering.encode(lines[-1], scheme)))
    return sorted(pairs)


def classify(f: Formula, max_code: int, scheme: CodecScheme = DEFAULT_SCHEME) -> str:
    """``theorem``, ``antitheorem`` or ``unknown`` judging by proofs up to ``max_code``."""
    proved = {p.s for p in enumerate_provable(max_code, scheme)}
    if numbering.encode(f, scheme) in proved:
        return "theorem"
    if numbering.encode(Not(f), scheme) in proved:
        return "antitheorem"
    return "unknown"
