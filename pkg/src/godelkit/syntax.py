"""Object language of first-order arithmetic.

Terms and formulas are immutable trees. Numerals are stored run-length
compressed: ``Numeral(k)`` stands for ``k`` successor symbols followed by
``0`` and is never expanded. ``Succ`` applied to a numeral folds into a
bigger numeral, so every tree has a single canonical shape and
``parse(render(f)) == f`` holds structurally.

Concrete ASCII grammar::

    0  s<term>  N[<decimal>]  +  *  =  ~  &  |  ->  <->
    E<var>:  A<var>:  P(<term>,<term>)  sub(<term>,<term>)  ( )

The colon after a quantified variable is optional sugar and is not an
alphabet symbol. A text ``s`` is the successor when a term follows it and the
variable ``s`` otherwise.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import FormulaSyntaxError, OpenTermError


class Sym(enum.IntEnum):
    """Alphabet symbols; the values are the default symbol codes."""

    ZERO = 1
    SUCC = 2
    PLUS = 3
    TIMES = 4
    EQ = 5
    LPAREN = 6
    RPAREN = 7
    COMMA = 8
    NOT = 9
    AND = 10
    OR = 11
    IMPLIES = 12
    IFF = 13
    EXISTS = 14
    FORALL = 15
    P = 16
    SUB = 17
    X = 18
    Y = 19
    Z = 20
    R = 21
    W = 22
    U = 23
    V = 24
    S = 25  # the variable s, distinct from the successor symbol
    SEP = 26  # proof-line separator, never inside a formula


VARIABLES = ("x", "y", "z", "r", "w", "u", "v", "s")
VAR_SYM = {name: Sym[name.upper()] for name in VARIABLES}
SYM_VAR = {sym: name for name, sym in VAR_SYM.items()}

SYM_TEXT = {
    Sym.ZERO: "0", Sym.SUCC: "s", Sym.PLUS: "+", Sym.TIMES: "*", Sym.EQ: "=",
    Sym.LPAREN: "(", Sym.RPAREN: ")", Sym.COMMA: ",", Sym.NOT: "~",
    Sym.AND: "&", Sym.OR: "|", Sym.IMPLIES: "->", Sym.IFF: "<->",
    Sym.EXISTS: "E", Sym.FORALL: "A", Sym.P: "P", Sym.SUB: "sub",
    Sym.SEP: "\n",
}
SYM_TEXT.update({sym: name for sym, name in SYM_VAR.items()})

DEFAULT_THRESHOLD = 10


@dataclass(frozen=True)
class Run:
    """``count`` successor symbols followed by ``0`` (``count + 1`` symbols)."""

    count: int

    def __len__(self) -> int:
        return self.count + 1


Item = Union[Sym, Run]
SymbolSeq = tuple  # tuple[Item, ...]


def seq_length(seq: Iterable[Item]) -> int:
    """Number of alphabet symbols in ``seq`` with runs counted expanded."""
    return sum(it.count + 1 if isinstance(it, Run) else 1 for it in seq)


def normalize(seq: Iterable[Item]) -> SymbolSeq:
    """Fold every ``s...s`` prefix and bare ``0`` into maximal runs."""
    out: list[Item] = []
    pending = 0
    for it in seq:
        if it is Sym.SUCC:
            pending += 1
            continue
        if isinstance(it, Run) or it is Sym.ZERO:
            k = it.count if isinstance(it, Run) else 0
            out.append(Run(k + pending))
        else:
            out.extend([Sym.SUCC] * pending)
            out.append(it)
        pending = 0
    out.extend([Sym.SUCC] * pending)
    return tuple(out)


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if self.name not in VAR_SYM:
            raise ValueError(f"unknown variable {self.name!r}")


@dataclass(frozen=True)
class Numeral:
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("numeral count must be non-negative")


ZERO = Numeral(0)


@dataclass(frozen=True)
class Succ:
    arg: "Term"

    def __new__(cls, arg=None):
        # s applied to a numeral is a longer numeral
        if isinstance(arg, Numeral):
            return Numeral(arg.count + 1)
        return super().__new__(cls)


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class SubApp:
    """Object-language ``sub(a, b)``."""

    left: "Term"
    right: "Term"


Term = Union[Var, Numeral, Succ, Plus, Times, SubApp]


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Equals:
    left: Term
    right: Term


@dataclass(frozen=True)
class ProofPred:
    """Atom ``P(r, s)``: ``r`` codes a proof of the formula coded by ``s``."""

    proof: Term
    theorem: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Equals, ProofPred, Not, And, Or, Implies, Iff, Exists, Forall]

TERM_TYPES = (Var, Numeral, Succ, Plus, Times, SubApp)
BINARY_TERMS = (Plus, Times, SubApp)
BINARY_FORMULAS = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)
ATOMS = (Equals, ProofPred)

_TERM_PREC = {Plus: 1, Times: 2, Succ: 3}
_FORMULA_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Exists: 5, Forall: 5}
_BINARY_SYM = {
    Plus: Sym.PLUS, Times: Sym.TIMES,
    And: Sym.AND, Or: Sym.OR, Implies: Sym.IMPLIES, Iff: Sym.IFF,
}


def _tprec(t) -> int:
    return _TERM_PREC.get(type(t), 4)


def _fprec(f) -> int:
    return _FORMULA_PREC.get(type(f), 6)


def big_and(conjuncts: Sequence[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty list."""
    acc = conjuncts[0]
    for c in conjuncts[1:]:
        acc = And(acc, c)
    return acc


# ---------------------------------------------------------------- printing


def _emit(node, out: list) -> None:
    tp = type(node)
    if tp is Numeral:
        out.append(Run(node.count))
    elif tp is Var:
        out.append(VAR_SYM[node.name])
    elif tp is Succ:
        out.append(Sym.SUCC)
        _emit_wrapped(node.arg, _tprec(node.arg) < 3, out)
    elif tp is Plus or tp is Times:
        p = _tprec(node)
        _emit_wrapped(node.left, _tprec(node.left) < p, out)
        out.append(_BINARY_SYM[tp])
        _emit_wrapped(node.right, _tprec(node.right) <= p, out)
    elif tp is SubApp or tp is ProofPred:
        out.append(Sym.SUB if tp is SubApp else Sym.P)
        out.append(Sym.LPAREN)
        a, b = (node.left, node.right) if tp is SubApp else (node.proof, node.theorem)
        _emit(a, out)
        out.append(Sym.COMMA)
        _emit(b, out)
        out.append(Sym.RPAREN)
    elif tp is Equals:
        _emit(node.left, out)
        out.append(Sym.EQ)
        _emit(node.right, out)
    elif tp is Not or tp in QUANTIFIERS:
        if tp is Not:
            out.append(Sym.NOT)
        else:
            out.append(Sym.EXISTS if tp is Exists else Sym.FORALL)
            out.append(VAR_SYM[node.var])
        body = node.body
        _emit_wrapped(body, _fprec(body) < 5 or type(body) is Equals, out)
    elif tp is And or tp is Or:
        # walk the left spine iteratively; long conjunctions nest deeply
        p = _fprec(node)
        spine = []
        while type(node) is tp:
            spine.append(node.right)
            node = node.left
        _emit_wrapped(node, _fprec(node) < p, out)
        for right in reversed(spine):
            out.append(_BINARY_SYM[tp])
            _emit_wrapped(right, _fprec(right) <= p, out)
    elif tp is Implies or tp is Iff:
        p = _fprec(node)
        _emit_wrapped(node.left, _fprec(node.left) <= p, out)
        out.append(_BINARY_SYM[tp])
        _emit_wrapped(node.right, _fprec(node.right) <= p, out)
    else:
        raise TypeError(f"not a syntax node: {node!r}")


def _emit_wrapped(node, wrap: bool, out: list) -> None:
    if wrap:
        out.append(Sym.LPAREN)
        _emit(node, out)
        out.append(Sym.RPAREN)
    else:
        _emit(node, out)


def to_symbols(node) -> SymbolSeq:
    """Canonical symbol sequence of a term or formula, numerals compressed."""
    out: list[Item] = []
    _emit(node, out)
    return tuple(out)


def render_symbols(seq: Iterable[Item], threshold: int = DEFAULT_THRESHOLD) -> str:
    parts = []
    for it in seq:
        if isinstance(it, Run):
            parts.append("s" * it.count + "0" if it.count <= threshold else f"N[{it.count}]")
        else:
            parts.append(SYM_TEXT[it])
    return "".join(parts)


def render(node, threshold: int = DEFAULT_THRESHOLD) -> str:
    """ASCII text of ``node``; numerals longer than ``threshold`` print as ``N[k]``."""
    return render_symbols(to_symbols(node), threshold)


def symbol_count(node) -> int:
    return seq_length(to_symbols(node))


# ---------------------------------------------------------------- lexing

_COLON = "colon"
_END = "end"

_SINGLE = {
    "+": Sym.PLUS, "*": Sym.TIMES, "=": Sym.EQ, "(": Sym.LPAREN, ")": Sym.RPAREN,
    ",": Sym.COMMA, "~": Sym.NOT, "&": Sym.AND, "|": Sym.OR, "E": Sym.EXISTS,
    "A": Sym.FORALL, "P": Sym.P,
    "·": Sym.TIMES, "¬": Sym.NOT, "∧": Sym.AND, "∨": Sym.OR, "→": Sym.IMPLIES,
    "↔": Sym.IFF, "∃": Sym.EXISTS, "∀": Sym.FORALL,
}
_NUMERAL_RE = re.compile(r"N\[\s*(\d+)\s*\]")


def tokenize(text: str) -> tuple[list, list[int]]:
    """Split ``text`` into items (plus colon markers) and their offsets."""
    items: list = []
    offsets: list[int] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c == "0":
            tok, i = Run(0), i + 1
        elif c == "N":
            m = _NUMERAL_RE.match(text, i)
            if not m:
                raise FormulaSyntaxError(i, {"N[<decimal>]"}, c)
            tok, i = Run(int(m.group(1))), m.end()
        elif text.startswith("sub", i):
            tok, i = Sym.SUB, i + 3
        elif c == "s":
            tok, i = Sym.SUCC, i + 1
        elif text.startswith("<->", i):
            tok, i = Sym.IFF, i + 3
        elif text.startswith("->", i):
            tok, i = Sym.IMPLIES, i + 2
        elif c == ":":
            tok, i = _COLON, i + 1
        elif c in _SINGLE:
            tok, i = _SINGLE[c], i + 1
        elif c in VAR_SYM:
            tok, i = VAR_SYM[c], i + 1
        else:
            raise FormulaSyntaxError(i, {"symbol"}, c)
        # s followed by a numeral is always a successor
        if isinstance(tok, Run):
            while items and items[-1] is Sym.SUCC and not (
                len(items) > 1 and items[-2] in (Sym.EXISTS, Sym.FORALL)
            ):
                items.pop()
                start = offsets.pop()
                tok = Run(tok.count + 1)
        items.append(tok)
        offsets.append(start)
    return items, offsets


# ---------------------------------------------------------------- parsing


class _Fail(Exception):
    pass


_TERM_START = {Sym.SUCC, Sym.LPAREN, Sym.SUB, *VAR_SYM.values()}


class Parser:
    """Recursive descent over an item list.

    ``text_mode`` enables the ambiguous reading of ``s``; symbol sequences
    decoded from codes distinguish the successor from the variable ``s``.
    Every variable occurrence is recorded as ``(item_index, name, is_free)``.
    """

    def __init__(self, items: Sequence, offsets: Sequence[int] | None = None,
                 end_offset: int | None = None, text_mode: bool = False):
        self.items = list(items)
        self.offsets = list(offsets) if offsets is not None else list(range(len(self.items)))
        self.end_offset = end_offset if end_offset is not None else len(self.items)
        self.text_mode = text_mode
        self.pos = 0
        self.bound: list[str] = []
        self.occurrences: list[tuple[int, str, bool]] = []
        self._far = (-1, set(), "")
        self._memo: dict[int, object] = {}

    # helpers
    def peek(self, k: int = 0):
        i = self.pos + k
        return self.items[i] if i < len(self.items) else _END

    def _offset(self, i: int) -> int:
        return self.offsets[i] if i < len(self.offsets) else self.end_offset

    def fail(self, *expected: str):
        off = self._offset(self.pos)
        tok = self.peek()
        found = "" if tok is _END else _describe(tok)
        if off > self._far[0]:
            self._far = (off, set(expected), found)
        elif off == self._far[0]:
            self._far[1].update(expected)
        raise _Fail

    def expect(self, sym: Sym):
        if self.peek() is not sym:
            self.fail(SYM_TEXT[sym].strip() or "separator")
        self.pos += 1

    def syntax_error(self) -> FormulaSyntaxError:
        off, exp, found = self._far
        return FormulaSyntaxError(off, exp, found)

    # entry points
    def parse_formula(self) -> Formula:
        try:
            f = self.formula()
            if self.peek() is not _END:
                self.fail("end of input", "&", "|", "->", "<->")
        except _Fail:
            raise self.syntax_error() from None
        return f

    def parse_term(self) -> Term:
        try:
            t = self.term()
            if self.peek() is not _END:
                self.fail("end of input", "+", "*")
        except _Fail:
            raise self.syntax_error() from None
        return t

    # formulas
    def formula(self) -> Formula:
        left = self.implication()
        if self.peek() is Sym.IFF:
            self.pos += 1
            return Iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() is Sym.IMPLIES:
            self.pos += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() is Sym.OR:
            self.pos += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek() is Sym.AND:
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is Sym.NOT:
            self.pos += 1
            return Not(self.unary())
        if tok is Sym.EXISTS or tok is Sym.FORALL:
            self.pos += 1
            var = self.variable_name(binder=True)
            if self.peek() == _COLON:
                self.pos += 1
            self.bound.append(var)
            try:
                body = self.unary()
            finally:
                self.bound.pop()
            return (Exists if tok is Sym.EXISTS else Forall)(var, body)
        if tok is Sym.LPAREN:
            return self.parenthesized()
        return self.atom()

    def parenthesized(self) -> Formula:
        start = self.pos
        n_occ = len(self.occurrences)
        key = start
        hit = self._memo.get(key)
        if hit is None:
            try:
                self.pos += 1
                f = self.formula()
                self.expect(Sym.RPAREN)
                hit = (f, self.pos, self.occurrences[n_occ:], tuple(self.bound))
            except _Fail:
                hit = False
            self._memo[key] = hit
        if hit and hit[3] == tuple(self.bound):
            f, self.pos, occ, _ = hit
            del self.occurrences[n_occ:]
            self.occurrences.extend(occ)
            return f
        # not a parenthesized formula: maybe a parenthesized term in an atom
        self.pos = start
        del self.occurrences[n_occ:]
        return self.atom()

    def atom(self) -> Formula:
        if self.peek() is Sym.P:
            self.pos += 1
            self.expect(Sym.LPAREN)
            a = self.term()
            self.expect(Sym.COMMA)
            b = self.term()
            self.expect(Sym.RPAREN)
            return ProofPred(a, b)
        left = self.term(formula_start=True)
        self.expect(Sym.EQ)
        return Equals(left, self.term())

    # terms
    def term(self, formula_start: bool = False) -> Term:
        left = self.product(formula_start)
        while self.peek() is Sym.PLUS:
            self.pos += 1
            left = Plus(left, self.product())
        return left

    def product(self, formula_start: bool = False) -> Term:
        left = self.prefixed(formula_start)
        while self.peek() is Sym.TIMES:
            self.pos += 1
            left = Times(left, self.prefixed())
        return left

    def prefixed(self, formula_start: bool = False) -> Term:
        depth = 0
        while self.peek() is Sym.SUCC and self._succ_here():
            self.pos += 1
            depth += 1
        t = self.primary_term(formula_start and depth == 0)
        for _ in range(depth):
            t = Succ(t)
        return t

    def _succ_here(self) -> bool:
        if not self.text_mode:
            return True
        nxt = self.peek(1)
        return isinstance(nxt, Run) or nxt in _TERM_START

    def primary_term(self, formula_start: bool = False) -> Term:
        tok = self.peek()
        if isinstance(tok, Run):
            self.pos += 1
            return Numeral(tok.count)
        if tok is Sym.SUB:
            self.pos += 1
            self.expect(Sym.LPAREN)
            a = self.term()
            self.expect(Sym.COMMA)
            b = self.term()
            self.expect(Sym.RPAREN)
            return SubApp(a, b)
        if tok is Sym.LPAREN:
            self.pos += 1
            t = self.term()
            self.expect(Sym.RPAREN)
            return t
        if tok in SYM_VAR or (self.text_mode and tok is Sym.SUCC):
            return Var(self.variable_name())
        if formula_start:
            self.fail("0", "s", "N[", "(", "~", "E", "A", "P", "sub", "variable")
        self.fail("0", "s", "N[", "(", "sub", "variable")

    def variable_name(self, binder: bool = False) -> str:
        tok = self.peek()
        if tok in SYM_VAR:
            name = SYM_VAR[tok]
        elif self.text_mode and tok is Sym.SUCC:
            name = "s"
        else:
            self.fail("variable")
        if not binder:
            self.occurrences.append((self.pos, name, name not in self.bound))
        self.pos += 1
        return name


def _describe(tok) -> str:
    if isinstance(tok, Run):
        return f"N[{tok.count}]"
    if tok == _COLON:
        return ":"
    return SYM_TEXT[tok].strip() or "separator"


def parse(text: str) -> Formula:
    """Parse ASCII formula text into its tree.

    Raises FormulaSyntaxError with the character offset and expected tokens.
    """
    items, offsets = tokenize(text)
    return Parser(items, offsets, len(text), text_mode=True).parse_formula()


def parse_term(text: str) -> Term:
    items, offsets = tokenize(text)
    return Parser(items, offsets, len(text), text_mode=True).parse_term()


def parse_symbols(seq: Sequence[Item]) -> Formula:
    """Parse a decoded symbol sequence (strict: no text ambiguity)."""
    return Parser(seq).parse_formula()


def parse_symbols_with_occurrences(seq: Sequence[Item]):
    p = Parser(seq)
    f = p.parse_formula()
    return f, p.occurrences


# ---------------------------------------------------------------- analysis


def children(node) -> tuple:
    tp = type(node)
    if tp is Var or tp is Numeral:
        return ()
    if tp is Succ:
        return (node.arg,)
    if tp is Not or tp in QUANTIFIERS:
        return (node.body,)
    if tp is ProofPred:
        return (node.proof, node.theorem)
    return (node.left, node.right)


def rebuild(node, kids: Sequence):
    tp = type(node)
    if tp is Succ:
        return Succ(kids[0])
    if tp is Not:
        return Not(kids[0])
    if tp in QUANTIFIERS:
        return tp(node.var, kids[0])
    return tp(*kids)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for c in children(t):
        out |= term_vars(c)
    return out


def free_vars(node) -> set[str]:
    """Variables with at least one free occurrence; quantifiers bind."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, QUANTIFIERS):
        return free_vars(node.body) - {node.var}
    out: set[str] = set()
    for c in children(node):
        out |= free_vars(c)
    return out


def all_vars(node) -> set[str]:
    """Every variable appearing anywhere, bound or free."""
    if isinstance(node, Var):
        return {node.name}
    out = {node.var} if isinstance(node, QUANTIFIERS) else set()
    for c in children(node):
        out |= all_vars(c)
    return out


def replace_free(node, v: str, t: Term):
    """Replace free ``v`` by ``t`` without any capture check."""
    if isinstance(node, Var):
        return t if node.name == v else node
    if isinstance(node, Numeral):
        return node
    if isinstance(node, QUANTIFIERS) and node.var == v:
        return node
    kids = children(node)
    new = tuple(replace_free(c, v, t) for c in kids)
    if all(a is b for a, b in zip(kids, new)):
        return node
    return rebuild(node, new)


def substitute_ast(f, v: str, t: Term):
    """Replace every free occurrence of ``v`` in ``f`` by the closed term ``t``."""
    if term_vars(t):
        raise OpenTermError(f"substituted term {render(t)!r} has variables {sorted(term_vars(t))}")
    return replace_free(f, v, t)


def _unsucc(t):
    if isinstance(t, Succ):
        return t.arg
    if isinstance(t, Numeral) and t.count > 0:
        return Numeral(t.count - 1)
    return None


_NO_BINDING = object()


def match_instance(pattern, v: str, target):
    """Find a term ``t`` with ``pattern[v:=t] == target``.

    Returns the term, ``_NO_BINDING`` (exported as ``ANY_TERM``) when ``v`` has
    no free occurrence and the two already agree, or ``None`` when no such
    term exists.
    """
    binding = [_NO_BINDING]

    def walk(p, q, bound: frozenset) -> bool:
        if isinstance(p, Var) and p.name == v and v not in bound:
            if binding[0] is _NO_BINDING:
                binding[0] = q
                return True
            return binding[0] == q
        if p == q and v not in (free_vars(p) - bound):
            return True
        if type(p) is type(q) and not isinstance(p, (Var, Numeral)):
            if isinstance(p, QUANTIFIERS):
                if p.var != q.var:
                    return False
                return walk(p.body, q.body, bound | {p.var})
            return all(walk(a, b, bound) for a, b in zip(children(p), children(q)))
        if isinstance(p, Succ):
            inner = _unsucc(q)
            return inner is not None and walk(p.arg, inner, bound)
        return False

    if not walk(pattern, target, frozenset()):
        return None
    return binding[0]


ANY_TERM = _NO_BINDING


def iter_subterms(node) -> Iterator:
    yield node
    for c in children(node):
        yield from iter_subterms(c)
