"""Gödel numbering: codecs, numerals, the code-level ``sub`` and size calculus.

Two schemes are provided. ``positional`` reads the symbol codes of a
sequence as the digits of a base-``base`` number, most significant first.
``prime`` forms the product of the first primes raised to the symbol codes.

Run-compressed numerals are encoded arithmetically: the digits of ``s^k 0``
form ``c_s * (B^k - 1) / (B - 1) * B + c_0``. Sizes of codes far beyond the
materialization cap are computed exactly from run lengths alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    CapExceeded, EmptySequence, FormulaSyntaxError, NotDecodable, UnsupportedScheme,
    VariableNotFree,
)
from .syntax import (
    Formula, Item, Numeral, Run, Sym, SymbolSeq, Term, normalize,
    parse_symbols_with_occurrences, seq_length, substitute_ast, to_symbols,
)

POSITIONAL = "positional"
PRIME = "prime"

DEFAULT_TABLE = tuple((sym, int(sym)) for sym in Sym)
DEFAULT_CAP_BITS = 2 ** 20
DEFAULT_PRIME_CAP = 64


@dataclass(frozen=True)
class CodecScheme:
    kind: str = POSITIONAL
    base: int = 32
    table: tuple = DEFAULT_TABLE
    cap_bits: int = DEFAULT_CAP_BITS
    prime_cap: int = DEFAULT_PRIME_CAP
    _code: dict = field(init=False, repr=False, compare=False, hash=False)
    _sym: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in (POSITIONAL, PRIME):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        code = dict(self.table)
        if set(code) != set(Sym):
            raise ValueError("table must assign every symbol")
        if len(set(code.values())) != len(code) or min(code.values()) < 1:
            raise ValueError("table must be injective and avoid code 0")
        if self.kind == POSITIONAL and self.base <= max(code.values()):
            raise ValueError("base must exceed every symbol code")
        object.__setattr__(self, "_code", code)
        object.__setattr__(self, "_sym", {c: s for s, c in code.items()})

    @classmethod
    def positional(cls, base: int = 32, **kw) -> "CodecScheme":
        return cls(POSITIONAL, base, **kw)

    @classmethod
    def prime_power(cls, **kw) -> "CodecScheme":
        return cls(PRIME, **kw)

    def code(self, sym: Sym) -> int:
        return self._code[sym]

    def symbol(self, code: int) -> Sym | None:
        return self._sym.get(code)

    @property
    def bits_per_digit(self) -> int:
        return (self.base - 1).bit_length()

    @property
    def cap_digits(self) -> int:
        """Largest digit count whose code is still materialized."""
        return self.cap_bits // self.bits_per_digit

    def require_positional(self, what: str) -> None:
        if self.kind != POSITIONAL:
            raise UnsupportedScheme(f"{what} needs a positional scheme")


DEFAULT_SCHEME = CodecScheme.positional()
PRIME_SCHEME = CodecScheme.prime_power()


@dataclass(frozen=True)
class SizeReport:
    symbol_count: int
    digit_length: int | None
    materializable: bool

    def __str__(self) -> str:
        digits = "?" if self.digit_length is None else self.digit_length
        return (f"symbols={self.symbol_count} digits={digits} "
                f"materializable={str(self.materializable).lower()}")


# ---------------------------------------------------------------- helpers


def _as_seq(obj) -> SymbolSeq:
    if isinstance(obj, tuple):
        return obj
    if isinstance(obj, list):
        return tuple(obj)
    return to_symbols(obj)


def _run_block(k: int, scheme: CodecScheme) -> int:
    """Value of the ``k + 1`` digits ``s^k 0``."""
    b = scheme.base
    return scheme.code(Sym.SUCC) * ((b ** k - 1) // (b - 1)) * b + scheme.code(Sym.ZERO)


def _run_block_mod(k: int, scheme: CodecScheme, m: int) -> int:
    b = scheme.base
    geo = (pow(b, k, m * (b - 1)) - 1) // (b - 1)
    return (scheme.code(Sym.SUCC) * geo * b + scheme.code(Sym.ZERO)) % m


@lru_cache(maxsize=None)
def first_primes(k: int) -> tuple[int, ...]:
    primes: list[int] = []
    n = 2
    while len(primes) < k:
        if all(n % p for p in primes if p * p <= n):
            primes.append(n)
        n += 1
    return tuple(primes)


def to_digits(n: int, base: int) -> list[int]:
    """Base-``base`` digits of ``n > 0``, most significant first."""
    if base & (base - 1) == 0:
        width = base.bit_length() - 1
        bits = bin(n)[2:]
        bits = "0" * (-len(bits) % width) + bits
        return [int(bits[i:i + width], 2) for i in range(0, len(bits), width)]
    if n < base ** 64:
        out = []
        while n:
            n, d = divmod(n, base)
            out.append(d)
        return out[::-1]
    # divide and conquer keeps huge conversions subquadratic
    half = (n.bit_length() // base.bit_length()) // 2
    hi, lo = divmod(n, base ** half)
    lo_digits = to_digits(lo, base) if lo else []
    return to_digits(hi, base) + [0] * (half - len(lo_digits)) + lo_digits


def digit_count(n: int, base: int) -> int:
    if n <= 0:
        return 0
    if base & (base - 1) == 0:
        width = base.bit_length() - 1
        return -(-n.bit_length() // width)
    return len(to_digits(n, base))


# ---------------------------------------------------------------- codecs


def size_of(seq: Iterable[Item], scheme: CodecScheme = DEFAULT_SCHEME) -> SizeReport:
    scheme.require_positional("size calculus")
    n = seq_length(seq)
    return SizeReport(n, n, n <= scheme.cap_digits)


def encode(seq, scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """Gödel number of a symbol sequence, term or formula.

    Raises EmptySequence for an empty sequence and CapExceeded (carrying the
    would-be SizeReport) when the code is too large to build.
    """
    seq = _as_seq(seq)
    if not seq:
        raise EmptySequence("the empty sequence has no code")
    length = seq_length(seq)
    if scheme.kind == PRIME:
        if length > scheme.prime_cap:
            raise CapExceeded(SizeReport(length, None, False),
                              f"{length} symbols exceed the prime-power cap of {scheme.prime_cap}")
        value = 1
        for p, sym in zip(first_primes(length), expand(seq)):
            value *= p ** scheme.code(sym)
        return value
    report = size_of(seq, scheme)
    if not report.materializable:
        raise CapExceeded(report)
    b = scheme.base
    value = 0
    for it in seq:
        if isinstance(it, Run):
            value = value * b ** (it.count + 1) + _run_block(it.count, scheme)
        else:
            value = value * b + scheme.code(it)
    return value


def code_residue(seq, modulus: int, scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """``encode(seq) % modulus`` without building the code."""
    scheme.require_positional("residues")
    b = scheme.base
    value = 0
    for it in _as_seq(seq):
        if isinstance(it, Run):
            value = (value * pow(b, it.count + 1, modulus)
                     + _run_block_mod(it.count, scheme, modulus)) % modulus
        else:
            value = (value * b + scheme.code(it)) % modulus
    return value


def expand(seq: Iterable[Item]) -> list[Sym]:
    out: list[Sym] = []
    for it in seq:
        if isinstance(it, Run):
            out.extend([Sym.SUCC] * it.count)
            out.append(Sym.ZERO)
        else:
            out.append(it)
    return out


def decode(n: int, scheme: CodecScheme = DEFAULT_SCHEME) -> SymbolSeq:
    """Symbol sequence named by ``n``, with maximal ``s...s0`` runs compressed."""
    if n < 1:
        raise NotDecodable(f"{n} is not a positive code")
    if scheme.kind == PRIME:
        syms = _decode_prime(n, scheme)
    else:
        syms = []
        for i, d in enumerate(to_digits(n, scheme.base)):
            sym = scheme.symbol(d)
            if sym is None:
                raise NotDecodable(f"digit {d} at position {i} is not a symbol code")
            syms.append(sym)
    return normalize(syms)


def _decode_prime(n: int, scheme: CodecScheme) -> list[Sym]:
    if n == 1:
        raise NotDecodable("1 codes the empty sequence")
    syms = []
    for i, p in enumerate(first_primes(scheme.prime_cap)):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e == 0:
            if n == 1:
                return syms
            raise NotDecodable(f"prime {p} is missing from the factorization")
        sym = scheme.symbol(e)
        if sym is None:
            raise NotDecodable(f"exponent {e} of prime {p} is not a symbol code")
        syms.append(sym)
        if n == 1:
            return syms
    raise NotDecodable(f"more than {scheme.prime_cap} prime factors")


def encode_size(f, scheme: CodecScheme = DEFAULT_SCHEME) -> SizeReport:
    """Exact symbol count and code length of ``f`` without building the code."""
    if scheme.kind != POSITIONAL:
        raise UnsupportedScheme("encode_size needs a positional scheme")
    return size_of(_as_seq(f), scheme)


def numeral_of(n: int) -> Term:
    return Numeral(n)


# ---------------------------------------------------------------- formulas from codes


def formula_from_seq(seq: Sequence[Item]):
    """Parse a decoded sequence, insisting it is the canonical spelling.

    Returns ``(formula, occurrences)``.
    """
    seq = tuple(seq)
    if any(it is Sym.SEP for it in seq):
        raise NotDecodable("a proof separator inside a formula")
    try:
        f, occ = parse_symbols_with_occurrences(seq)
    except FormulaSyntaxError as exc:
        raise NotDecodable(f"not a formula: {exc}") from None
    if to_symbols(f) != seq:
        raise NotDecodable("not the canonical spelling of a formula")
    return f, occ


def decode_formula(n: int, scheme: CodecScheme = DEFAULT_SCHEME) -> Formula:
    return formula_from_seq(decode(n, scheme))[0]


def _item_offsets(seq: Sequence[Item]) -> list[int]:
    offsets, pos = [], 0
    for it in seq:
        offsets.append(pos)
        pos += it.count + 1 if isinstance(it, Run) else 1
    return offsets


def _free_positions(seq, occurrences, var: str) -> list[int]:
    return [i for i, name, free in occurrences if name == var and free]


def sub_sequence(y: int, var: str, j: int, scheme: CodecScheme = DEFAULT_SCHEME) -> SymbolSeq:
    """Symbol sequence of ``sub(y, var, j)`` built by splicing, never materialized."""
    seq = decode(y, scheme)
    _, occ = formula_from_seq(seq)
    hits = set(_free_positions(seq, occ, var))
    if not hits:
        raise VariableNotFree(f"{var} has no free occurrence in the formula coded by {y}")
    return normalize(Run(j) if i in hits else it for i, it in enumerate(seq))


def _splice_plan(y: int, var: str, scheme: CodecScheme):
    seq = decode(y, scheme)
    f, occ = formula_from_seq(seq)
    hits = _free_positions(seq, occ, var)
    if not hits:
        raise VariableNotFree(f"{var} has no free occurrence in the formula coded by {y}")
    offsets = _item_offsets(seq)
    return f, seq_length(seq), [offsets[i] for i in hits]


def _splice(y: int, total: int, positions: list[int], j: int, scheme: CodecScheme,
            modulus: int | None = None) -> int:
    """Cut ``y`` into digit blocks around ``positions`` and insert ``s^j 0``."""
    b = scheme.base
    if modulus is None:
        power = lambda e: b ** e  # noqa: E731
        block = _run_block(j, scheme)
    else:
        power = lambda e: pow(b, e, modulus)  # noqa: E731
        block = _run_block_mod(j, scheme, modulus)
    value, prev = 0, 0
    for p in positions:
        width = p - prev
        if width:
            value = value * power(width) + (y // b ** (total - p)) % b ** width
        value = value * power(j + 1) + block
        prev = p + 1
    tail = total - prev
    if tail:
        value = value * power(tail) + y % b ** tail
    return value if modulus is None else value % modulus


def sub(y: int, var: str, j: int, scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """Code of the formula coded by ``y`` with free ``var`` replaced by the numeral ``j``.

    Under a positional scheme the result is assembled from digit blocks of
    ``y`` itself: the digits between free occurrences are cut out of ``y``
    arithmetically and the numeral block for ``j`` is inserted at each
    occurrence.
    """
    f, total, positions = _splice_plan(y, var, scheme)
    if scheme.kind == PRIME:
        return encode(substitute_ast(f, var, Numeral(j)), scheme)
    new_total = total + len(positions) * j
    if new_total > scheme.cap_digits:
        raise CapExceeded(SizeReport(new_total, new_total, False))
    return _splice(y, total, positions, j, scheme)


def sub_residue(y: int, var: str, j: int, modulus: int,
                scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """``sub(y, var, j) % modulus`` by the same digit splicing, for any ``j``."""
    scheme.require_positional("residues")
    _, total, positions = _splice_plan(y, var, scheme)
    return _splice(y, total, positions, j, scheme, modulus)


def sub_size(y: int, var: str, j: int, scheme: CodecScheme = DEFAULT_SCHEME) -> SizeReport:
    _, total, positions = _splice_plan(y, var, scheme)
    n = total + len(positions) * j
    if scheme.kind == PRIME:
        return SizeReport(n, None, n <= scheme.prime_cap)
    return SizeReport(n, n, n <= scheme.cap_digits)


# ---------------------------------------------------------------- proofs


def encode_proof(lines: Sequence[Formula], scheme: CodecScheme = DEFAULT_SCHEME) -> int:
    """Code of a proof: formula digit blocks joined by the separator (positional),
    or the product of ``p_i ** code(line_i)`` (prime power)."""
    if not lines:
        raise EmptySequence("a proof has at least one line")
    if scheme.kind == POSITIONAL:
        seq: list[Item] = []
        for i, f in enumerate(lines):
            if i:
                seq.append(Sym.SEP)
            seq.extend(to_symbols(f))
        return encode(tuple(seq), scheme)
    codes = [encode(f, scheme) for f in lines]
    primes = first_primes(len(codes))
    bits = sum(c * math.log2(p) for c, p in zip(codes, primes))
    if bits > scheme.cap_bits:
        raise CapExceeded(SizeReport(sum(seq_length(to_symbols(f)) for f in lines), None, False))
    value = 1
    for c, p in zip(codes, primes):
        value *= p ** c
    return value


def proof_lines_from_seq(seq: Sequence[Item]) -> list[Formula]:
    lines, block = [], []
    for it in list(seq) + [Sym.SEP]:
        if it is Sym.SEP:
            if not block:
                raise NotDecodable("empty proof line")
            lines.append(formula_from_seq(block)[0])
            block = []
        else:
            block.append(it)
    return lines


def decode_proof(r: int, scheme: CodecScheme = DEFAULT_SCHEME) -> list[Formula]:
    if r < 1:
        raise NotDecodable(f"{r} is not a positive code")
    if scheme.kind == POSITIONAL:
        return proof_lines_from_seq(decode(r, scheme))
    lines = []
    n = r
    for p in first_primes(scheme.prime_cap):
        if n == 1:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e == 0:
            raise NotDecodable(f"prime {p} is missing from the proof code")
        lines.append(decode_formula(e, scheme))
    if n != 1 or not lines:
        raise NotDecodable("not a proof code")
    return lines
