"""Command-line front end.

Every command is a thin adapter over the library. Output is plain text, one
datum per line. Exit status is 0 on success, 1 on a domain error (the
diagnostic starts with the error case name) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import diagonal, numbering, proofsys
from .errors import FormulaSyntaxError, GodelError
from .numbering import CodecScheme
from .syntax import (
    DEFAULT_THRESHOLD, free_vars, parse, parse_term, render, render_symbols, symbol_count,
    to_symbols,
)

COMMANDS = ("parse", "encode", "decode", "sub", "numeral", "size", "check-proof",
            "prove-pairs", "diagonalize", "goedel", "literal", "certificate", "gamma")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _scheme(args) -> CodecScheme:
    return numbering.PRIME_SCHEME if args.scheme == "prime" else numbering.DEFAULT_SCHEME


def _formula_or_term(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        try:
            return parse_term(text)
        except FormulaSyntaxError:
            raise exc from None


def _read_lines(path: str) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return [ln for ln in text.splitlines() if ln.strip()]


class _Usage(Exception):
    pass


def _fixed_point_lines(res: diagonal.FixedPointResult, scheme, materialize: bool,
                       threshold: int) -> list[str]:
    rep = res.alpha_code_report
    lines = [
        f"n={res.n}",
        f"alpha={render(res.alpha, threshold)}",
        f"alpha_symbols={rep.symbol_count}",
        f"alpha_digits={'?' if rep.digit_length is None else rep.digit_length}",
        f"materializable={_bool(rep.materializable)}",
        f"fixed_point={'pass' if res.fixed_point else 'fail'}",
    ]
    if scheme.kind == numbering.POSITIONAL:
        cert = diagonal.self_numeral_certificate(res.alpha, scheme)
        lines.append(f"certificate={cert.conclusion.short}")
    if materialize:
        lines.append(f"alpha_code={numbering.encode(res.alpha, scheme)}")
    return lines


def cmd_parse(args, scheme):
    return [render(parse(args.text), args.threshold)]


def cmd_encode(args, scheme):
    return [str(numbering.encode(_formula_or_term(args.text), scheme))]


def cmd_decode(args, scheme):
    return [render_symbols(numbering.decode(args.code, scheme), args.threshold)]


def cmd_sub(args, scheme):
    return [str(numbering.sub(args.y, args.var, args.j, scheme))]


def cmd_numeral(args, scheme):
    t = numbering.numeral_of(args.n)
    return [render(t, args.threshold), f"symbols={symbol_count(t)}"]


def cmd_size(args, scheme):
    return [str(numbering.encode_size(to_symbols(_formula_or_term(args.text)), scheme))]


def cmd_check_proof(args, scheme):
    lines = [parse(ln) for ln in _read_lines(args.file)]
    return [str(proofsys.check_proof(lines, scheme))]


def cmd_prove_pairs(args, scheme):
    return [f"{p.r} {p.s}" for p in proofsys.enumerate_provable(args.max_code, scheme)]


def cmd_diagonalize(args, scheme):
    d = parse(args.text)
    var = args.var
    if var is None:
        fv = sorted(free_vars(d))
        var = fv[0] if len(fv) == 1 else ""
    res = diagonal.diagonalize(d, var, scheme)
    return _fixed_point_lines(res, scheme, args.materialize, args.threshold)


def cmd_goedel(args, scheme):
    res = diagonal.goedel_sentence(scheme)
    return _fixed_point_lines(res, scheme, args.materialize, args.threshold)


def cmd_literal(args, scheme):
    rep = diagonal.literal_pipeline(args.reading, scheme)
    size = rep.sub_report
    out = [
        f"reading={rep.reading.value}",
        f"variable={rep.variable}",
        f"formula={render(rep.open_formula, args.threshold)}",
        f"n={rep.n}",
        f"alpha_symbols={size.symbol_count}",
        f"alpha_digits={'?' if size.digit_length is None else size.digit_length}",
        f"materializable={_bool(size.materializable)}",
        f"fixed_point={'pass' if rep.fixed_point else 'fail'}",
        f"certificate={rep.certificate.conclusion.short}",
    ]
    if rep.impossible_step:
        out.append(f"impossible_step={rep.impossible_step}")
    if args.materialize:
        out.append(f"alpha_code={numbering.encode(rep.instance, scheme)}")
    return out


def cmd_certificate(args, scheme):
    cert = diagonal.self_numeral_certificate(parse(args.text), scheme)
    numeral = "?" if cert.numeral_symbols is None else cert.numeral_symbols
    return [f"formula_symbols={cert.formula_symbols}",
            f"numeral_symbols={numeral}",
            f"certificate={cert.conclusion.short}"]


def cmd_gamma(args, scheme):
    S = [parse(t) for t in args.s]
    if args.s_file:
        S += [parse(ln) for ln in _read_lines(args.s_file)]
    Z = parse(args.z)
    if args.table:
        source = S if S else diagonal.numeral_generator()
        rows = diagonal.gamma_divergence(iter(source), args.k, scheme, Z=Z)
        return [f"{k} {count}" for k, count in rows]
    if not S:
        raise _Usage("gamma needs --s or --s-file unless --table is given")
    g = diagonal.gamma_prefix(args.k, S, Z, scheme)
    return [str(g.report)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", choices=("positional", "prime"), default="positional")
    common.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD,
                        help="numerals longer than this print as N[k]")

    ap = argparse.ArgumentParser(prog="godelkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "print the canonical form of a formula").add_argument("text")
    add("encode", cmd_encode, "Gödel number of a formula or term").add_argument("text")
    add("decode", cmd_decode, "symbols named by a code").add_argument("code", type=int)
    p = add("sub", cmd_sub, "code of the substitution instance")
    p.add_argument("y", type=int)
    p.add_argument("var")
    p.add_argument("j", type=int)
    add("numeral", cmd_numeral, "unary numeral of a number").add_argument("n", type=int)
    add("size", cmd_size, "exact symbol and digit counts").add_argument("text")
    add("check-proof", cmd_check_proof, "check a proof file").add_argument("file")
    add("prove-pairs", cmd_prove_pairs, "list provable (r, s) pairs").add_argument(
        "max_code", type=int)
    p = add("diagonalize", cmd_diagonalize, "fixed point of a one-variable formula")
    p.add_argument("text")
    p.add_argument("--var")
    p.add_argument("--materialize", action="store_true")
    p = add("goedel", cmd_goedel, "fixed point of Ar:~P(r,s)")
    p.add_argument("--materialize", action="store_true")
    p = add("literal", cmd_literal, "literal self-naming construction report")
    p.add_argument("--reading", choices=[r.value for r in diagonal.Reading], default="z-free")
    p.add_argument("--materialize", action="store_true")
    add("certificate", cmd_certificate, "self-numeral size certificate").add_argument("text")
    p = add("gamma", cmd_gamma, "size of a gamma prefix")
    p.add_argument("k", type=int)
    p.add_argument("--s", action="append", default=[], metavar="FORMULA")
    p.add_argument("--s-file")
    p.add_argument("--z", default="z=0")
    p.add_argument("--table", action="store_true",
                   help="print 'k symbols' rows for 1..k (default members z=N[i])")
    return ap


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines = args.func(args, _scheme(args))
    except _Usage as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except GodelError as exc:
        print(f"{exc.case}: {exc}", file=err)
        return 1
    for line in lines:
        print(line, file=out)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
