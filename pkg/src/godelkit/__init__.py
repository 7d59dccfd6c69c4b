"""Gödel numbering, proof checking and diagonal fixed points for first-order arithmetic."""

from .diagonal import (
    Certificate, FixedPointResult, GammaPrefix, diagonalize, eval_sub_term, gamma_divergence,
    gamma_prefix, goedel_sentence, literal_pipeline, self_numeral_certificate,
)
from .errors import (
    ArityError, BoundsError, CapExceeded, EmptySequence, FormulaSyntaxError, GodelError,
    NotDecodable, OpenTermError, UnsupportedScheme, VariableNotFree,
)
from .numbering import (
    DEFAULT_SCHEME, PRIME_SCHEME, CodecScheme, SizeReport, decode, encode, encode_size,
    numeral_of, sub,
)
from .proofsys import P, ProvablePair, check_proof, enumerate_provable, is_axiom
from .syntax import free_vars, parse, render, substitute_ast, symbol_count

__all__ = [
    "ArityError", "BoundsError", "CapExceeded", "Certificate", "CodecScheme", "DEFAULT_SCHEME",
    "EmptySequence", "FixedPointResult", "FormulaSyntaxError", "GammaPrefix", "GodelError",
    "NotDecodable", "OpenTermError", "P", "PRIME_SCHEME", "ProvablePair", "SizeReport",
    "UnsupportedScheme", "VariableNotFree", "check_proof", "decode", "diagonalize", "encode",
    "encode_size", "enumerate_provable", "eval_sub_term", "free_vars", "gamma_divergence",
    "gamma_prefix", "goedel_sentence", "is_axiom", "literal_pipeline", "numeral_of", "parse",
    "render", "self_numeral_certificate", "sub", "substitute_ast", "symbol_count",
]
