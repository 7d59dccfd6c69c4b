"""Exception hierarchy shared by every module.

Each error carries a ``case`` name; the CLI prints it as the first word of its
one-line diagnostic.
"""

from __future__ import annotations


class GodelError(Exception):
    case = "GodelError"


class FormulaSyntaxError(GodelError):
    """Malformed formula text or symbol sequence."""

    case = "SyntaxError"

    def __init__(self, offset: int, expected: frozenset[str] | set[str], found: str = ""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected)) or "end of input"
        got = f" but found {found!r}" if found else ""
        super().__init__(f"at offset {offset}: expected one of {{{exp}}}{got}")


class OpenTermError(GodelError):
    case = "OpenTermError"


class EmptySequence(GodelError):
    case = "EmptySequence"


class NotDecodable(GodelError):
    case = "NotDecodable"


class UnsupportedScheme(GodelError):
    case = "UnsupportedScheme"


class VariableNotFree(GodelError):
    case = "VariableNotFree"


class ArityError(GodelError):
    case = "ArityError"


class BoundsError(GodelError):
    case = "BoundsError"


class CapExceeded(GodelError):
    """A code would be too large to materialize.

    ``report`` is the :class:`~godelkit.numbering.SizeReport` of the value that
    was not built, so callers can keep working with sizes only.
    """

    case = "CapExceeded"

    def __init__(self, report, message: str = ""):
        self.report = report
        super().__init__(message or f"code too large to materialize ({report})")
