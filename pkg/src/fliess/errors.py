"""Exception hierarchy shared by the algebra, simulator, and CLI layers.

Every exception carries a stable machine-readable ``code`` so the CLI can
emit distinct diagnostics per failure class.
"""

from __future__ import annotations


class FliessError(Exception):
    """Base class for all errors raised by this package."""

    code = "E_INTERNAL"


class ShapeMismatch(FliessError):
    """Operands disagree on alphabet, output count, degree, or dimensions."""

    code = "E_SHAPE"


class NotPurelyImproper(FliessError):
    """An inverse was requested for a series with a zero constant coefficient
    in at least one component."""

    code = "E_NOT_PURELY_IMPROPER"


class NotProper(FliessError):
    """A proper series (zero constant coefficient) was required."""

    code = "E_NOT_PROPER"


class BeyondTruncation(FliessError):
    """A coefficient beyond the truncation degree was requested; it is
    unknown, not zero."""

    code = "E_BEYOND_TRUNCATION"


class ConvergenceError(FliessError):
    """Picard iteration failed to converge; usually the time horizon is too
    large for the loop contraction."""

    code = "E_NO_CONVERGENCE"


class ParseError(FliessError):
    """Malformed series/trajectory input."""

    code = "E_SYNTAX"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class HeaderMismatch(ParseError):
    """A file header disagrees with its terms or with explicitly supplied
    shape information."""

    code = "E_HEADER_MISMATCH"
