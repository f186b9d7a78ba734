"""Exception and warning types raised by the trace engines."""

from __future__ import annotations


class BidiagError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BidiagError, ValueError):
    """Matrix parameters violate the admissibility rules."""


class DimensionMismatch(ValidationError):
    pass


class NonPositiveEntry(ValidationError):
    pass


class NonFiniteEntry(ValidationError):
    pass


class Overflow(BidiagError, OverflowError):
    """A computed quantity left the binary64 range.

    ``order`` is the first power at which a nonfinite value appeared, when known.
    """

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class FactorialOverflow(Overflow):
    """The factorial-scaled quantities of the determinant-derivative formula overflowed."""


class ComplexityGuard(BidiagError, RuntimeError):
    """Brute-force enumeration would exceed the configured term budget."""


class MonotonicityViolation(BidiagError, ArithmeticError):
    """A computed lower bound decreased by more than the rounding slack."""


class TraceBreakdown(BidiagError, ArithmeticError):
    """A trace came out nonpositive or nonfinite, so no bound can be formed."""


class ParseError(BidiagError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class CancellationWarning(RuntimeWarning):
    """A quantity that is positive in exact arithmetic came out nonpositive."""
