"""Exception hierarchy shared by the atomfib modules."""

from typing import Optional


class AtomfibError(Exception):
    """Base class for every error raised by atomfib."""


class DimensionError(AtomfibError, ValueError):
    """Vector or matrix shapes do not fit together."""


class EmptyFiber(AtomfibError):
    """A query needs a nonempty fiber but Q_b^(k) has no points."""


class EmptySummand(AtomfibError):
    """A restricted Minkowski sum test was asked about an empty summand."""


class InfiniteFiber(AtomfibError):
    """A query needs a finite fiber but the fiber is unbounded."""


class InfeasibleError(AtomfibError):
    """An inhomogeneous diophantine system has no integer solution at all."""


class BudgetExceeded(AtomfibError):
    """A completion loop processed more candidates than its budget allows."""


class CoverTooLarge(AtomfibError):
    """No covering set within budget exists for a preorder refinement."""


class ParseError(AtomfibError):
    """Malformed matrix or vector input.

    Args:
        message: What went wrong
        line: 1-based line number of the offending token, if known
        column: 1-based column number of the offending token, if known
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(f"{message}{where}")
