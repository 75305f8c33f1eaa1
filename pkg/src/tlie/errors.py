"""Exception hierarchy shared by every tlie module."""

from __future__ import annotations


class TLieError(Exception):
    """Base class for all errors raised by tlie."""


# scalars

class NotAUnit(TLieError, ArithmeticError):
    """A Laurent scalar with zero or several terms was asked for an inverse."""


class ZeroAssignment(TLieError, ValueError):
    """A unit variable was specialized to 0."""


# spec construction

class SpecError(TLieError, ValueError):
    """An algebra description violates a structural invariant."""


class DuplicateId(SpecError):
    pass


class UnknownIdInTable(SpecError):
    pass


class DisorderedEntry(SpecError):
    """A table entry was given for a pair x > y; those values are derived."""


class NonUnitSymCoefficient(SpecError):
    pass


class BadDiagonal(SpecError):
    pass


class IllegalDiagonalBracket(SpecError):
    pass


class BadGrade(SpecError):
    pass


class BadTableDegree(SpecError):
    pass


class NotClosed(SpecError):
    def __init__(self, message: str, witness: tuple[str, str] | None = None):
        super().__init__(message)
        self.witness = witness


# catalog constructors

class JacobiFail(SpecError):
    def __init__(self, message: str, witness: tuple[str, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class NotACommutationFactor(SpecError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class BadEps(SpecError):
    pass


# evaluation

class WordTooShort(TLieError, IndexError):
    pass


class PreconditionViolated(TLieError):
    pass


class BoundsTooSmall(TLieError, ValueError):
    pass


class RecursionBoundExceeded(TLieError, RecursionError):
    pass


# parsing

class ExpressionSyntaxError(TLieError, SyntaxError):
    def __init__(self, message: str, position: int | None = None, source: str = ""):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownId(TLieError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown id"


class SpecFileError(TLieError, ValueError):
    """Malformed algebra description file."""
