"""Exception types and warnings shared across the package."""


class TaylorJetError(Exception):
    """Base class for numeric and structural errors raised by this package.

    ``position`` is the byte offset of the offending expression node when
    the error was raised while evaluating a parsed expression, else None.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class AlignmentError(TaylorJetError):
    """Operands have different expansion points or truncation orders."""


class PoleError(TaylorJetError):
    """Denominator value at the expansion point is (numerically) zero."""


class DomainError(TaylorJetError):
    """Elementary function applied outside its domain."""


class NonFiniteError(TaylorJetError):
    """An operation would produce NaN or infinity."""


class SingularMatrixError(TaylorJetError):
    """Triangular system with a zero diagonal entry."""


class SizeLimitError(TaylorJetError):
    """Input exceeds a documented size cap (Cramer oracle, symbolic depth)."""


class ParseError(Exception):
    """Lexing or parsing failure, with the byte offset of the problem."""

    def __init__(self, message, position):
        super().__init__(message)
        self.position = position


class ConditioningWarning(UserWarning):
    """The denominator's constant term is small; quotient coefficients may
    lose accuracy even though the division itself is well-defined."""
