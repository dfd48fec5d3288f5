"""Exception hierarchy shared by every module."""


class LamCalcError(ValueError):
    """Base class for all library errors."""


class ParseError(LamCalcError):
    pass


class DomainError(LamCalcError):
    """An argument lies outside the domain of the operation."""


class PoleError(LamCalcError, ZeroDivisionError):
    """Evaluation hit a pole (a vanishing denominator)."""


class TruncationError(LamCalcError):
    """A series or product did not meet its tolerance within ``max_terms``."""


class NumericError(LamCalcError, ArithmeticError):
    """A numeric intermediate became non-finite."""
