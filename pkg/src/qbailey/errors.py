class QSeriesError(ArithmeticError):
    """Base class for errors raised by the engine."""


class NonUnit(QSeriesError):
    """Raised when dividing by a series whose constant term is zero."""


class NonTerminating(QSeriesError):
    """Raised when an infinite sum fails to reach the truncation order."""


class DivergentInfiniteProduct(QSeriesError):
    """Raised for an infinite q-product whose factors never approach 1."""


class LaurentTerm(QSeriesError):
    """Raised when an operation would produce a negative exponent."""
