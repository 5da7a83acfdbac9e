"""
Domain exceptions for dynstokes
"""


class InvalidParameterError(ValueError):
    """
    Raised when a parameter violates a module precondition

    Examples are a resolvent point outside the sector, a negative boundary
    coefficient, an unsupported dimension or a negative kernel coordinate.
    """


class ShapeMismatchError(ValueError):
    """
    Raised when a field does not fit its grids or has the wrong number of
    components
    """


class OracleError(RuntimeError):
    """
    Raised when the finite-difference oracle cannot produce a solution

    This covers singular banded systems, an inadequate truncation length and
    the excluded zero mode.
    """


class DerivativeBreakdownError(ArithmeticError):
    """
    Raised when a finite-difference step underflows relative to the abscissa
    or the difference quotient is not finite
    """
