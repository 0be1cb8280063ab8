"""Exception hierarchy shared by all psical modules."""


class PsicalError(Exception):
    """Base class for every error raised by psical."""


class DomainError(PsicalError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class OrderError(PsicalError, ValueError):
    """No symbol-class embedding exists for the requested orders."""


class CapabilityError(PsicalError):
    """A symbol lacks the derivative information an operation needs."""


class AliasingError(PsicalError, ValueError):
    """The z-bandwidth of a symbol is not resolved by the frequency grid."""


class NumericError(PsicalError, ArithmeticError):
    """A computation produced non-finite values."""


class NotEllipticError(PsicalError):
    """The symbol is not elliptic in the requested class."""


class LimitError(PsicalError):
    """A pointwise h -> 0 limit could not be established."""


class ConditioningError(PsicalError, ArithmeticError):
    """A matrix is too close to singular to be inverted reliably."""

    def __init__(self, message, sigma_min=None):
        super().__init__(message)
        self.sigma_min = sigma_min


class ContourError(PsicalError, ValueError):
    """An integration contour violates its spectral safety margin."""


class ConfigError(PsicalError, ValueError):
    """An experiment configuration could not be parsed or validated."""
