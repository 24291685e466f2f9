"""Exception taxonomy shared by every module."""


class FracdriftError(Exception):
    """Base class for all library errors."""


class DomainError(FracdriftError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation exactly at a pole of the Gamma function."""


class PrecisionError(FracdriftError, ArithmeticError):
    """A series or quadrature cannot reach its accuracy target in float64."""


class ConvergenceError(FracdriftError, RuntimeError):
    """An iterative or contour scheme failed its self-consistency check."""


class InsufficientData(FracdriftError, ValueError):
    """Not enough samples in the requested window to form an estimate."""
