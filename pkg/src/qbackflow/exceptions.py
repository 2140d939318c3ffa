"""Exception types shared across the package."""


class QBackflowError(Exception):
    """Base class for all package-specific errors."""


class InvalidStateError(QBackflowError, ValueError):
    """Raised when a matrix or Bloch vector is not a physical qubit state."""


class MalformedChannelError(QBackflowError, ValueError):
    """Raised when a Kraus set violates trace preservation beyond tolerance."""


class NonInvertibleMapError(QBackflowError, ArithmeticError):
    """Raised when an intermediate map would require inverting a singular
    (or numerically near-singular) Bloch matrix."""


class QuadratureConvergenceError(QBackflowError, RuntimeError):
    """Raised when the spectral quadrature cannot reach the requested
    tolerance; carries the achieved error estimate."""

    def __init__(self, message: str, achieved_error: float = float("nan")):
        super().__init__(message)
        self.achieved_error = achieved_error
