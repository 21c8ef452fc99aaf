"""
Exceptions raised by the simulators and analyzers.
"""


class BroadcastError(Exception):
    """Base class for every error raised by this project."""


class DimensionError(BroadcastError, ValueError):
    """Matrix shapes, factor shapes or factor indices do not fit together."""


class DomainError(BroadcastError, ValueError):
    """A physical parameter lies outside its admissible range."""


class NotHermitianError(BroadcastError, ValueError):
    """A matrix expected to be Hermitian deviates from its conjugate transpose."""


class ConvergenceError(BroadcastError, RuntimeError):
    """An iterative numerical routine ran out of its iteration budget."""


class NotIsotropicError(BroadcastError):
    """A cloner shrinks different Bloch vectors (or clones) by different factors."""


class InfeasibleClonerError(BroadcastError):
    """
    The general-cloner search found no realization meeting the acceptance residual.

    Attributes:
        best_residual: Smallest max-residual seen over all restarts
        restarts: Number of restarts that were tried
    """

    def __init__(self, message, best_residual=float("inf"), restarts=0):
        super().__init__(message)
        self.best_residual = best_residual
        self.restarts = restarts
