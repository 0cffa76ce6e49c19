"""
Exception hierarchy for trust computations.
"""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from ..models.trust import GlobalTrustVector


class TrustError(Exception):
    """Base class for all trust computation errors."""


class NoInteractionError(TrustError, ValueError):
    """Raised when a local trust value is requested for a pair without transactions."""


class DimensionMismatchError(TrustError, ValueError):
    """Raised when vectors or matrices of different sizes are combined."""


class InvalidTrustInputError(TrustError, ValueError):
    """Raised for non-positive scores, empty rater sets or out-of-range weights."""


class NonFiniteTrustError(TrustError, ArithmeticError):
    """Raised when an iterate contains NaN or infinity."""

    def __init__(self, peer_index: int, message: Optional[str] = None):
        self.peer_index = peer_index
        super().__init__(message or f"Non-finite global trust for peer {peer_index}")


class ConvergenceError(TrustError, RuntimeError):
    """Raised when an iterative solver exhausts its iteration budget.

    The last iterate is kept on ``result`` so callers can decide what to do
    with it.
    """

    def __init__(self, result: "GlobalTrustVector", message: Optional[str] = None):
        self.result = result
        last = result.residual_trace[-1] if result.residual_trace else float("nan")
        super().__init__(
            message
            or f"Did not converge within {result.iterations_used} iterations, last residual {last:.3e}"
        )
