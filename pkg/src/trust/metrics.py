"""
Scalar trust metrics: local trust, biasing transform, set trust and helpers.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np

from ..models.trust import GlobalTrustVector, TransactionCounts, WeightConfig
from .errors import DimensionMismatchError, InvalidTrustInputError, NoInteractionError

VectorLike = Union[GlobalTrustVector, np.ndarray, Sequence[float]]


def local_trust(counts: TransactionCounts, weights: WeightConfig) -> float:
    """
    Local trust a rater assigns to a ratee from its download history.

    Equivalent to ``((x - y + 1) * w_g + (y - x + 1) * w_b) / 2`` where x and y
    are the satisfactory and unsatisfactory fractions.

    Examples:
        20 good, 40 bad of 100, w_g=10, w_b=1 -> 4.6
        30 good, 60 bad of 100, w_g=10, w_b=1 -> 4.15

    Raises:
        NoInteractionError: if no files were downloaded.
    """
    if counts.n_t == 0:
        raise NoInteractionError("No transactions recorded, local trust is undefined")

    x, y = counts.fractions()
    return 0.5 * ((x - y + 1) * weights.w_g + (y - x + 1) * weights.w_b)


def bias_evaluation(eval_in: float, w_e: float, p: int, q: int) -> float:
    """
    Make an evaluation uniform with respect to the evaluator's weight.

    Returns ``(eval_in**p * w_e**q) ** (1 / (p + q))``, computed in log space.
    """
    if eval_in <= 0 or w_e <= 0:
        raise InvalidTrustInputError(f"Evaluation and weight must be positive, got {eval_in} and {w_e}")
    if p < 1 or q < 1:
        raise InvalidTrustInputError(f"Exponents must be positive integers, got p={p}, q={q}")

    return math.exp((p * math.log(eval_in) + q * math.log(w_e)) / (p + q))


def set_trust(members: Sequence[float]) -> float:
    """
    Equivalent trust of a set of raters, ``sum(t^2) / sum(t)``.

    Dominated by the more trusted members; always within [min, max] of the
    inputs.
    """
    values = np.asarray(members, dtype=float)
    if values.size == 0:
        raise InvalidTrustInputError("Set trust of an empty set is undefined")
    if np.any(values <= 0):
        raise InvalidTrustInputError("Set members must have positive trust")

    return float(np.dot(values, values) / values.sum())


def combined_score(global_trust: float, local: float, beta: float) -> float:
    """Convex combination ``beta * global + (1 - beta) * local``."""
    if not 0.0 <= beta <= 1.0:
        raise InvalidTrustInputError(f"beta must lie in [0, 1], got {beta}")
    return beta * global_trust + (1.0 - beta) * local


def _as_array(v: VectorLike) -> np.ndarray:
    if isinstance(v, GlobalTrustVector):
        return v.values
    return np.asarray(v, dtype=float)


def residual(t_new: VectorLike, t_old: VectorLike, mask: Optional[np.ndarray] = None) -> float:
    """
    Mean absolute component difference, ``(1/N) * ||t_new - t_old||_1``.

    Args:
        t_new: Newer iterate
        t_old: Older iterate
        mask: Optional boolean mask; the mean is then taken over masked components only

    Returns:
        Non-negative residual, zero iff the (masked) vectors are equal
    """
    a, b = _as_array(t_new), _as_array(t_old)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot compare vectors of shape {a.shape} and {b.shape}")

    diff = np.abs(a - b)
    if mask is not None:
        diff = diff[mask]
    if diff.size == 0:
        return 0.0
    return float(diff.mean())
