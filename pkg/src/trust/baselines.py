"""
EigenTrust and PowerTrust aggregation, used as comparison baselines.
"""

from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from ..models.baseline import BaselineConfig
from ..models.trust import GlobalTrustVector
from .errors import ConvergenceError, DimensionMismatchError, InvalidTrustInputError
from .matrix import NormalizedTrustMatrix


def pretrust_distribution(n: int, peers: Sequence[int]) -> np.ndarray:
    """Uniform distribution over ``peers``."""
    if not peers:
        raise InvalidTrustInputError("Pre-trusted set must not be empty")
    if any(not 0 <= i < n for i in peers):
        raise DimensionMismatchError(f"Pre-trusted ids must lie in [0, {n})")

    dist = np.zeros(n)
    dist[list(peers)] = 1.0 / len(set(peers))
    return dist


def damped_iteration(
    C: NormalizedTrustMatrix,
    pretrust: np.ndarray,
    config: BaselineConfig,
) -> GlobalTrustVector:
    """
    Iterate ``t <- (1 - a) Cᵗ t + a p`` from ``t = p`` until ``||Δt||_1 < epsilon``.
    """
    a = config.damping
    t = pretrust.copy()
    trace: List[float] = []

    for iteration in range(1, config.max_iterations + 1):
        new = (1.0 - a) * C.propagate(t, pretrust) + a * pretrust
        new /= new.sum()
        trace.append(float(np.abs(new - t).sum()))
        t = new
        if trace[-1] < config.epsilon:
            return GlobalTrustVector(values=t, iterations_used=iteration, residual_trace=trace)

    raise ConvergenceError(
        GlobalTrustVector(values=t, iterations_used=config.max_iterations, residual_trace=trace, converged=False)
    )


def eigentrust(
    C: NormalizedTrustMatrix,
    config: BaselineConfig,
    pretrust: Optional[np.ndarray] = None,
) -> GlobalTrustVector:
    """
    EigenTrust stationary vector with damping toward the pre-trusted peers.

    Args:
        C: Row-stochastic local trust matrix
        config: Damping, pre-trusted set and stopping rule
        pretrust: Explicit pre-trust distribution overriding ``config.pretrusted_set``

    Returns:
        Probability vector of global trust
    """
    if pretrust is None:
        pretrust = pretrust_distribution(C.n, config.pretrusted_set)
    elif pretrust.shape != (C.n,):
        raise DimensionMismatchError(f"Pre-trust vector must have length {C.n}")

    return damped_iteration(C, np.asarray(pretrust, dtype=float), config)


def elect_power_nodes(values: np.ndarray, m: int) -> List[int]:
    """Ids of the m largest components; ties go to the lowest id."""
    order = np.argsort(-np.asarray(values), kind="stable")
    return sorted(int(i) for i in order[:m])


def powertrust(C: NormalizedTrustMatrix, config: BaselineConfig) -> GlobalTrustVector:
    """
    Two-phase PowerTrust aggregation.

    Phase one ranks peers with uniform pre-trust; phase two reruns the
    iteration with the pre-trust mass spread over the top-m power nodes.
    """
    n = C.n
    ranking = damped_iteration(C, np.full(n, 1.0 / n), config)

    power_nodes = elect_power_nodes(ranking.values, config.power_nodes_for(n))
    logger.debug(f"PowerTrust elected power nodes {power_nodes}")

    result = damped_iteration(C, pretrust_distribution(n, power_nodes), config)
    return GlobalTrustVector(
        values=result.values,
        iterations_used=ranking.iterations_used + result.iterations_used,
        residual_trace=ranking.residual_trace + result.residual_trace,
    )
