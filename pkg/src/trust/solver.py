"""
Absolute Trust fixed-point solver.

Each peer i with rater set S_i is mapped to

    t_i' = [(sum_j T_ji t_j / sum_j t_j)^p * (sum_j t_j^2 / sum_j t_j)^q]^(1/(p+q))

i.e. the biasing transform applied to the trust-weighted mean of received
scores, with the set trust of S_i as the evaluator weight. Peers nobody has
rated keep ``SolverConfig.initial_value``.
"""

from typing import Optional, Union

import numpy as np
from loguru import logger

from ..models.trust import GlobalTrustVector, SolverConfig
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidTrustInputError,
    NonFiniteTrustError,
)
from .matrix import TrustMatrix
from .metrics import residual


def _check_finite(values: np.ndarray) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NonFiniteTrustError(int(bad[0]))


def _as_vector(t: Union[GlobalTrustVector, np.ndarray], n: int) -> np.ndarray:
    values = t.values if isinstance(t, GlobalTrustVector) else np.asarray(t, dtype=float)
    if values.shape != (n,):
        raise DimensionMismatchError(f"Trust vector of length {values.shape[0]} for a {n}-peer matrix")
    _check_finite(values)
    if np.any(values <= 0):
        raise InvalidTrustInputError(f"Trust vector must be strictly positive, peer {int(np.argmin(values))} is not")
    return values


def _step_values(T: TrustMatrix, t: np.ndarray, config: SolverConfig, rated: np.ndarray) -> np.ndarray:
    weighted = T.transposed() @ t
    mass = T.incidence() @ t
    mass_sq = T.incidence() @ (t * t)

    new = np.full_like(t, config.initial_value)
    with np.errstate(divide="ignore", invalid="ignore"):
        mean_score = weighted[rated] / mass[rated]
        rater_trust = mass_sq[rated] / mass[rated]
        # both means are positive for positive inputs; log keeps large p, q stable
        new[rated] = np.exp(
            (config.p * np.log(mean_score) + config.q * np.log(rater_trust)) / (config.p + config.q)
        )

    _check_finite(new)
    return new


def absolute_trust_step(
    T: TrustMatrix,
    t: Union[GlobalTrustVector, np.ndarray],
    config: SolverConfig,
) -> GlobalTrustVector:
    """
    Apply the Absolute Trust map once.

    Args:
        T: Local trust matrix
        t: Current strictly positive global trust vector
        config: Exponents and the value held by unrated peers

    Returns:
        Next iterate; its residual trace holds the single step residual
    """
    current = _as_vector(t, T.n)
    rated = T.rated_mask()
    new = _step_values(T, current, config, rated)

    return GlobalTrustVector(
        values=new,
        iterations_used=1,
        residual_trace=[residual(new, current, mask=rated)],
    )


def solve_absolute_trust(
    T: TrustMatrix,
    config: SolverConfig,
    initial: Optional[Union[GlobalTrustVector, np.ndarray]] = None,
) -> GlobalTrustVector:
    """
    Iterate the Absolute Trust map to its fixed point.

    Args:
        T: Local trust matrix
        config: Exponents, threshold, iteration cap and default start value
        initial: Optional strictly positive starting vector (warm start)

    Returns:
        Converged global trust vector with its residual trace

    Raises:
        ConvergenceError: if the residual stays above ``config.threshold``
            after ``config.max_iterations`` steps; the error carries the last
            iterate.
    """
    if initial is None:
        current = np.full(T.n, config.initial_value)
    else:
        current = _as_vector(initial, T.n).copy()

    rated = T.rated_mask()
    current[~rated] = config.initial_value

    trace = []
    for iteration in range(1, config.max_iterations + 1):
        new = _step_values(T, current, config, rated)
        trace.append(residual(new, current, mask=rated))
        current = new

        if trace[-1] < config.threshold:
            logger.debug(
                f"Absolute Trust converged in {iteration} iterations "
                f"(alpha={config.alpha:.3f}, residual={trace[-1]:.2e})"
            )
            return GlobalTrustVector(values=current, iterations_used=iteration, residual_trace=trace)

    raise ConvergenceError(
        GlobalTrustVector(
            values=current,
            iterations_used=config.max_iterations,
            residual_trace=trace,
            converged=False,
        )
    )
