"""
Convergence speed of the Absolute Trust solver for several alpha values.
"""

from typing import Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from ..models.trust import SolverConfig, WeightConfig
from ..trust.errors import ConvergenceError
from ..trust.matrix import TrustMatrix
from ..trust.solver import solve_absolute_trust

DEFAULT_ALPHAS = (1.0, 1 / 2, 1 / 3, 1 / 4, 1 / 5)


def random_trust_matrix(
    n: int,
    seed: int,
    density: float = 1.0,
    weights: Optional[WeightConfig] = None,
) -> TrustMatrix:
    """
    Seeded local trust matrix with scores uniform in [w_b, w_g].

    Every peer gets at least one rater so the whole vector takes part in the
    iteration.
    """
    weights = weights or WeightConfig()
    rng = np.random.Generator(np.random.PCG64(seed))

    scores = rng.uniform(weights.w_b, weights.w_g, size=(n, n))
    present = rng.random((n, n)) < density
    np.fill_diagonal(present, False)
    for ratee in np.flatnonzero(~present.any(axis=0)):
        rater = (ratee + 1 + int(rng.integers(n - 1))) % n
        present[rater, ratee] = True

    return TrustMatrix.from_dense(np.where(present, scores, 0.0), weights)


def convergence_study(
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    matrix: Optional[TrustMatrix] = None,
    iterations: int = 10,
    seed: int = 42,
    n: int = 100,
) -> pd.DataFrame:
    """
    Residual per iteration for each alpha on one shared matrix.

    The solver runs with a vanishing threshold for exactly ``iterations``
    steps so every alpha yields a trace of the same length.

    Returns:
        Frame with columns alpha, iteration, residual
    """
    matrix = matrix or random_trust_matrix(n, seed)
    rows = []
    for alpha in alphas:
        config = SolverConfig.from_alpha(alpha, threshold=1e-300, max_iterations=iterations)
        try:
            trace = solve_absolute_trust(matrix, config).residual_trace
        except ConvergenceError as e:
            trace = e.result.residual_trace
        logger.info(f"alpha={alpha:.4f}: residual {trace[-1]:.3e} after {len(trace)} iterations")
        rows.extend({"alpha": alpha, "iteration": k, "residual": r} for k, r in enumerate(trace, start=1))

    return pd.DataFrame(rows, columns=["alpha", "iteration", "residual"])
