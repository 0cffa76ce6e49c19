"""
Absolute Trust aggregator.
"""

from loguru import logger

from ..models.trust import GlobalTrustVector
from ..simnet.ledger import Ledger
from ..trust.solver import solve_absolute_trust
from .base import BaseAggregator


class AbsoluteTrustAggregator(BaseAggregator):
    """Fixed-point global trust, warm-started from the previous round."""

    name = "absolute"

    def initial_vector(self) -> GlobalTrustVector:
        return GlobalTrustVector.uniform(self.config.num_peers, self.config.solver.initial_value)

    def compute(self, ledger: Ledger, previous: GlobalTrustVector) -> GlobalTrustVector:
        matrix = ledger.trust_matrix()
        result = solve_absolute_trust(matrix, self.config.solver, initial=previous)
        logger.debug(
            f"Absolute Trust update: {matrix.nnz} ratings, {result.iterations_used} iterations, "
            f"range [{result.values.min():.3f}, {result.values.max():.3f}]"
        )
        return result
