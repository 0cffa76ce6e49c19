"""
Base class for global trust aggregators plugged into the simulator.
"""

from abc import ABC, abstractmethod

from ..models.simulation import SimConfig
from ..models.trust import GlobalTrustVector
from ..simnet.ledger import Ledger


class BaseAggregator(ABC):
    """Turns the simulator ledger into a global trust vector once per update round."""

    name: str = ""

    def __init__(self, config: SimConfig):
        self.config = config

    @abstractmethod
    def initial_vector(self) -> GlobalTrustVector:
        """Trust every peer holds before the first update round."""
        pass

    @abstractmethod
    def compute(self, ledger: Ledger, previous: GlobalTrustVector) -> GlobalTrustVector:
        """
        Aggregate the ledger.

        Raises:
            ConvergenceError: if the underlying iteration does not converge
        """
        pass

    @property
    def reads_per_iteration(self) -> int:
        """Trust holders that redo each rater-trust fetch."""
        return self.config.holder_replication

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.config.num_peers})"
