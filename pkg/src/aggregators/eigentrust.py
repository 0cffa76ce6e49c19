"""
EigenTrust and PowerTrust aggregators.
"""

from typing import List

from ..models.simulation import SimConfig
from ..models.trust import GlobalTrustVector
from ..simnet.ledger import Ledger
from ..trust.baselines import eigentrust, powertrust
from .base import BaseAggregator


class EigenTrustAggregator(BaseAggregator):
    """Damped EigenTrust with a fixed pre-trusted set."""

    name = "eigentrust"

    def __init__(self, config: SimConfig, pretrusted: List[int]):
        super().__init__(config)
        self.baseline = config.baseline
        if not self.baseline.pretrusted_set:
            self.baseline = self.baseline.model_copy(update={"pretrusted_set": sorted(pretrusted)})

    def initial_vector(self) -> GlobalTrustVector:
        n = self.config.num_peers
        return GlobalTrustVector.uniform(n, 1.0 / n)

    def compute(self, ledger: Ledger, previous: GlobalTrustVector) -> GlobalTrustVector:
        return eigentrust(ledger.normalized_matrix(), self.baseline)


class PowerTrustAggregator(BaseAggregator):
    """Two-phase PowerTrust with power nodes re-elected every round."""

    name = "powertrust"

    def initial_vector(self) -> GlobalTrustVector:
        n = self.config.num_peers
        return GlobalTrustVector.uniform(n, 1.0 / n)

    def compute(self, ledger: Ledger, previous: GlobalTrustVector) -> GlobalTrustVector:
        return powertrust(ledger.normalized_matrix(), self.config.baseline)
