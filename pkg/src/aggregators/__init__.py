# Aggregators package
from typing import Sequence

from ..models.simulation import SimConfig
from .absolute import AbsoluteTrustAggregator
from .base import BaseAggregator
from .eigentrust import EigenTrustAggregator, PowerTrustAggregator

ALGORITHMS = ("absolute", "eigentrust", "powertrust")


def create_aggregator(config: SimConfig, good_peers: Sequence[int] = ()) -> BaseAggregator:
    """
    Aggregator for ``config.algorithm``.

    EigenTrust pre-trusts the first ``baseline.pretrusted_count`` good peers
    unless ``baseline.pretrusted_set`` is given.
    """
    if config.algorithm == "absolute":
        return AbsoluteTrustAggregator(config)
    if config.algorithm == "powertrust":
        return PowerTrustAggregator(config)
    if config.algorithm == "eigentrust":
        pretrusted = sorted(good_peers)[:config.baseline.pretrusted_count]
        if not pretrusted and not config.baseline.pretrusted_set:
            raise ValueError("EigenTrust needs at least one good peer to pre-trust")
        return EigenTrustAggregator(config, pretrusted)
    raise ValueError(f"Unknown algorithm: {config.algorithm}")


__all__ = [
    'ALGORITHMS',
    'AbsoluteTrustAggregator',
    'BaseAggregator',
    'create_aggregator',
    'EigenTrustAggregator',
    'PowerTrustAggregator',
]
