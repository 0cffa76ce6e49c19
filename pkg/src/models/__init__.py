# Models package
from .baseline import BaselineConfig
from .manifest import RunManifest
from .simulation import (
    Behavior,
    ExperimentResult,
    Feedback,
    LedgerEntry,
    MessageTally,
    PeerProfile,
    SimConfig,
)
from .trust import GlobalTrustVector, SolverConfig, TransactionCounts, WeightConfig

__all__ = [
    'BaselineConfig',
    'Behavior',
    'ExperimentResult',
    'Feedback',
    'GlobalTrustVector',
    'LedgerEntry',
    'MessageTally',
    'PeerProfile',
    'RunManifest',
    'SimConfig',
    'SolverConfig',
    'TransactionCounts',
    'WeightConfig',
]
