"""
Per-trial metrics.
"""

from typing import Optional, Sequence

import numpy as np

from ..models.simulation import ExperimentResult


def authentic_percent(result: ExperimentResult) -> float:
    """Share of completed downloads that were authentic, in percent."""
    total = result.completed_transactions
    if total == 0:
        raise ValueError("No completed transactions, authentic percent is undefined")
    return 100.0 * result.authentic_count / total


def load_stddev(result: ExperimentResult, good_peers: Optional[Sequence[int]] = None) -> float:
    """
    Population standard deviation of downloads served, among good peers only.

    Args:
        result: Trial outcome
        good_peers: Peer ids to include; defaults to the trial's good peers
    """
    peers = list(result.good_peers if good_peers is None else good_peers)
    if len(peers) < 2:
        raise ValueError(f"Load spread needs at least 2 good peers, got {len(peers)}")
    return float(np.std(np.asarray(result.per_peer_load)[peers]))
