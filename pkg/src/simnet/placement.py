"""
Zipf-distributed file placement.
"""

from typing import List, Set

import numpy as np

from ..models.simulation import SimConfig


def replica_counts(num_files: int, num_peers: int, gamma: float, min_replicas: int = 1) -> np.ndarray:
    """
    Replica count per popularity rank.

    Rank r (1-based) gets ``round(min_replicas * (num_files / r) ** gamma)``
    copies, capped at the peer count, so the least popular file has exactly
    ``min_replicas`` copies.
    """
    ranks = np.arange(1, num_files + 1, dtype=float)
    counts = np.rint(min_replicas * (num_files / ranks) ** gamma).astype(int)
    return np.clip(counts, 1, num_peers)


class FilePlacement:
    """Which peers hold which files."""

    def __init__(self, num_peers: int, owners: List[np.ndarray]):
        self.num_peers = num_peers
        self._owners = [np.sort(np.asarray(o, dtype=int)) for o in owners]
        self._files: List[Set[int]] = [set() for _ in range(num_peers)]
        for file_id, holders in enumerate(self._owners):
            for peer in holders:
                self._files[peer].add(file_id)

    @property
    def num_files(self) -> int:
        return len(self._owners)

    def owners_of(self, file_id: int) -> np.ndarray:
        return self._owners[file_id]

    def files_of(self, peer: int) -> Set[int]:
        return self._files[peer]

    def owns(self, peer: int, file_id: int) -> bool:
        return file_id in self._files[peer]

    def replicas(self) -> np.ndarray:
        return np.array([len(o) for o in self._owners])


def place_files(config: SimConfig, rng: np.random.Generator) -> FilePlacement:
    """
    Spread ``config.num_files`` files over the peers.

    Args:
        config: Simulation parameters (peer count, file count, Zipf exponent)
        rng: Placement stream

    Returns:
        Placement where each file sits on distinct, uniformly drawn peers
    """
    counts = replica_counts(config.num_files, config.num_peers, config.zipf_gamma, config.min_replicas)
    owners = [rng.choice(config.num_peers, size=int(c), replace=False) for c in counts]
    return FilePlacement(config.num_peers, owners)
