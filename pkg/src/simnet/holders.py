"""
Hash-ring assignment of trust holder peers.

Peers sit on a ring ordered by the SHA-1 of their id; the trust of a peer is
held by its ``replication`` successors on that ring, as a successor list in a
DHT would.
"""

import hashlib
from functools import lru_cache
from typing import List, Tuple

import numpy as np


def _ring_key(peer: int) -> int:
    return int(hashlib.sha1(str(peer).encode()).hexdigest(), 16)


@lru_cache(maxsize=None)
def ring_order(num_peers: int) -> Tuple[int, ...]:
    """Peer ids in ring order."""
    return tuple(sorted(range(num_peers), key=_ring_key))


def trust_holders_of(peer: int, num_peers: int, replication: int = 1) -> List[int]:
    """
    Peers that store and update ``peer``'s global trust.

    Raises:
        ValueError: for an unknown peer or when there are not enough other peers
    """
    if not 0 <= peer < num_peers:
        raise ValueError(f"Peer {peer} outside a {num_peers}-peer network")
    if replication < 1:
        raise ValueError(f"replication must be at least 1, got {replication}")
    if replication > num_peers - 1:
        raise ValueError(f"Cannot pick {replication} holders among {num_peers - 1} other peers")

    ring = ring_order(num_peers)
    position = ring.index(peer)
    return [ring[(position + k) % num_peers] for k in range(1, replication + 1)]


def holder_load(num_peers: int, replication: int = 1) -> np.ndarray:
    """How many peers' trust each peer holds."""
    load = np.zeros(num_peers, dtype=int)
    for peer in range(num_peers):
        load[trust_holders_of(peer, num_peers, replication)] += 1
    return load
