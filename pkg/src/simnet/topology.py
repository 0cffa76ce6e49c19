"""
Overlay network and TTL-bounded query flooding.
"""

from typing import List, Optional

import networkx as nx
import numpy as np
from loguru import logger

from ..models.simulation import SimConfig
from .placement import FilePlacement

# Hop distance stored for unreachable pairs
UNREACHABLE = np.iinfo(np.int32).max


class Overlay:
    """Unstructured overlay graph with precomputed hop distances."""

    def __init__(self, graph: nx.Graph):
        self.graph = graph
        n = graph.number_of_nodes()
        self.distances = np.full((n, n), UNREACHABLE, dtype=np.int32)
        for source, lengths in nx.all_pairs_shortest_path_length(graph):
            for target, hops in lengths.items():
                self.distances[source, target] = hops

    @property
    def num_peers(self) -> int:
        return self.graph.number_of_nodes()

    @classmethod
    def build(cls, config: SimConfig, rng: Optional[np.random.Generator] = None) -> "Overlay":
        n = config.num_peers
        if config.topology == "ring":
            graph = nx.cycle_graph(n)
        elif config.topology == "complete" or config.topology_degree >= n - 1:
            graph = nx.complete_graph(n)
        else:
            degree = config.topology_degree
            if degree * n % 2:
                degree -= 1
                logger.warning(f"Odd degree times peer count, using degree {degree} instead")
            seed = int(rng.integers(2**32)) if rng is not None else None
            graph = nx.random_regular_graph(degree, n, seed=seed)
            if not nx.is_connected(graph):
                logger.warning("Random regular overlay is disconnected, some peers are unreachable")
        return cls(graph)


def issue_query(
    requester: int,
    file_id: int,
    ttl: int,
    overlay: Overlay,
    placement: FilePlacement,
) -> List[int]:
    """
    Flood a query for ``file_id`` up to ``ttl`` hops.

    Returns:
        Sorted ids of reached peers that own the file, never the requester

    Raises:
        ValueError: if the requester already owns the file
    """
    if placement.owns(requester, file_id):
        raise ValueError(f"Peer {requester} already owns file {file_id}")
    if ttl <= 0:
        return []

    owners = placement.owners_of(file_id)
    hops = overlay.distances[requester, owners]
    return [int(p) for p in owners[hops <= ttl] if p != requester]
