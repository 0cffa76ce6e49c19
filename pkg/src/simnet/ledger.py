"""
Per-pair download history kept by the simulator.
"""

from collections import defaultdict
from typing import Dict, Iterator, Optional, Set, Tuple

from ..models.simulation import Feedback, LedgerEntry
from ..models.trust import TransactionCounts, WeightConfig
from ..trust.matrix import NormalizedTrustMatrix, TrustMatrix
from ..trust.metrics import local_trust

Pair = Tuple[int, int]

_FIELD = {
    Feedback.SATISFACTORY: "n_g",
    Feedback.NEUTRAL: "n_n",
    Feedback.UNSATISFACTORY: "n_b",
}


class Ledger:
    """Transaction counts and local trust for every (rater, ratee) pair that interacted."""

    def __init__(self, num_peers: int, weights: WeightConfig):
        self.num_peers = num_peers
        self.weights = weights
        self._entries: Dict[Pair, LedgerEntry] = {}
        self._sources: Dict[int, Set[int]] = defaultdict(set)

    def record(self, rater: int, ratee: int, outcome: Feedback) -> LedgerEntry:
        if rater == ratee:
            raise ValueError(f"Peer {rater} cannot rate itself")

        entry = self._entries.get((rater, ratee))
        counts = entry.counts.model_copy() if entry else TransactionCounts()
        setattr(counts, _FIELD[outcome], getattr(counts, _FIELD[outcome]) + 1)

        entry = LedgerEntry(rater=rater, ratee=ratee, counts=counts, local_trust=local_trust(counts, self.weights))
        self._entries[(rater, ratee)] = entry
        self._sources[rater].add(ratee)
        return entry

    def get(self, rater: int, ratee: int) -> Optional[LedgerEntry]:
        return self._entries.get((rater, ratee))

    def local_trust_of(self, rater: int, ratee: int) -> Optional[float]:
        """T_ij if the pair interacted, else None."""
        entry = self._entries.get((rater, ratee))
        return entry.local_trust if entry else None

    def source_count(self, rater: int) -> int:
        """Distinct sources the rater has downloaded from."""
        return len(self._sources.get(rater, ()))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LedgerEntry]:
        return iter(self._entries.values())

    def trust_matrix(self) -> TrustMatrix:
        return TrustMatrix(
            self.num_peers,
            {pair: e.local_trust for pair, e in self._entries.items()},
            self.weights,
        )

    def normalized_matrix(self) -> NormalizedTrustMatrix:
        return NormalizedTrustMatrix.from_counts(
            self.num_peers,
            {pair: e.counts for pair, e in self._entries.items()},
        )
