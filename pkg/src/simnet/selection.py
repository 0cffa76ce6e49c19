"""
Source selection among query responders.
"""

from typing import NamedTuple, Optional, Sequence

import numpy as np

from ..models.simulation import SimConfig
from ..trust.metrics import combined_score


class Responder(NamedTuple):
    """A peer answering a query, as seen by the requester."""

    peer_id: int
    global_trust: float
    local_trust: Optional[float] = None


def select_source(
    responders: Sequence[Responder],
    config: SimConfig,
    rng: np.random.Generator,
    accept_all: bool = False,
) -> Optional[int]:
    """
    Pick the download source, or None to reject the query.

    Under Absolute Trust responders below ``config.global_ref`` are dropped
    and, in max mode, the score mixes global trust with the requester's own
    local trust via ``config.beta``. Baseline vectors are relative, so for
    them every responder survives and only global trust counts. During the
    warm-up ``accept_all`` lifts the threshold for every algorithm.

    Args:
        responders: Responders with holder-reported global trust
        config: Selection mode, threshold and mixing weight
        rng: Selection stream
        accept_all: Keep every responder regardless of ``global_ref``

    Returns:
        Selected peer id, or None when nobody qualifies
    """
    absolute = config.algorithm == "absolute"
    enforce = absolute and not accept_all
    survivors = [r for r in responders if not enforce or r.global_trust >= config.global_ref]
    if not survivors:
        return None

    if config.selection_mode == "max":
        def score(r: Responder) -> float:
            if absolute and r.local_trust is not None:
                return combined_score(r.global_trust, r.local_trust, config.beta)
            return r.global_trust

        return min(survivors, key=lambda r: (-score(r), r.peer_id)).peer_id

    weights = np.array([max(r.global_trust, 0.0) for r in survivors])
    total = weights.sum()
    if total <= 0:
        return survivors[int(rng.integers(len(survivors)))].peer_id
    return survivors[int(rng.choice(len(survivors), p=weights / total))].peer_id


def select_group_source(group_responders: Sequence[int], rng: np.random.Generator) -> int:
    """Uniform pick among a collective's own members."""
    if not group_responders:
        raise ValueError("No same-group responder to pick from")
    return int(group_responders[int(rng.integers(len(group_responders)))])
