"""
Peer behavior: building populations, serving files and giving feedback.
"""

from typing import List

import numpy as np

from ..models.simulation import Behavior, Feedback, LedgerEntry, MessageTally, PeerProfile, SimConfig
from .ledger import Ledger


def build_population(config: SimConfig, rng: np.random.Generator) -> List[PeerProfile]:
    """
    Assign behavior models to peer ids.

    A seeded permutation picks which ids are pure malicious, unpredictable and
    collective members; everyone else is good. Unpredictable peers switch at
    a uniform point of ``config.switch_window`` over the observed cycles,
    counted from the end of the warm-up.
    """
    order = rng.permutation(config.num_peers)
    profiles = [PeerProfile(id=i) for i in range(config.num_peers)]

    cursor = 0
    for peer in order[cursor:cursor + config.malicious_count]:
        profiles[peer] = PeerProfile(id=int(peer), behavior=Behavior.PURE_MALICIOUS)
    cursor += config.malicious_count

    low, high = config.switch_window
    for peer in order[cursor:cursor + config.unpredictable_count]:
        offset = int(rng.integers(int(low * config.num_transactions), int(high * config.num_transactions) + 1))
        switch = config.transient_cycles + offset
        profiles[peer] = PeerProfile(id=int(peer), behavior=Behavior.UNPREDICTABLE, switch_transaction=switch)
    cursor += config.unpredictable_count

    for group in range(config.collective_groups):
        for peer in order[cursor:cursor + config.group_size]:
            profiles[peer] = PeerProfile(id=int(peer), behavior=Behavior.COLLECTIVE, group_id=group)
        cursor += config.group_size

    return profiles


def acts_per_profile(rng: np.random.Generator, fidelity: float) -> bool:
    """One fidelity draw: True means the peer follows its profile this time."""
    return bool(rng.random() < fidelity)


def is_malicious_aligned(rater: PeerProfile, source: PeerProfile, clock: int) -> bool:
    """Whether a malicious-acting rater rewards ``source``."""
    if source.behavior == Behavior.COLLECTIVE:
        return rater.same_group(source)
    return source.is_malicious_at(clock)


def transact(
    source: PeerProfile,
    rng: np.random.Generator,
    fidelity: float = 1.0,
    clock: int = 0,
) -> bool:
    """
    Serve one file.

    Args:
        source: Selected source peer
        rng: Behavior stream
        fidelity: Probability the source acts per its profile
        clock: Current query cycle

    Returns:
        True when the file is authentic
    """
    intended = not source.is_malicious_at(clock)
    if acts_per_profile(rng, fidelity):
        return intended
    return not intended


def feedback_for(
    rater: PeerProfile,
    source: PeerProfile,
    authentic: bool,
    clock: int,
    honest: bool,
    rng: np.random.Generator,
    neutral_probability: float = 0.0,
) -> Feedback:
    """
    Outcome a rater records.

    An honest rater reports what it got, optionally calling an authentic file
    neutral. A dishonest rater rewards malicious-aligned sources and punishes
    everybody else regardless of the file.
    """
    if honest:
        if not authentic:
            return Feedback.UNSATISFACTORY
        if neutral_probability and rng.random() < neutral_probability:
            return Feedback.NEUTRAL
        return Feedback.SATISFACTORY

    if is_malicious_aligned(rater, source, clock):
        return Feedback.SATISFACTORY
    return Feedback.UNSATISFACTORY


def give_feedback(
    rater: PeerProfile,
    source: PeerProfile,
    authentic: bool,
    ledger: Ledger,
    tally: MessageTally,
    rng: np.random.Generator,
    clock: int = 0,
    fidelity: float = 1.0,
    neutral_probability: float = 0.0,
) -> LedgerEntry:
    """
    Record the rater's feedback about one download.

    The rater's intended honesty follows its profile at ``clock`` and is
    flipped with probability ``1 - fidelity``. One feedback message is sent;
    a normalized scheme would have resent the rater's whole source row.

    Returns:
        Updated ledger entry
    """
    honest = not rater.is_malicious_at(clock)
    if not acts_per_profile(rng, fidelity):
        honest = not honest

    outcome = feedback_for(rater, source, authentic, clock, honest, rng, neutral_probability)
    entry = ledger.record(rater.id, source.id, outcome)

    tally.feedback_messages += 1
    tally.hypothetical_normalized_feedback += ledger.source_count(rater.id)
    return entry
