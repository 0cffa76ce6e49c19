"""
Round-based, seeded simulation of a file-sharing network under a trust aggregator.
"""

from typing import List, NamedTuple, Optional

import numpy as np
from loguru import logger

from ..aggregators import BaseAggregator, create_aggregator
from ..models.simulation import Behavior, ExperimentResult, MessageTally, SimConfig
from ..models.trust import GlobalTrustVector
from ..trust.errors import ConvergenceError
from .behavior import acts_per_profile, build_population, give_feedback, transact
from .holders import holder_load
from .ledger import Ledger
from .placement import place_files
from .selection import Responder, select_group_source, select_source
from .topology import Overlay, issue_query

# Independent streams spawned from each trial seed
STREAMS = ("placement", "topology", "workload", "behavior", "selection")


class UpdateOutcome(NamedTuple):
    vector: GlobalTrustVector
    trust_read_messages: int
    converged: bool


def update_round(
    ledger: Ledger,
    previous: GlobalTrustVector,
    config: SimConfig,
    aggregator: Optional[BaseAggregator] = None,
) -> UpdateOutcome:
    """
    Recompute global trust from the ledger.

    Each iteration every trust holder fetches the current trust of each rater
    of the peers it manages, so reads cost ``iterations * ratings * replication``
    messages. A non-converged solve keeps its last iterate.

    Args:
        ledger: Current download history
        previous: Vector of the previous round, used as warm start
        config: Simulation parameters
        aggregator: Aggregator to use; Absolute Trust by default

    Returns:
        New vector, the trust-read message count and the convergence flag
    """
    aggregator = aggregator or create_aggregator(config)
    try:
        vector = aggregator.compute(ledger, previous)
    except ConvergenceError as e:
        logger.warning(f"{aggregator.name} update did not converge: {e}")
        vector = e.result

    reads = vector.iterations_used * len(ledger) * aggregator.reads_per_iteration
    return UpdateOutcome(vector=vector, trust_read_messages=reads, converged=vector.converged)


class Simulator:
    """
    One trial of the file-sharing network.

    Every query cycle a random peer asks for a random file it lacks, floods
    the query with escalating TTL, picks a source, downloads and rates it.
    Global trust is recomputed every ``update_period`` cycles. The first
    ``transient_cycles`` cycles only build history: no responder is rejected
    and no count, load or message lands in the result.
    """

    def __init__(self, config: SimConfig):
        self.config = config
        placement_rng, topology_rng, self.workload_rng, self.behavior_rng, self.selection_rng = (
            np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(config.seed).spawn(len(STREAMS))
        )

        self.profiles = build_population(config, self.behavior_rng)
        self.placement = place_files(config, placement_rng)
        for profile in self.profiles:
            profile.owned_files = set(self.placement.files_of(profile.id))

        self.overlay = Overlay.build(config, topology_rng)
        self.good_peers = [p.id for p in self.profiles if p.behavior == Behavior.GOOD]
        self.aggregator = create_aggregator(config, self.good_peers)
        self.ledger = Ledger(config.num_peers, config.weights)
        self.tally = MessageTally()
        self.warmup_tally = MessageTally()
        self.trust = self.aggregator.initial_vector()

        self.result = ExperimentResult(
            algorithm=config.algorithm,
            per_peer_load=[0] * config.num_peers,
            holder_load=holder_load(config.num_peers, config.holder_replication).tolist(),
            good_peers=self.good_peers,
            config=config,
        )

    def _pick_file(self, requester: int) -> Optional[int]:
        owned = self.placement.files_of(requester)
        if len(owned) >= self.config.num_files:
            return None
        while True:
            file_id = int(self.workload_rng.integers(self.config.num_files))
            if file_id not in owned:
                return file_id

    def choose_source(self, requester: int, responders: List[int], accept_all: bool = False) -> Optional[int]:
        """Source for ``requester``, or None; acting collectives stay inside their group."""
        profile = self.profiles[requester]
        if profile.behavior == Behavior.COLLECTIVE and acts_per_profile(
            self.behavior_rng, self.config.behavior_fidelity
        ):
            group = [r for r in responders if profile.same_group(self.profiles[r])]
            if group:
                return select_group_source(group, self.selection_rng)

        candidates = [
            Responder(r, self.trust[r], self.ledger.local_trust_of(requester, r)) for r in responders
        ]
        return select_source(candidates, self.config, self.selection_rng, accept_all=accept_all)

    def observing(self, clock: int) -> bool:
        """Whether ``clock`` lies past the warm-up."""
        return clock >= self.config.transient_cycles

    def query_cycle(self, clock: int) -> None:
        config = self.config
        observed = self.observing(clock)
        requester = int(self.workload_rng.integers(config.num_peers))
        file_id = self._pick_file(requester)
        if file_id is None:
            if observed:
                self.result.rejected_queries += 1
            return

        ttl = config.ttl_initial
        while True:
            responders = issue_query(requester, file_id, ttl, self.overlay, self.placement)
            source = self.choose_source(requester, responders, accept_all=not observed) if responders else None
            if source is not None:
                break
            if ttl + config.ttl_step > config.ttl_upper:
                if observed:
                    self.result.rejected_queries += 1
                return
            ttl += config.ttl_step
            if observed:
                self.result.ttl_escalations += 1

        authentic = transact(self.profiles[source], self.behavior_rng, fidelity=config.behavior_fidelity, clock=clock)
        if observed:
            if authentic:
                self.result.authentic_count += 1
            else:
                self.result.inauthentic_count += 1
            self.result.per_peer_load[source] += 1

        give_feedback(
            self.profiles[requester],
            self.profiles[source],
            authentic,
            self.ledger,
            self.tally if observed else self.warmup_tally,
            self.behavior_rng,
            clock=clock,
            fidelity=config.behavior_fidelity,
            neutral_probability=config.neutral_probability,
        )

    def update(self, clock: int) -> None:
        outcome = update_round(self.ledger, self.trust, self.config, self.aggregator)
        self.trust = outcome.vector
        if not self.observing(clock):
            return

        self.tally.trust_read_messages += outcome.trust_read_messages
        self.result.residual_traces.append(list(outcome.vector.residual_trace))
        if not outcome.converged:
            self.result.nonconverged_updates += 1

    def run(self) -> ExperimentResult:
        config = self.config
        logger.debug(
            f"Trial seed={config.seed} algorithm={config.algorithm}: "
            f"{config.malicious_count} malicious, {config.unpredictable_count} unpredictable, "
            f"{config.collective_groups} collectives, {config.transient_cycles} warm-up cycles"
        )

        for clock in range(config.total_cycles):
            self.query_cycle(clock)
            if (clock + 1) % config.update_period == 0:
                self.update(clock)
            if clock + 1 == config.transient_cycles:
                logger.debug(
                    f"Trial seed={config.seed}: warm-up done, {len(self.ledger)} rated pairs, "
                    f"trust in [{self.trust.values.min():.3f}, {self.trust.values.max():.3f}]"
                )

        self.result.message_tally = self.tally
        if self.result.nonconverged_updates:
            logger.warning(
                f"Trial seed={config.seed}: {self.result.nonconverged_updates} update rounds did not converge"
            )
        return self.result


def run_trial(config: SimConfig) -> ExperimentResult:
    """Run one trial; module-level so worker processes can pickle it."""
    return Simulator(config).run()
