"""
Test the building blocks of the network simulator.
"""

from unittest.mock import MagicMock

import networkx as nx
import numpy as np
import pytest

from src.models.simulation import Behavior, Feedback, MessageTally, PeerProfile, SimConfig
from src.models.trust import GlobalTrustVector, SolverConfig, TransactionCounts, WeightConfig
from src.simnet.behavior import build_population, feedback_for, give_feedback, transact
from src.simnet.holders import holder_load, ring_order, trust_holders_of
from src.simnet.ledger import Ledger
from src.simnet.placement import FilePlacement, place_files, replica_counts
from src.simnet.selection import Responder, select_group_source, select_source
from src.simnet.simulator import update_round
from src.simnet.topology import Overlay, issue_query
from src.trust.errors import ConvergenceError
from src.trust.metrics import local_trust
from src.trust.solver import solve_absolute_trust


class TestPlacement:
    """Test Zipf file placement."""

    def test_flat_popularity(self):
        """Test that gamma 0 gives every file the same replica count."""
        counts = replica_counts(100, 50, 0.0, min_replicas=3)
        assert np.all(counts == 3)

    def test_popularity_ratio(self):
        """Test the replica ratio between the most and least popular file."""
        counts = replica_counts(1000, 1000, 0.4, min_replicas=10)
        assert counts[-1] == 10
        # 1000 ** 0.4 is about 15.85
        assert counts[0] / counts[-1] == pytest.approx(1000 ** 0.4, rel=0.01)
        assert np.all(np.diff(counts) <= 0)

    def test_capped_at_peer_count(self):
        """Test replica counts never exceed the peer count."""
        counts = replica_counts(1000, 20, 0.8, min_replicas=5)
        assert counts.max() == 20
        assert counts.min() >= 1

    def test_distinct_owners_and_determinism(self):
        """Test owners are distinct and the same seed gives the same placement."""
        config = SimConfig(num_peers=30, num_files=200)
        first = place_files(config, np.random.default_rng(5))
        second = place_files(config, np.random.default_rng(5))

        for file_id in range(config.num_files):
            owners = first.owners_of(file_id)
            assert len(set(owners.tolist())) == len(owners)
            np.testing.assert_array_equal(owners, second.owners_of(file_id))
            assert all(first.owns(int(p), file_id) for p in owners)

    def test_files_of_inverts_owners_of(self):
        """Test the per-peer file index."""
        placement = FilePlacement(4, [np.array([0, 2]), np.array([1]), np.array([2, 3])])
        assert placement.files_of(2) == {0, 2}
        assert placement.files_of(1) == {1}
        assert placement.replicas().tolist() == [2, 1, 2]
        assert placement.num_files == 3


class TestIssueQuery:
    """Test TTL-bounded query flooding."""

    def setup_method(self):
        """Set up a ten-peer ring with one file at distance 4."""
        self.ring = Overlay(nx.cycle_graph(10))
        self.ring_placement = FilePlacement(10, [np.array([4])])

    def test_ttl_boundaries(self):
        """Test which TTL values reach the owner."""
        test_cases = [(0, []), (3, []), (4, [4]), (7, [4])]

        for ttl, expected in test_cases:
            assert issue_query(0, 0, ttl, self.ring, self.ring_placement) == expected, f"Failed for ttl={ttl}"

    def test_complete_graph_single_hop(self):
        """Test one hop reaches every owner of a complete graph."""
        overlay = Overlay(nx.complete_graph(5))
        placement = FilePlacement(5, [np.array([3, 1, 2])])
        assert issue_query(0, 0, 1, overlay, placement) == [1, 2, 3]

    def test_requester_owning_the_file_is_an_error(self):
        """Test a peer cannot query for a file it holds."""
        with pytest.raises(ValueError):
            issue_query(4, 0, 2, self.ring, self.ring_placement)

    def test_larger_ttl_reaches_a_superset(self):
        """Test responders only grow with the TTL."""
        rng = np.random.default_rng(41)
        for case in range(1000):
            n = int(rng.integers(5, 25))
            overlay = Overlay(nx.gnp_random_graph(n, 0.2, seed=case))
            requester = int(rng.integers(n))
            others = [p for p in range(n) if p != requester]
            owners = rng.choice(others, size=int(rng.integers(1, len(others) + 1)), replace=False)
            placement = FilePlacement(n, [owners])

            low, high = sorted(int(v) for v in rng.integers(0, 6, size=2))
            near = set(issue_query(requester, 0, low, overlay, placement))
            far = set(issue_query(requester, 0, high, overlay, placement))
            assert near <= far
            assert requester not in far

    def test_build_overlays(self):
        """Test ring, complete and random regular overlays."""
        ring = Overlay.build(SimConfig(num_peers=12, topology="ring"))
        assert all(d == 2 for _, d in ring.graph.degree())

        complete = Overlay.build(SimConfig(num_peers=6, topology="complete"))
        assert complete.graph.number_of_edges() == 15

        # Odd peer count with odd degree falls back to an even degree
        regular = Overlay.build(SimConfig(num_peers=11, topology_degree=3), np.random.default_rng(1))
        assert all(d == 2 for _, d in regular.graph.degree())


class TestSelectSource:
    """Test download source selection."""

    def setup_method(self):
        """Set up proportional and max-mode configs."""
        self.config = SimConfig(num_peers=10)
        self.max_config = SimConfig(num_peers=10, selection_mode="max")

    def test_proportional_share(self):
        """Test sampling in proportion to global trust among survivors."""
        rng = np.random.default_rng(51)
        responders = [Responder(0, 7.0), Responder(1, 6.0), Responder(2, 3.0)]
        picks = [select_source(responders, self.config, rng) for _ in range(100_000)]

        # Peer 2 sits below global_ref
        assert 2 not in picks
        assert picks.count(0) / len(picks) == pytest.approx(7 / 13, abs=0.01)

    def test_rejects_when_nobody_reaches_global_ref(self):
        """Test rejection when every responder is below the threshold."""
        rng = np.random.default_rng(52)
        responders = [Responder(0, 5.4), Responder(1, 2.0)]
        assert select_source(responders, self.config, rng) is None
        assert select_source([], self.config, rng) is None

    def test_accept_all_lifts_the_threshold(self):
        """Test the warm-up selection keeps low-trust responders."""
        rng = np.random.default_rng(56)
        responders = [Responder(0, 5.4), Responder(1, 2.0)]
        picks = {select_source(responders, self.config, rng, accept_all=True) for _ in range(200)}
        assert picks == {0, 1}

        # Max mode still ranks by score
        assert select_source(responders, self.max_config, rng, accept_all=True) == 0

    def test_max_mode(self):
        """Test max-mode scoring and tie-breaking."""
        rng = np.random.default_rng(53)
        test_cases = [
            # Highest global trust
            ([Responder(0, 7.0), Responder(1, 9.0)], 1),
            # Tie goes to the lowest id
            ([Responder(3, 8.0), Responder(1, 8.0)], 1),
            # Local history outweighs a small global lead
            ([Responder(0, 8.0, 2.0), Responder(1, 7.0, 10.0)], 1),
            # No history means global trust only
            ([Responder(0, 8.0), Responder(1, 7.0, 10.0)], 0),
        ]

        for responders, expected in test_cases:
            assert select_source(responders, self.max_config, rng) == expected, f"Failed for {responders}"

    def test_baselines_never_reject(self):
        """Test relative trust vectors skip the threshold and local mixing."""
        rng = np.random.default_rng(54)
        config = SimConfig(num_peers=10, algorithm="eigentrust", selection_mode="max")
        responders = [Responder(0, 0.01, 10.0), Responder(1, 0.02, 1.0)]
        assert select_source(responders, config, rng) == 1

        proportional = SimConfig(num_peers=10, algorithm="powertrust")
        assert select_source([Responder(0, 0.0), Responder(1, 0.0)], proportional, rng) in (0, 1)

    def test_group_source(self):
        """Test uniform picks inside a collective."""
        rng = np.random.default_rng(55)
        assert select_group_source([7], rng) == 7
        assert select_group_source([2, 5], rng) in (2, 5)
        with pytest.raises(ValueError):
            select_group_source([], rng)


class TestBehavior:
    """Test serving files."""

    def setup_method(self):
        """Set up one peer of every behavior."""
        self.good = PeerProfile(id=0)
        self.malicious = PeerProfile(id=1, behavior=Behavior.PURE_MALICIOUS)
        self.unpredictable = PeerProfile(id=2, behavior=Behavior.UNPREDICTABLE, switch_transaction=100)
        self.collective = PeerProfile(id=3, behavior=Behavior.COLLECTIVE, group_id=0)

    def test_transact_per_profile(self):
        """Test the file each profile serves with full fidelity."""
        rng = np.random.default_rng(61)
        test_cases = [
            ((self.good, 0), True),
            ((self.malicious, 0), False),
            # Unpredictable peers turn at their switch cycle
            ((self.unpredictable, 99), True),
            ((self.unpredictable, 100), False),
            # Collectives serve inauthentic files to everybody
            ((self.collective, 0), False),
        ]

        for (source, clock), expected in test_cases:
            assert transact(source, rng, fidelity=1.0, clock=clock) is expected, f"Failed for peer {source.id}"

    def test_zero_fidelity_inverts(self):
        """Test fidelity 0 always acts against the profile."""
        rng = np.random.default_rng(62)
        assert transact(self.good, rng, fidelity=0.0) is False
        assert transact(self.malicious, rng, fidelity=0.0) is True
        assert transact(self.collective, rng, fidelity=0.0) is True

    def test_fidelity_rate(self):
        """Test the authentic share of a good source at fidelity 0.95."""
        rng = np.random.default_rng(63)
        outcomes = [transact(self.good, rng, fidelity=0.95) for _ in range(100_000)]
        assert sum(outcomes) / len(outcomes) == pytest.approx(0.95, abs=0.005)

    def test_build_population(self):
        """Test behavior counts, ids, switch window and group sizes."""
        config = SimConfig(
            num_peers=100,
            num_transactions=1000,
            transient_cycles=0,
            malicious_fraction=0.2,
            unpredictable_fraction=0.1,
            collective_groups=2,
        )
        profiles = build_population(config, np.random.default_rng(64))

        by_behavior = {b: [p for p in profiles if p.behavior == b] for b in Behavior}
        assert len(by_behavior[Behavior.PURE_MALICIOUS]) == 20
        assert len(by_behavior[Behavior.UNPREDICTABLE]) == 10
        assert len(by_behavior[Behavior.COLLECTIVE]) == 10
        assert len(by_behavior[Behavior.GOOD]) == 60
        assert [p.id for p in profiles] == list(range(100))
        assert all(200 <= p.switch_transaction <= 500 for p in by_behavior[Behavior.UNPREDICTABLE])
        assert sorted(p.group_id for p in by_behavior[Behavior.COLLECTIVE]) == [0] * 5 + [1] * 5

    def test_switch_counts_from_the_end_of_warm_up(self):
        """Test unpredictable peers stay good through the warm-up."""
        config = SimConfig(num_transactions=1000, transient_cycles=300, unpredictable_fraction=0.2)
        profiles = build_population(config, np.random.default_rng(65))

        switches = [p.switch_transaction for p in profiles if p.behavior == Behavior.UNPREDICTABLE]
        assert len(switches) == 20
        assert all(500 <= s <= 800 for s in switches)

    def test_population_must_fit(self):
        """Test behavior shares above 100% are refused."""
        with pytest.raises(ValueError):
            SimConfig(num_peers=10, malicious_fraction=0.6, unpredictable_fraction=0.5)


class TestFeedback:
    """Test the feedback a rater records."""

    def setup_method(self):
        """Set up raters and sources."""
        self.rng = np.random.default_rng(71)
        self.good = PeerProfile(id=0)
        self.other_good = PeerProfile(id=6)
        self.malicious = PeerProfile(id=1, behavior=Behavior.PURE_MALICIOUS)
        self.collective_a = PeerProfile(id=3, behavior=Behavior.COLLECTIVE, group_id=0)
        self.collective_b = PeerProfile(id=4, behavior=Behavior.COLLECTIVE, group_id=0)
        self.collective_c = PeerProfile(id=5, behavior=Behavior.COLLECTIVE, group_id=1)

    def test_feedback_outcomes(self):
        """Test honest and dishonest outcomes per rater and source."""
        test_cases = [
            # Honest raters report the file
            ((self.good, self.other_good, True, True), Feedback.SATISFACTORY),
            ((self.good, self.malicious, False, True), Feedback.UNSATISFACTORY),
            # Dishonest raters reward malicious-aligned sources only
            ((self.malicious, self.good, True, False), Feedback.UNSATISFACTORY),
            ((self.malicious, self.malicious, False, False), Feedback.SATISFACTORY),
            ((self.collective_a, self.collective_b, False, False), Feedback.SATISFACTORY),
            ((self.collective_a, self.collective_c, False, False), Feedback.UNSATISFACTORY),
        ]

        for (rater, source, authentic, honest), expected in test_cases:
            result = feedback_for(rater, source, authentic, 0, honest, self.rng)
            assert result == expected, f"Failed for rater {rater.id} about {source.id}"

    def test_neutral_feedback(self):
        """Test honest raters calling authentic files neutral."""
        outcome = feedback_for(self.good, self.other_good, True, 0, True, self.rng, neutral_probability=1.0)
        assert outcome == Feedback.NEUTRAL
        outcome = feedback_for(self.good, self.malicious, False, 0, True, self.rng, neutral_probability=1.0)
        assert outcome == Feedback.UNSATISFACTORY

    def test_give_feedback_updates_ledger_and_tally(self):
        """Test ledger counts, local trust and message tally."""
        ledger = Ledger(10, WeightConfig())
        tally = MessageTally()

        entry = give_feedback(self.good, self.malicious, False, ledger, tally, self.rng)
        assert entry.counts == TransactionCounts(n_b=1)
        assert entry.local_trust == 1.0

        give_feedback(self.good, self.other_good, True, ledger, tally, self.rng)
        entry = give_feedback(self.good, self.malicious, True, ledger, tally, self.rng)
        assert entry.counts == TransactionCounts(n_g=1, n_b=1)
        assert entry.local_trust == pytest.approx(5.5)

        # A normalized scheme resends the whole source row: 1, then 2, then 2
        assert tally.feedback_messages == 3
        assert tally.hypothetical_normalized_feedback == 1 + 2 + 2
        assert tally.average_source_set_size() == pytest.approx(5 / 3)
        assert tally.saving_per_update() == pytest.approx(2 / 3)

    def test_malicious_rater_lies_with_full_fidelity(self):
        """Test a pure malicious rater punishes an authentic good source."""
        ledger = Ledger(10, WeightConfig())
        entry = give_feedback(self.malicious, self.good, True, ledger, MessageTally(), self.rng, fidelity=1.0)
        assert entry.counts.n_b == 1

    def test_ledger_stays_consistent(self):
        """Test local trust always matches the counts over random feedback."""
        rng = np.random.default_rng(72)
        weights = WeightConfig()
        ledger = Ledger(8, weights)
        expected = {}
        outcomes = list(Feedback)
        fields = {Feedback.SATISFACTORY: 0, Feedback.NEUTRAL: 1, Feedback.UNSATISFACTORY: 2}

        for _ in range(1000):
            rater, ratee = (int(v) for v in rng.choice(8, size=2, replace=False))
            outcome = outcomes[int(rng.integers(3))]
            ledger.record(rater, ratee, outcome)
            counts = expected.setdefault((rater, ratee), [0, 0, 0])
            counts[fields[outcome]] += 1

        assert len(ledger) == len(expected)
        for (rater, ratee), (n_g, n_n, n_b) in expected.items():
            entry = ledger.get(rater, ratee)
            counts = TransactionCounts(n_g=n_g, n_n=n_n, n_b=n_b)
            assert entry.counts == counts
            assert entry.local_trust == pytest.approx(local_trust(counts, weights))

        assert ledger.trust_matrix().nnz == len(expected)

    def test_self_rating_rejected(self):
        """Test a peer cannot rate itself."""
        with pytest.raises(ValueError):
            Ledger(3, WeightConfig()).record(1, 1, Feedback.SATISFACTORY)


class TestTrustHolders:
    """Test trust holder assignment."""

    def test_holders_exclude_the_peer(self):
        """Test holders are distinct and never the peer itself."""
        for peer in range(50):
            holders = trust_holders_of(peer, 50, replication=3)
            assert len(holders) == 3
            assert len(set(holders)) == 3
            assert peer not in holders

    def test_deterministic_ring(self):
        """Test the hash ring is stable and a permutation."""
        assert trust_holders_of(17, 100, 2) == trust_holders_of(17, 100, 2)
        assert sorted(ring_order(100)) == list(range(100))

    def test_load_is_balanced(self):
        """Test every peer holds exactly ``replication`` others."""
        for replication in (1, 2, 4):
            load = holder_load(100, replication)
            assert np.all(load == replication)

    def test_invalid_arguments(self):
        """Test out-of-range peers and replication."""
        test_cases = [(5, 5, 1), (-1, 5, 1), (0, 5, 5), (0, 5, 0)]

        for peer, n, replication in test_cases:
            with pytest.raises(ValueError):
                trust_holders_of(peer, n, replication)


class TestUpdateRound:
    """Test one global trust update of the simulator."""

    def setup_method(self):
        """Set up a five-peer config."""
        self.config = SimConfig(num_peers=5)

    def test_empty_ledger_keeps_initial_value(self):
        """Test an empty ledger leaves everybody at the initial value."""
        ledger = Ledger(5, WeightConfig())
        outcome = update_round(ledger, GlobalTrustVector.uniform(5, 5.5), self.config)
        np.testing.assert_array_equal(outcome.vector.values, np.full(5, 5.5))
        assert outcome.converged
        assert outcome.trust_read_messages == 0

    def test_unchanged_ledger_warm_start(self):
        """Test a second round on the same ledger starts at the fixed point."""
        ledger = Ledger(5, WeightConfig())
        for rater, ratee, outcome in [(0, 1, "g"), (1, 2, "b"), (2, 0, "n"), (3, 0, "g"), (4, 3, "g")]:
            ledger.record(rater, ratee, Feedback(outcome))

        first = update_round(ledger, GlobalTrustVector.uniform(5, 5.5), self.config)
        second = update_round(ledger, first.vector, self.config)

        assert second.vector.iterations_used <= 2
        # iterations x ledger entries x holders
        assert first.trust_read_messages == first.vector.iterations_used * 5 * self.config.holder_replication
        np.testing.assert_allclose(second.vector.values, first.vector.values, atol=1e-3)

    def test_warm_start_needs_fewer_iterations(self):
        """Test a small ledger change converges faster from the previous vector."""
        rng = np.random.default_rng(81)
        weights = WeightConfig()
        ledger = Ledger(100, weights)
        outcomes = list(Feedback)
        for _ in range(3000):
            rater, ratee = (int(v) for v in rng.choice(100, size=2, replace=False))
            ledger.record(rater, ratee, outcomes[int(rng.choice(3, p=[0.7, 0.1, 0.2]))])

        solver = SolverConfig(initial_value=weights.w_n)
        previous = solve_absolute_trust(ledger.trust_matrix(), solver)
        for _ in range(5):
            rater, ratee = (int(v) for v in rng.choice(100, size=2, replace=False))
            ledger.record(rater, ratee, Feedback.SATISFACTORY)

        cold = solve_absolute_trust(ledger.trust_matrix(), solver)
        warm = solve_absolute_trust(ledger.trust_matrix(), solver, initial=previous)
        assert warm.iterations_used < cold.iterations_used
        np.testing.assert_allclose(warm.values, cold.values, atol=1e-3)

    def test_non_converged_round_keeps_last_iterate(self):
        """Test a failed solve still hands back its last iterate and read cost."""
        ledger = Ledger(5, WeightConfig())
        ledger.record(0, 1, Feedback.SATISFACTORY)
        last = GlobalTrustVector(values=np.full(5, 6.0), iterations_used=4, converged=False)

        aggregator = MagicMock()
        aggregator.name = "absolute"
        aggregator.reads_per_iteration = 2
        aggregator.compute.side_effect = ConvergenceError(last)

        outcome = update_round(ledger, GlobalTrustVector.uniform(5, 5.5), self.config, aggregator)
        assert outcome.vector is last
        assert not outcome.converged
        assert outcome.trust_read_messages == 4 * 1 * 2
