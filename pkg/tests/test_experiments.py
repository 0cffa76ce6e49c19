"""
Test metrics, sweeps and the convergence study.
"""

import numpy as np
import pandas as pd
import pytest

from src.experiments.convergence import DEFAULT_ALPHAS, convergence_study, random_trust_matrix
from src.experiments.metrics import authentic_percent, load_stddev
from src.experiments.sweep import DEFAULT_VALUES, UNPREDICTABLE_BASE_MALICIOUS, scenario_config, simulate, sweep
from src.models.simulation import ExperimentResult, SimConfig
from src.simnet import behavior
from src.simnet.simulator import Simulator
from src.utils.data_export import RESULT_COLUMNS


def tiny_base(**overrides) -> SimConfig:
    params = dict(
        num_peers=20,
        num_files=40,
        num_transactions=200,
        transient_cycles=0,
        update_period=50,
        topology_degree=4,
        seed=11,
    )
    params.update(overrides)
    return SimConfig(**params)


class TestTrialMetrics:
    """Test per-trial metrics."""

    def setup_method(self):
        """Set up a ten-peer config."""
        self.config = SimConfig(num_peers=10)

    def test_authentic_percent(self):
        """Test the authentic share of completed downloads."""
        test_cases = [((100, 0), 100.0), ((95, 5), 95.0), ((0, 4), 0.0)]

        for (authentic, inauthentic), expected in test_cases:
            result = ExperimentResult(
                algorithm="absolute",
                authentic_count=authentic,
                inauthentic_count=inauthentic,
                config=self.config,
            )
            assert authentic_percent(result) == pytest.approx(expected)

    def test_authentic_percent_needs_transactions(self):
        """Test a trial without downloads has no authentic share."""
        result = ExperimentResult(algorithm="absolute", rejected_queries=5, config=self.config)
        with pytest.raises(ValueError):
            authentic_percent(result)

    def test_load_stddev_over_good_peers(self):
        """Test load spread over good peers only."""
        result = ExperimentResult(
            algorithm="absolute",
            per_peer_load=[2, 4, 90],
            good_peers=[0, 1],
            config=self.config,
        )
        assert load_stddev(result) == pytest.approx(1.0)
        assert load_stddev(result, good_peers=[0, 1, 2]) == pytest.approx(np.std([2, 4, 90]))

    def test_load_stddev_needs_two_peers(self):
        """Test load spread needs two good peers."""
        result = ExperimentResult(algorithm="absolute", per_peer_load=[3, 1], good_peers=[0], config=self.config)
        with pytest.raises(ValueError):
            load_stddev(result)


class TestScenarioConfig:
    """Test how sweep points map onto trial configs."""

    def setup_method(self):
        """Set up a tiny base config."""
        self.base = tiny_base()

    def test_scenarios(self):
        """Test each scenario sets its population shares."""
        malicious = scenario_config(self.base, "malicious", 0.3, "eigentrust", 5)
        assert (malicious.malicious_fraction, malicious.algorithm, malicious.seed) == (0.3, "eigentrust", 5)

        unpredictable = scenario_config(self.base, "unpredictable", 0.2, "absolute", 5)
        assert unpredictable.malicious_fraction == UNPREDICTABLE_BASE_MALICIOUS
        assert unpredictable.unpredictable_fraction == 0.2

        collective = scenario_config(self.base, "collective", 2, "powertrust", 5)
        assert collective.collective_groups == 2
        assert collective.malicious_fraction == 0.0

    def test_base_settings_carry_over(self):
        """Test base settings reach every trial."""
        config = scenario_config(self.base, "malicious", 0.1, "absolute", 3)
        assert config.num_peers == self.base.num_peers
        assert config.solver == self.base.solver
        assert config.global_ref == self.base.global_ref

    def test_invalid_points(self):
        """Test invalid sweep points are refused."""
        test_cases = [
            # Unknown names
            ("sybil", 0.1, "absolute"),
            ("malicious", 0.1, "pagerank"),
            # Fractional group count
            ("collective", 1.5, "absolute"),
            # Population above 100%
            ("unpredictable", 0.95, "absolute"),
        ]

        for scenario, value, algorithm in test_cases:
            with pytest.raises(ValueError):
                scenario_config(self.base, scenario, value, algorithm, 1)


class TestSweep:
    """Test sweep tables."""

    def test_single_trial_table(self):
        """Test the table of a one-trial sweep."""
        table = sweep("malicious", ["absolute", "eigentrust"], [0.1, 0.2], trials=1, base=tiny_base())

        assert set(RESULT_COLUMNS) <= set(table.columns)
        assert table["scenario_value"].tolist() == [0.1, 0.1, 0.2, 0.2]
        assert table["algorithm"].tolist() == ["absolute", "eigentrust", "absolute", "eigentrust"]
        assert (table["stderr_authentic_pct"] == 0).all()
        assert (table["trials"] == 1).all()
        assert (table["seed_base"] == 11).all()
        assert table["mean_authentic_pct"].between(0, 100).all()

    def test_sweep_is_deterministic(self):
        """Test a sweep is repeatable."""
        first = sweep("collective", ["absolute"], [1], trials=2, base=tiny_base())
        second = sweep("collective", ["absolute"], [1], trials=2, base=tiny_base())
        pd.testing.assert_frame_equal(first, second)

    def test_trials_must_be_positive(self):
        """Test zero trials are refused."""
        with pytest.raises(ValueError):
            sweep("malicious", ["absolute"], [0.1], trials=0, base=tiny_base())

    def test_simulate_seeds_trials(self):
        """Test trials take consecutive seeds."""
        summary, results = simulate(tiny_base(malicious_fraction=0.1), trials=2)
        assert len(summary) == 1
        assert [r.config.seed for r in results] == [11, 12]
        assert summary.iloc[0]["trials"] == 2


class TestConvergenceStudy:
    """Test residual traces across alpha values."""

    def setup_method(self):
        """Set up a ten-iteration study."""
        self.table = convergence_study(iterations=10)

    def test_shape(self):
        """Test one row per alpha and iteration."""
        assert list(self.table.columns) == ["alpha", "iteration", "residual"]
        assert len(self.table) == len(DEFAULT_ALPHAS) * 10

    def test_alpha_one_third_settles_by_seventh_iteration(self):
        """Test alpha 1/3 settles within seven iterations."""
        trace = self.table[np.isclose(self.table["alpha"], 1 / 3)].set_index("iteration")["residual"]
        assert trace[7] < 1e-3

    def test_residuals_decrease(self):
        """Test residuals fall at every iteration."""
        for alpha, group in self.table.groupby("alpha"):
            residuals = group.sort_values("iteration")["residual"].to_numpy()
            residuals = residuals[residuals > 1e-12]
            assert np.all(np.diff(residuals) < 0), f"Residual not decreasing for alpha={alpha}"

    def test_smaller_alpha_converges_faster(self):
        """Test smaller alpha reaches the bound sooner."""
        table = convergence_study(alphas=[1 / 2, 1 / 3, 1 / 4, 1 / 5], iterations=20)
        first_below = {
            alpha: int(group[group["residual"] < 1e-4]["iteration"].min())
            for alpha, group in table.groupby("alpha")
        }
        ordered = [first_below[a] for a in sorted(first_below, reverse=True)]
        assert ordered == sorted(ordered, reverse=True)

    def test_random_matrix_has_no_unrated_peers(self):
        """Test random study matrices rate every peer."""
        for seed in range(20):
            matrix = random_trust_matrix(30, seed=seed, density=0.05)
            assert matrix.rated_mask().all()


ALGORITHMS = ["absolute", "eigentrust", "powertrust"]
FULL_SCALE_TRIALS = 10
FULL_SCALE_JOBS = 4


def authentic_by_point(table: pd.DataFrame) -> pd.DataFrame:
    return table.pivot(index="scenario_value", columns="algorithm", values="mean_authentic_pct")


@pytest.fixture(scope="module")
def malicious_sweep():
    return sweep(
        "malicious", ALGORITHMS, DEFAULT_VALUES["malicious"], FULL_SCALE_TRIALS, SimConfig(), jobs=FULL_SCALE_JOBS
    )


@pytest.fixture(scope="module")
def unpredictable_sweep():
    return sweep(
        "unpredictable",
        ALGORITHMS,
        DEFAULT_VALUES["unpredictable"],
        FULL_SCALE_TRIALS,
        SimConfig(),
        jobs=FULL_SCALE_JOBS,
    )


@pytest.fixture(scope="module")
def collective_sweep():
    return sweep(
        "collective", ALGORITHMS, DEFAULT_VALUES["collective"], FULL_SCALE_TRIALS, SimConfig(), jobs=FULL_SCALE_JOBS
    )


@pytest.mark.slow
class TestFullScaleSweeps:
    """Full-size sweeps with the default network; run with ``pytest -m slow``."""

    def test_malicious_sweep_bands(self, malicious_sweep):
        """Test Absolute Trust against pure malicious peers."""
        authentic = authentic_by_point(malicious_sweep)

        # Light and heavy attack
        assert authentic.loc[0.05, "absolute"] == pytest.approx(94.92, abs=1.0)
        assert authentic.loc[0.45, "absolute"] == pytest.approx(91.6, abs=3.0)

        # Baselines at 45%
        assert authentic.loc[0.45, "eigentrust"] == pytest.approx(87.52, abs=4.0)
        assert authentic.loc[0.45, "powertrust"] == pytest.approx(87.5, abs=4.0)

    def test_malicious_sweep_ordering(self, malicious_sweep):
        """Test Absolute Trust beats both baselines at every point."""
        authentic = authentic_by_point(malicious_sweep)
        best_baseline = authentic[["eigentrust", "powertrust"]].max(axis=1)

        for value in DEFAULT_VALUES["malicious"]:
            assert authentic.loc[value, "absolute"] > best_baseline[value], f"Failed at {value}"

        # At least two points ahead under heavy attack
        for value in (0.40, 0.45):
            assert authentic.loc[value, "absolute"] - best_baseline[value] >= 2.0, f"Failed at {value}"

    def test_unpredictable_sweep(self, unpredictable_sweep):
        """Test Absolute Trust against peers that turn malicious."""
        authentic = authentic_by_point(unpredictable_sweep)
        assert authentic.loc[0.35, "absolute"] == pytest.approx(89.3, abs=3.0)

        for value in DEFAULT_VALUES["unpredictable"]:
            row = authentic.loc[value]
            assert row["absolute"] >= max(row["eigentrust"], row["powertrust"]), f"Failed at {value}"

        # PowerTrust falls fastest past 25%
        drop = authentic.loc[0.25] - authentic.loc[0.35]
        assert drop["powertrust"] > drop["eigentrust"]

    def test_collective_sweep(self, collective_sweep):
        """Test Absolute Trust against collectives of 5% of the peers each."""
        authentic = authentic_by_point(collective_sweep)
        assert authentic.loc[6, "absolute"] == pytest.approx(91.1, abs=3.0)

        for value in DEFAULT_VALUES["collective"]:
            row = authentic.loc[value]
            assert row["absolute"] >= max(row["eigentrust"], row["powertrust"]), f"Failed at {value}"

    def test_load_is_spread_more_evenly(self, malicious_sweep):
        """Test Absolute Trust spreads downloads over good peers more evenly."""
        load = malicious_sweep.pivot(index="scenario_value", columns="algorithm", values="mean_load_stddev")

        for value in (0.05, 0.10, 0.15):
            row = load.loc[value]
            assert row["absolute"] < row["eigentrust"], f"Failed at {value}"
            assert row["absolute"] < row["powertrust"], f"Failed at {value}"

    def test_message_saving_matches_source_sets(self, mocker):
        """Test unnormalized feedback saves one message per extra source."""
        config = SimConfig(malicious_fraction=0.05)
        sim = Simulator(config)
        sources = {}
        source_sets = []
        give_feedback = behavior.give_feedback

        def recording(rater, source, authentic, ledger, tally, rng, clock=0, **kwargs):
            entry = give_feedback(rater, source, authentic, ledger, tally, rng, clock=clock, **kwargs)
            seen = sources.setdefault(rater.id, set())
            seen.add(source.id)
            if clock >= config.transient_cycles:
                source_sets.append(len(seen))
            return entry

        mocker.patch("src.simnet.simulator.give_feedback", side_effect=recording)
        tally = sim.run().message_tally

        assert len(source_sets) == tally.feedback_messages
        measured = float(np.mean(source_sets))
        ratio = tally.hypothetical_normalized_feedback / tally.feedback_messages
        assert ratio == pytest.approx(measured, rel=0.05)
        assert tally.saving_per_update() == pytest.approx(measured - 1.0, rel=0.05)
