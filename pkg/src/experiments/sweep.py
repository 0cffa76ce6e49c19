"""
Attack-scenario sweeps: trials per sweep point and algorithm, averaged into a table.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from ..aggregators import ALGORITHMS
from ..models.simulation import ExperimentResult, SimConfig
from ..simnet.simulator import run_trial
from .metrics import authentic_percent, load_stddev

SCENARIOS = ("malicious", "unpredictable", "collective")

# Pure malicious share kept fixed while unpredictable peers are swept
UNPREDICTABLE_BASE_MALICIOUS = 0.10

DEFAULT_VALUES = {
    "malicious": [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45],
    "unpredictable": [0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35],
    "collective": [1, 2, 3, 4, 5, 6],
}

TrialKey = Tuple[float, str, int]


def scenario_config(base: SimConfig, scenario: str, value: float, algorithm: str, seed: int) -> SimConfig:
    """
    Configuration of one trial.

    ``malicious`` sets the pure malicious share; ``unpredictable`` sets the
    unpredictable share on top of 10% pure malicious peers; ``collective``
    sets the number of collectives, each holding ``collective_group_fraction``
    of the peers, in an otherwise good population.
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"Unknown scenario: {scenario}")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"Unknown algorithm: {algorithm}")

    update = {"algorithm": algorithm, "seed": seed}
    if scenario == "malicious":
        update.update(malicious_fraction=value, unpredictable_fraction=0.0, collective_groups=0)
    elif scenario == "unpredictable":
        update.update(
            malicious_fraction=UNPREDICTABLE_BASE_MALICIOUS, unpredictable_fraction=value, collective_groups=0
        )
    else:
        if value != int(value):
            raise ValueError(f"Collective group count must be whole, got {value}")
        update.update(malicious_fraction=0.0, unpredictable_fraction=0.0, collective_groups=int(value))

    # Re-validate so population limits are checked for the new shares
    return SimConfig.model_validate({**base.model_dump(), **update})


def _run_all(configs: Dict[TrialKey, SimConfig], jobs: int) -> Dict[TrialKey, ExperimentResult]:
    keys = sorted(configs)
    if jobs <= 1:
        return {key: run_trial(configs[key]) for key in keys}

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(run_trial, [configs[key] for key in keys])
        return dict(zip(keys, results))


def summarize(scenario_value: float, algorithm: str, results: List[ExperimentResult], seed_base: int) -> Dict:
    """One table row from the trials of a sweep point."""
    authentic = np.array([authentic_percent(r) for r in results])
    loads = np.array([load_stddev(r) for r in results])
    trials = len(results)

    return {
        "scenario_value": scenario_value,
        "algorithm": algorithm,
        "mean_authentic_pct": authentic.mean(),
        "stddev_authentic_pct": authentic.std(),
        "stderr_authentic_pct": authentic.std(ddof=1) / np.sqrt(trials) if trials > 1 else 0.0,
        "mean_load_stddev": loads.mean(),
        "stddev_load_stddev": loads.std(),
        "feedback_messages": np.mean([r.message_tally.feedback_messages for r in results]),
        "trust_read_messages": np.mean([r.message_tally.trust_read_messages for r in results]),
        "rejected_queries": np.mean([r.rejected_queries for r in results]),
        "nonconverged_updates": sum(r.nonconverged_updates for r in results),
        "seed_base": seed_base,
        "trials": trials,
    }


def sweep(
    scenario: str,
    algorithms: Sequence[str],
    values: Sequence[float],
    trials: int,
    base: SimConfig,
    jobs: int = 1,
) -> pd.DataFrame:
    """
    Run ``trials`` seeded trials for every value and algorithm.

    Trial k of every point uses seed ``base.seed + k``, so algorithms are
    compared on the same networks. Rows are sorted by scenario value, then
    by algorithm order, independent of completion order.

    Args:
        scenario: malicious, unpredictable or collective
        algorithms: Aggregators to compare
        values: Sweep points (fractions, or group counts for collective)
        trials: Trials per point
        base: Configuration every trial starts from
        jobs: Worker processes; 1 runs in-process

    Returns:
        Frame with the result table columns plus spread and diagnostics columns
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    algorithms = list(algorithms)

    configs = {
        (float(value), algorithm, k): scenario_config(base, scenario, value, algorithm, base.seed + k)
        for value in values
        for algorithm in algorithms
        for k in range(trials)
    }
    logger.info(f"Sweep {scenario}: {len(values)} points x {len(algorithms)} algorithms x {trials} trials")
    results = _run_all(configs, jobs)

    rows = []
    for value in values:
        for algorithm in algorithms:
            point = [results[(float(value), algorithm, k)] for k in range(trials)]
            rows.append(summarize(float(value), algorithm, point, base.seed))
            logger.info(
                f"{scenario}={value} {algorithm}: {rows[-1]['mean_authentic_pct']:.2f}% authentic, "
                f"load stddev {rows[-1]['mean_load_stddev']:.2f}"
            )

    return pd.DataFrame(rows)


def simulate(base: SimConfig, trials: int = 1, jobs: int = 1) -> Tuple[pd.DataFrame, List[ExperimentResult]]:
    """
    Trials of a single configuration.

    Returns:
        One summary row and the per-trial results
    """
    configs = {
        (0.0, base.algorithm, k): base.model_copy(update={"seed": base.seed + k}) for k in range(trials)
    }
    results = _run_all(configs, jobs)
    ordered = [results[(0.0, base.algorithm, k)] for k in range(trials)]
    row = summarize(base.malicious_fraction, base.algorithm, ordered, base.seed)
    return pd.DataFrame([row]), ordered
