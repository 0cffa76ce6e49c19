"""
Command-line front end for the Absolute Trust solver and simulator.

    python -m src.main solve --matrix tests/fixtures/two_peer.csv --p 1 --q 1
    python -m src.main simulate --malicious 0.45 --algorithm absolute --trials 10
    python -m src.main sweep --scenario malicious --algorithms absolute,eigentrust,powertrust --trials 10
    python -m src.main convergence --alphas 1,0.5,0.3333333333,0.25,0.2
"""

import argparse
import sys
import time
from typing import Any, Dict, List, Optional

import pandas as pd
from loguru import logger

from . import __version__
from .config.loader import ConfigError, ResolvedConfig, resolve_config
from .experiments.convergence import DEFAULT_ALPHAS, convergence_study
from .experiments.metrics import authentic_percent, load_stddev
from .experiments.sweep import DEFAULT_VALUES, SCENARIOS, simulate, sweep
from .models.manifest import RunManifest
from .models.trust import GlobalTrustVector
from .trust.errors import ConvergenceError, TrustError
from .trust.solver import solve_absolute_trust
from .utils.data_export import ResultExporter
from .utils.logger import setup_logger
from .utils.matrix_io import MatrixFormatError, read_trust_matrix

EXIT_FAILURE = 2


def _floats(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _names(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config file")
    common.add_argument("--seed", type=int, help="Base seed (trial k uses seed + k)")
    common.add_argument("--out", help="Directory for results.csv, residuals.csv and manifest.json")
    common.add_argument("--log-level", default=None, help="Console log level (DEBUG, INFO, WARNING...)")
    common.add_argument("--p", type=int, help="Exponent of the weighted-average term")
    common.add_argument("--q", type=int, help="Exponent of the set-trust term")
    common.add_argument("--threshold", type=float, help="Solver residual bound")

    simulation = argparse.ArgumentParser(add_help=False)
    simulation.add_argument("--trials", type=int, help="Trials per configuration")
    simulation.add_argument("--jobs", type=int, help="Worker processes")
    simulation.add_argument("--malicious", type=float, help="Share of pure malicious peers")
    simulation.add_argument("--ttl", type=int, help="Initial query TTL")
    simulation.add_argument("--global-ref", type=float, help="Source-acceptance threshold")

    parser = argparse.ArgumentParser(description="Absolute Trust aggregation and P2P reputation simulator")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", parents=[common], help="Solve a trust matrix file")
    solve.add_argument("--matrix", required=True, help="CSV with rater,ratee,score rows")

    sim = commands.add_parser("simulate", parents=[common, simulation], help="Run one scenario")
    sim.add_argument("--algorithm", choices=["absolute", "eigentrust", "powertrust"])

    sw = commands.add_parser("sweep", parents=[common, simulation], help="Sweep an attack scenario")
    sw.add_argument("--scenario", choices=SCENARIOS)
    sw.add_argument("--algorithms", type=_names, help="Comma-separated algorithms")
    sw.add_argument("--values", type=_floats, help="Comma-separated sweep points")

    conv = commands.add_parser("convergence", parents=[common], help="Residual traces for several alphas")
    conv.add_argument("--alphas", type=_floats, default=list(DEFAULT_ALPHAS), help="Comma-separated alpha values")
    conv.add_argument("--iterations", type=int, default=10, help="Iterations per alpha")
    conv.add_argument("--matrix", help="CSV matrix; a seeded random 100-peer matrix by default")

    return parser


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Map parsed flags onto dotted config fields."""
    mapping = {
        "seed": "seed",
        "p": "solver.p",
        "q": "solver.q",
        "threshold": "solver.threshold",
        "malicious": "malicious_fraction",
        "ttl": "ttl_initial",
        "global_ref": "global_ref",
        "algorithm": "algorithm",
        "trials": "run.trials",
        "jobs": "run.jobs",
        "out": "run.out",
        "scenario": "run.scenario",
        "algorithms": "run.algorithms",
        "values": "run.values",
    }
    return {field: getattr(args, flag) for flag, field in mapping.items() if getattr(args, flag, None) is not None}


def _manifest(command: str, resolved: ResolvedConfig) -> RunManifest:
    return RunManifest(
        command=command,
        config={"simulation": resolved.sim.model_dump(mode="json"), "run": resolved.run.model_dump(mode="json")},
        sources=resolved.sources,
        tool_version=__version__,
    )


def run_solve(args: argparse.Namespace, resolved: ResolvedConfig, exporter: ResultExporter) -> None:
    """Solve a matrix file; a non-converged solve still writes its last iterate, then fails."""
    matrix = read_trust_matrix(args.matrix, weights=resolved.sim.weights)
    try:
        result = solve_absolute_trust(matrix, resolved.sim.solver)
    except ConvergenceError as e:
        _export_solution(e.result, exporter)
        raise

    logger.info(f"Converged in {result.iterations_used} iterations, residual {result.residual_trace[-1]:.3e}")
    for peer, value in enumerate(result.values):
        print(f"t[{peer}] = {value:.5f}")
    _export_solution(result, exporter)


def _export_solution(result: GlobalTrustVector, exporter: ResultExporter) -> None:
    exporter.export_table(
        pd.DataFrame({"peer": range(len(result)), "trust": result.values, "converged": result.converged}),
        "trust",
    )
    exporter.export_residuals([("solve", result.residual_trace)])


def run_simulate(args: argparse.Namespace, resolved: ResolvedConfig, exporter: ResultExporter) -> None:
    summary, results = simulate(resolved.sim, trials=resolved.run.trials, jobs=resolved.run.jobs)
    exporter.export_results(summary)
    exporter.export_residuals(
        (f"seed={r.config.seed}/update={u}", trace)
        for r in results
        for u, trace in enumerate(r.residual_traces, start=1)
    )

    for r in results:
        tally = r.message_tally
        logger.info(
            f"seed={r.config.seed}: {authentic_percent(r):.2f}% authentic, "
            f"load stddev {load_stddev(r):.2f}, {r.rejected_queries} rejected queries, "
            f"average source set {tally.average_source_set_size():.2f}"
        )
    row = summary.iloc[0]
    print(
        f"{resolved.sim.algorithm}: {row['mean_authentic_pct']:.2f}% authentic "
        f"(stderr {row['stderr_authentic_pct']:.2f}), good-peer load stddev {row['mean_load_stddev']:.2f}"
    )


def run_sweep(args: argparse.Namespace, resolved: ResolvedConfig, exporter: ResultExporter) -> None:
    run = resolved.run
    values = run.values or DEFAULT_VALUES[run.scenario]
    table = sweep(run.scenario, run.algorithms, values, run.trials, resolved.sim, jobs=run.jobs)
    exporter.export_results(table)
    print(table[["scenario_value", "algorithm", "mean_authentic_pct", "mean_load_stddev"]].to_string(index=False))


def run_convergence(args: argparse.Namespace, resolved: ResolvedConfig, exporter: ResultExporter) -> None:
    matrix = read_trust_matrix(args.matrix, weights=resolved.sim.weights) if args.matrix else None
    table = convergence_study(args.alphas, matrix=matrix, iterations=args.iterations, seed=resolved.sim.seed)
    labelled = table.assign(label=table["alpha"].map(lambda a: f"alpha={a:.6g}"))
    exporter.export_residuals(labelled[["label", "iteration", "residual"]])
    print(table.pivot(index="iteration", columns="alpha", values="residual").to_string())


COMMANDS = {
    "solve": run_solve,
    "simulate": run_simulate,
    "sweep": run_sweep,
    "convergence": run_convergence,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run the subcommand and write its artifacts.

    Returns:
        0 on success, 2 on configuration, input or solver errors
    """
    args = build_parser().parse_args(argv)
    setup_logger(level=args.log_level)

    started = time.perf_counter()
    try:
        resolved = resolve_config(args.config, flag_overrides(args))
        exporter = ResultExporter(resolved.run.out)
        manifest = _manifest(args.command, resolved)

        COMMANDS[args.command](args, resolved, exporter)

        manifest.duration_seconds = time.perf_counter() - started
        exporter.export_manifest(manifest)
    except (ConfigError, MatrixFormatError, FileNotFoundError, TrustError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE

    logger.info(f"{args.command} finished in {time.perf_counter() - started:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
