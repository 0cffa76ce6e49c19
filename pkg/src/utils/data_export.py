"""
Writing run artifacts: result tables, residual traces and the run manifest.
"""

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

import pandas as pd
from loguru import logger

from ..config.settings import settings
from ..models.manifest import RunManifest

RESULT_COLUMNS = [
    "scenario_value",
    "algorithm",
    "mean_authentic_pct",
    "stderr_authentic_pct",
    "mean_load_stddev",
    "feedback_messages",
    "trust_read_messages",
    "seed_base",
    "trials",
]
RESIDUAL_COLUMNS = ["label", "iteration", "residual"]

# Fixed float rendering keeps reruns byte-identical
FLOAT_FORMAT = "%.6f"
RESIDUAL_FORMAT = "%.6e"


class ResultExporter:
    """Write CSV tables and the JSON manifest of a run into one directory."""

    def __init__(self, out_dir: Optional[Union[str, Path]] = None):
        self.out_dir = Path(out_dir or settings.OUTPUT_DIR)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.artifacts: Dict[str, str] = {}

    def export_results(self, df: pd.DataFrame, filename: str = "results.csv") -> str:
        """Write the summary table with the fixed result header."""
        missing = [c for c in RESULT_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"Result table lacks columns: {missing}")

        filepath = self.out_dir / filename
        df[RESULT_COLUMNS].to_csv(filepath, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

        logger.info(f"Exported {len(df)} result rows to {filepath}")
        self.artifacts["results"] = str(filepath)
        return str(filepath)

    def export_residuals(
        self,
        traces: Union[pd.DataFrame, Iterable[tuple]],
        filename: str = "residuals.csv",
    ) -> str:
        """
        Write residual traces in long form.

        Args:
            traces: Frame with ``label, iteration, residual`` columns, or
                (label, trace) pairs
            filename: Output name inside the run directory
        """
        if isinstance(traces, pd.DataFrame):
            df = traces
        else:
            rows: List[dict] = []
            for label, trace in traces:
                rows.extend({"label": label, "iteration": k, "residual": r} for k, r in enumerate(trace, start=1))
            df = pd.DataFrame(rows, columns=RESIDUAL_COLUMNS)

        filepath = self.out_dir / filename
        df.to_csv(filepath, index=False, float_format=RESIDUAL_FORMAT, lineterminator="\n")

        logger.info(f"Exported {len(df)} residual rows to {filepath}")
        self.artifacts["residuals"] = str(filepath)
        return str(filepath)

    def export_table(self, df: pd.DataFrame, name: str) -> str:
        """Write any other table, e.g. a solved trust vector."""
        filepath = self.out_dir / f"{name}.csv"
        df.to_csv(filepath, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info(f"Exported {name} to {filepath}")
        self.artifacts[name] = str(filepath)
        return str(filepath)

    def export_manifest(self, manifest: RunManifest, filename: str = "manifest.json") -> str:
        """Write the manifest, listing every artifact exported so far."""
        filepath = self.out_dir / filename
        manifest.artifacts = {**self.artifacts, "manifest": str(filepath)}
        manifest.write(filepath)

        logger.info(f"Wrote manifest to {filepath}")
        return str(filepath)
