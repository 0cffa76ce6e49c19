"""
Run manifest written next to every set of CLI artifacts.
"""

from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import BaseModel, Field

RNG_ALGORITHM = "numpy.PCG64/SeedSequence"


class RunManifest(BaseModel):
    """Resolved configuration, provenance and artifact paths of one CLI run."""

    command: str = Field(..., description="Subcommand that produced the artifacts")
    config: Dict[str, Any] = Field(default_factory=dict, description="Fully resolved configuration")
    sources: Dict[str, str] = Field(
        default_factory=dict, description="Winning source per dotted field: flag, file or default"
    )
    artifacts: Dict[str, str] = Field(default_factory=dict, description="Artifact name to path")
    tool_version: str
    rng_algorithm: str = RNG_ALGORITHM
    started_at: datetime = Field(default_factory=datetime.now)
    duration_seconds: float = Field(default=0.0, ge=0)

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(self.model_dump_json(indent=2), encoding="utf-8")
        return path

    @classmethod
    def read(cls, path: Union[str, Path]) -> "RunManifest":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))
