"""
Config file parsing and flag > file > default resolution.

Config files are INI style::

    [simulation]
    num_peers = 100
    malicious_fraction = 0.2

    [solver]
    p = 3
    q = 1

    [weights]
    w_g = 10

    [baselines]
    pretrusted_set = 0, 1, 2

    [run]
    trials = 10
    algorithms = absolute, eigentrust
"""

import configparser
from pathlib import Path
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from ..aggregators import ALGORITHMS
from ..models.simulation import SimConfig
from .settings import settings

# INI section -> dotted prefix of the fields it sets
SECTIONS = {
    "simulation": "",
    "solver": "solver.",
    "weights": "weights.",
    "baselines": "baseline.",
    "run": "run.",
}

LIST_FIELDS = {"baseline.pretrusted_set", "switch_window", "run.algorithms", "run.values"}


class ConfigError(ValueError):
    """Raised for malformed config files or invalid field values."""

    def __init__(self, field: str, source: str, message: str):
        self.field = field
        self.source = source
        super().__init__(f"{field} (from {source}): {message}")


class RunOptions(BaseModel):
    """Options of a CLI run that are not part of the simulated network."""

    trials: int = Field(default=1, ge=1)
    jobs: int = Field(default_factory=lambda: settings.DEFAULT_JOBS, ge=1)
    out: str = Field(default_factory=lambda: settings.OUTPUT_DIR)
    scenario: str = Field(default="malicious")
    algorithms: List[str] = Field(default_factory=lambda: list(ALGORITHMS))
    values: Optional[List[float]] = None


class ResolvedConfig(NamedTuple):
    sim: SimConfig
    run: RunOptions
    sources: Dict[str, str]


def _field_names(model: type, prefix: str = "") -> List[str]:
    names = []
    for name, info in model.model_fields.items():
        if isinstance(info.annotation, type) and issubclass(info.annotation, BaseModel):
            names.extend(_field_names(info.annotation, f"{prefix}{name}."))
        else:
            names.append(f"{prefix}{name}")
    return names


KNOWN_FIELDS = set(_field_names(SimConfig)) | {f"run.{n}" for n in RunOptions.model_fields}


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read an INI config file into dotted keys.

    Raises:
        FileNotFoundError: if the file does not exist
        ConfigError: for unknown sections or keys
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Config file not found: {path}")

    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as e:
        raise ConfigError(str(path), "file", f"cannot parse: {e}") from e

    values: Dict[str, Any] = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(section, "file", f"unknown section, expected one of {sorted(SECTIONS)}")
        for key, raw in parser.items(section):
            dotted = SECTIONS[section] + key
            if dotted not in KNOWN_FIELDS:
                raise ConfigError(dotted, "file", "unknown field")
            if dotted in LIST_FIELDS:
                values[dotted] = [item.strip() for item in raw.split(",") if item.strip()]
            else:
                values[dotted] = raw.strip()
    return values


def _nest(flat: Mapping[str, Any]) -> Dict[str, Any]:
    nested: Dict[str, Any] = {}
    for dotted, value in flat.items():
        node = nested
        *parents, leaf = dotted.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return nested


def resolve_config(
    config_path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ResolvedConfig:
    """
    Merge built-in defaults, an optional config file and command-line flags.

    Args:
        config_path: INI file, if any
        overrides: Dotted field -> value from flags; None values are ignored

    Returns:
        Validated simulation config, run options and the winning source per field

    Raises:
        ConfigError: naming the offending field and its source
    """
    file_values = read_config_file(config_path) if config_path else {}
    flag_values = {k: v for k, v in (overrides or {}).items() if v is not None}
    for key in flag_values:
        if key not in KNOWN_FIELDS:
            raise ConfigError(key, "flag", "unknown field")

    merged = {"seed": settings.DEFAULT_SEED, **file_values, **flag_values}
    sources = {name: "default" for name in sorted(KNOWN_FIELDS)}
    sources.update({k: "file" for k in file_values})
    sources.update({k: "flag" for k in flag_values})

    nested = _nest(merged)
    run_data = nested.pop("run", {})
    try:
        sim = SimConfig.model_validate(nested)
        run = RunOptions.model_validate(run_data)
    except ValidationError as e:
        error = e.errors()[0]
        prefix = "run." if e.title == RunOptions.__name__ else ""
        field = prefix + ".".join(str(part) for part in error["loc"])
        raise ConfigError(field or e.title, sources.get(field, "default"), error["msg"]) from e

    return ResolvedConfig(sim=sim, run=run, sources=sources)


__all__ = [
    'ConfigError',
    'read_config_file',
    'resolve_config',
    'ResolvedConfig',
    'RunOptions',
]
