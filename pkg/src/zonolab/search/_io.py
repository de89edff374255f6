import csv
from io import TextIOBase
from pathlib import Path
from typing import Any

from yaml import YAMLError
from yaml import safe_dump
from yaml import safe_load

from ..errors import ConfigError
from ..functionals import dump_report
from .data import SearchConfig
from .data import SearchOutcome

__all__ = ["load_search_config", "save_search_config", "write_run_directory"]


def load_search_config(file: TextIOBase) -> SearchConfig:
    """Load a YAML search config.

    Args:
        file (TextIOBase):
            The file handle to read the config from.
    Raises:
        ConfigError:
            The file isn't valid YAML or the config is invalid.
    """
    try:
        data = safe_load(file)
    except YAMLError as e:
        raise ConfigError(f"Not a valid YAML document: {e}") from e

    return SearchConfig.from_json(data)


def save_search_config(file: TextIOBase, config: SearchConfig):
    """Saves the config as YAML.

    Args:
        file (TextIOBase):
            The file handle to write the config to.
        config (SearchConfig):
            The config to save.
    """
    safe_dump(config.to_json(), file, indent=2, sort_keys=False)


def write_run_directory(
    path: Path, outcome: SearchOutcome, manifest: dict[str, Any]
) -> Path:
    """Writes config.yml, outcome.json, trace.csv and manifest.json.

    Args:
        path:
            The run directory; created when missing.
        outcome:
            The search outcome. Its config carries the seed actually used.
        manifest:
            The run manifest payload.
    """
    path.mkdir(parents=True, exist_ok=True)

    with (path / "config.yml").open("w") as file:
        save_search_config(file, outcome.config)

    with (path / "outcome.json").open("w") as file:
        dump_report(file, outcome.to_json())

    with (path / "trace.csv").open("w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(outcome.trace_header())
        writer.writerows(trace.csv_row() for trace in outcome.trace)

    with (path / "manifest.json").open("w") as file:
        dump_report(file, manifest)

    return path
