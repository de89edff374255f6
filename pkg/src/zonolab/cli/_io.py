import json
from pathlib import Path
from typing import Any

import click

from ..functionals import dump_report
from .data import RunManifest

__all__ = ["emit", "write_manifest"]


def emit(payload: dict[str, Any]):
    """Writes a JSON document to standard output, formatted like `dump_report`."""
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def write_manifest(path: Path, manifest: RunManifest):
    """Writes the run manifest, creating the parent directory when missing."""
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w") as file:
        dump_report(file, manifest.to_json())
