from .commands import cli
from .data import ExitCode
from .data import RunManifest

__all__ = ["ExitCode", "RunManifest", "cli", "main"]


def main():
    """The console script entry point."""
    cli(prog_name="zonolab")
