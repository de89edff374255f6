from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from datetime import datetime
from datetime import timezone
from enum import IntEnum
from typing import Any
from typing import Self

from semver import Version

from .. import __version__
from .._schema import SCHEMA_VERSION
from ..rng import RNG_VERSION

__all__ = ["ExitCode", "RunManifest"]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]


class ExitCode(IntEnum):
    """The process exit codes.

    Attributes:
        OK:
            The run succeeded and nothing was violated.
        FINDINGS:
            A checked claim was violated or a statistical check failed.
        USAGE:
            Bad arguments, malformed documents, invalid configs or unknown
            suites.
        NUMERICAL:
            A computation stopped being trustworthy.
    """

    OK = 0
    FINDINGS = 1
    USAGE = 2
    NUMERICAL = 3


def _now() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True, slots=True)
class RunManifest:
    """The provenance of one command line run.

    Attributes:
        argv:
            The command line, program name first.
        command:
            The click command path, e.g. "zonolab search".
        config_digest:
            A SHA-256 digest of everything the results depend on.
        seed:
            The root seed, or None for deterministic commands.
        rng_version:
            The bit generator and stream layout.
        version:
            The zonolab version.
        started:
            When the command started, in UTC.
        finished:
            When the command finished, in UTC.
        exit_code:
            The exit code the run ended with.
    """

    argv: tuple[str, ...]
    command: str
    config_digest: str
    seed: int | None = None
    rng_version: str = RNG_VERSION
    version: str = __version__
    started: datetime = field(default_factory=_now)
    finished: datetime | None = None
    exit_code: ExitCode | None = None

    def finish(self, exit_code: ExitCode) -> Self:
        """Returns a copy stamped with the finishing time and exit code."""
        return replace(self, finished=_now(), exit_code=exit_code)

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "argv": list(self.argv),
            "command": self.command,
            "config_digest": self.config_digest,
            "seed": self.seed,
            "rng_version": self.rng_version,
            "version": str(Version.parse(self.version)),
            "started": self.started.isoformat(),
            "finished": None if self.finished is None else self.finished.isoformat(),
            "exit_code": None if self.exit_code is None else int(self.exit_code),
        }
