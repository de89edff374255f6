from typing import Any
from typing import Final

from semver import Version

from .errors import FormatError

__all__ = ["SCHEMA_VERSION", "check_schema_version"]

SCHEMA_VERSION: Final[str] = "1.0.0"


def check_schema_version(content: dict[str, Any]) -> Version:
    """Validates the schema_version field of a persisted document.

    Documents without the field are read as the current version. A document
    written by a different major version is rejected.

    Raises:
        FormatError:
            The version isn't a semantic version, or its major part differs.
    """
    raw = content.get("schema_version", SCHEMA_VERSION)

    try:
        version = Version.parse(str(raw))
    except ValueError as e:
        raise FormatError(f"'{raw}' is not a semantic version", "schema_version") from e

    current = Version.parse(SCHEMA_VERSION)

    if version.major != current.major:
        raise FormatError(
            f"Unsupported schema version {version}; expected {current.major}.x",
            "schema_version",
        )

    return version
