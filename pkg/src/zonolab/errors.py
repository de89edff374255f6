__all__ = [
    "ZonolabError",
    "ParameterRangeError",
    "DimensionMismatchError",
    "NonUnitDirectionError",
    "DegenerateZonotopeError",
    "GeneralPositionError",
    "EnumerationBoundError",
    "NumericalBreakdownError",
    "EigenSolverError",
    "ConvergenceError",
    "FormatError",
    "UnknownSuiteError",
    "ConfigError",
]


class ZonolabError(Exception):
    """Base exception class for zonolab exceptions."""


class ParameterRangeError(ZonolabError, ValueError):
    """Exception raised when an index or parameter is outside its range."""


class DimensionMismatchError(ZonolabError, ValueError):
    """Exception raised when vectors of different dimensions are mixed."""


class NonUnitDirectionError(ParameterRangeError):
    """Exception raised when a direction is not a unit vector."""


class DegenerateZonotopeError(ZonolabError):
    """Exception raised when a full-dimensional zonotope was required."""


class GeneralPositionError(DegenerateZonotopeError):
    """Exception raised when generators are not in general position."""


class EnumerationBoundError(ZonolabError):
    """Exception raised when an enumeration would exceed its default bound.

    Attributes:
        required:
            The number of items the enumeration would have visited.
        limit:
            The bound that was exceeded.
    """

    def __init__(self, message: str, required: int, limit: int):
        super().__init__(f"{message} (requires {required}, limit {limit})")

        self.required: int = required
        self.limit: int = limit


class NumericalBreakdownError(ZonolabError, ArithmeticError):
    """Exception raised when floating point results stop being trustworthy."""


class EigenSolverError(NumericalBreakdownError):
    """Exception raised when the symmetric eigensolver did not converge."""


class ConvergenceError(NumericalBreakdownError):
    """Exception raised when an iterative solve failed on every retry."""


class FormatError(ZonolabError, ValueError):
    """Exception raised when a document is malformed.

    Attributes:
        field:
            The offending field, or None when the document itself is broken.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")

        self.field: str | None = field


class UnknownSuiteError(ZonolabError, KeyError):
    """Exception raised when a verification suite name isn't recognized."""

    def __init__(self, name: str, available: list[str]):
        super().__init__(
            f"Unknown suite '{name}'. Available: {', '.join(available)}"
        )

        self.name: str = name
        self.available: list[str] = available

    def __str__(self) -> str:
        return self.args[0]


class ConfigError(ZonolabError, ValueError):
    """Exception raised when a search configuration is invalid."""
