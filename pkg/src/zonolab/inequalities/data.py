import hashlib
import math
from dataclasses import dataclass
from dataclasses import field
from enum import StrEnum
from typing import Any
from typing import Final

import numpy as np

from .._schema import SCHEMA_VERSION
from ..errors import DegenerateZonotopeError
from ..errors import DimensionMismatchError
from ..geometry import as_vectors
from ..rng import RNG_VERSION

__all__ = [
    "EQUALITY_RELATIVE_TOLERANCE",
    "EQUALITY_ABSOLUTE_TOLERANCE",
    "Orientation",
    "EqualityBranch",
    "InequalityVerdict",
    "MaclaurinChain",
    "Simplex",
    "SuiteResult",
    "input_digest",
]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]

EQUALITY_RELATIVE_TOLERANCE: Final[float] = 1e-9
EQUALITY_ABSOLUTE_TOLERANCE: Final[float] = 1e-12


def input_digest(*arrays: np.ndarray, **params: Any) -> str:
    """A SHA-256 digest of the float64 bytes of the arrays and the parameters."""
    digest = hashlib.sha256()

    for array in arrays:
        array = np.ascontiguousarray(array, dtype="<f8")
        digest.update(repr(array.shape).encode())
        digest.update(array.tobytes())

    for key in sorted(params):
        digest.update(f"{key}={params[key]!r};".encode())

    return digest.hexdigest()


class Orientation(StrEnum):
    """The direction a verified inequality claims."""

    AT_MOST = "<="
    AT_LEAST = ">="


class EqualityBranch(StrEnum):
    """Why two consecutive Maclaurin means coincide.

    Attributes:
        ALL_EQUAL:
            Every value is the same.
        ENOUGH_ZEROS:
            At least m-k+1 of the m values are zero, so both means vanish.
        STRICT:
            Neither applies and the inequality is strict.
    """

    ALL_EQUAL = "all equal"
    ENOUGH_ZEROS = "at least m-k+1 zeros"
    STRICT = "strict"


@dataclass(frozen=True, slots=True)
class InequalityVerdict:
    """Both sides of one checked inequality.

    Attributes:
        claim:
            What was checked, e.g. "maclaurin[k=2]".
        orientation:
            Whether the claim is lhs <= rhs or lhs >= rhs.
        lhs:
            The left-hand side.
        rhs:
            The right-hand side.
        slack:
            rhs - lhs for "<=" claims and lhs - rhs for ">=" claims.
        tol:
            max(1e-9 * max(|lhs|, |rhs|), 1e-12).
        holds:
            slack >= -tol.
        equality:
            |slack| <= tol.
        input_digest:
            The digest of the checked inputs.
        trial:
            The trial index inside a suite, if any.
        detail:
            A free-form diagnosis, like an equality branch.
    """

    claim: str
    orientation: Orientation
    lhs: float
    rhs: float
    slack: float
    tol: float
    holds: bool
    equality: bool
    input_digest: str
    trial: int | None = None
    detail: str | None = None

    @classmethod
    def compare(
        cls,
        claim: str,
        lhs: float,
        orientation: Orientation,
        rhs: float,
        digest: str,
        *,
        trial: int | None = None,
        detail: str | None = None,
    ) -> "InequalityVerdict":
        """Evaluates `lhs orientation rhs` with the equality tolerance."""
        lhs, rhs = float(lhs), float(rhs)
        slack = rhs - lhs if orientation == Orientation.AT_MOST else lhs - rhs
        tol = max(
            EQUALITY_RELATIVE_TOLERANCE * max(abs(lhs), abs(rhs)),
            EQUALITY_ABSOLUTE_TOLERANCE,
        )

        return cls(
            claim=claim,
            orientation=orientation,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            tol=tol,
            holds=slack >= -tol,
            equality=abs(slack) <= tol,
            input_digest=digest,
            trial=trial,
            detail=detail,
        )

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "claim": self.claim,
            "orientation": str(self.orientation),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tol": self.tol,
            "holds": self.holds,
            "equality": self.equality,
            "input_digest": self.input_digest,
            "trial": self.trial,
            "detail": self.detail,
        }


@dataclass(frozen=True, slots=True)
class MaclaurinChain:
    """The means M_k = (sigma_m^k / C(m, k))^(1/k) of m values.

    Attributes:
        means:
            M_1..M_m.
        branches:
            For every k = 1..m-1 the reason M_k = M_{k+1}, or STRICT.
    """

    means: tuple[float, ...]
    branches: tuple[EqualityBranch, ...]

    @property
    def non_increasing(self) -> bool:
        return all(
            second <= first * (1.0 + EQUALITY_RELATIVE_TOLERANCE) + EQUALITY_ABSOLUTE_TOLERANCE
            for first, second in zip(self.means, self.means[1:])
        )


@dataclass(frozen=True, slots=True, eq=False)
class Simplex:
    """A simplex given by its d+1 vertices in R^d.

    Attributes:
        vertices:
            A read-only (d+1, d) array.
    """

    vertices: np.ndarray

    def __post_init__(self):
        vertices = as_vectors(self.vertices)

        if vertices.shape[0] != vertices.shape[1] + 1:
            raise DimensionMismatchError(
                f"A simplex in R^d needs d+1 vertices, got shape {vertices.shape}"
            )

        vertices = vertices.copy()
        vertices.flags.writeable = False
        object.__setattr__(self, "vertices", vertices)

    @property
    def d(self) -> int:
        return self.vertices.shape[1]

    @property
    def volume(self) -> float:
        """The d-volume |det(p_i - p_0)| / d!."""
        edges = self.vertices[1:] - self.vertices[0]

        return abs(float(np.linalg.det(edges))) / math.factorial(self.d)

    def scaled(self, factor: float) -> "Simplex":
        """The simplex scaled about the origin."""
        return Simplex(factor * self.vertices)

    def with_volume(self, volume: float) -> "Simplex":
        """The simplex scaled about the origin to the given volume.

        Raises:
            DegenerateZonotopeError:
                The simplex has zero volume.
        """
        if self.volume == 0.0:
            raise DegenerateZonotopeError("A flat simplex can't be rescaled")

        return self.scaled((volume / self.volume) ** (1.0 / self.d))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Simplex):
            return NotImplemented

        return np.array_equal(self.vertices, other.vertices)

    def __hash__(self) -> int:
        return hash(self.vertices.tobytes())


@dataclass(frozen=True, slots=True)
class SuiteResult:
    """The verdicts of one verification suite run.

    Attributes:
        suite:
            The suite name.
        seed:
            The seed the per-trial streams were spawned from.
        trials:
            The number of trials.
        d:
            The dimension the suite sampled in.
        verdicts:
            Every verdict, ordered by trial index.
        notes:
            Remarks recorded by the suite, such as a claimed direction that
            differs from the one asserted.
    """

    suite: str
    seed: int
    trials: int
    d: int
    verdicts: list[InequalityVerdict]
    notes: tuple[str, ...] = field(default=())

    @property
    def findings(self) -> list[InequalityVerdict]:
        """The verdicts that don't hold."""
        return [verdict for verdict in self.verdicts if not verdict.holds]

    @property
    def holds(self) -> bool:
        return not self.findings

    @property
    def worst(self) -> InequalityVerdict | None:
        """The verdict with the smallest slack."""
        if not self.verdicts:
            return None

        return min(self.verdicts, key=lambda verdict: verdict.slack)

    def csv_header(self) -> list[str]:
        return ["trial", "claim", "lhs", "rhs", "slack", "equality", "holds"]

    def csv_rows(self) -> list[list[str]]:
        return [
            [
                "" if verdict.trial is None else str(verdict.trial),
                verdict.claim,
                repr(verdict.lhs),
                repr(verdict.rhs),
                repr(verdict.slack),
                str(verdict.equality).lower(),
                str(verdict.holds).lower(),
            ]
            for verdict in self.verdicts
        ]

    def to_json(self) -> JsonValue:
        """The summary document: minimum slack, its input digest and the seed."""
        worst = self.worst

        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "rng_version": RNG_VERSION,
            "trials": self.trials,
            "d": self.d,
            "verdicts": len(self.verdicts),
            "findings": len(self.findings),
            "equalities": sum(verdict.equality for verdict in self.verdicts),
            "min_slack": None if worst is None else worst.slack,
            "argmin_claim": None if worst is None else worst.claim,
            "argmin_digest": None if worst is None else worst.input_digest,
            "notes": list(self.notes),
        }
