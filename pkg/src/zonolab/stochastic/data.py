import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Any
from typing import Final

import numpy as np

from .._schema import SCHEMA_VERSION
from ..rng import RNG_VERSION

__all__ = [
    "BATCH_SIZE",
    "ACCEPTANCE_SIGMAS",
    "MCEstimate",
    "DistanceCertificate",
    "ProbeFamily",
    "ProbeRow",
    "PolygonGaps",
]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]

BATCH_SIZE: Final[int] = 4096
ACCEPTANCE_SIGMAS: Final[float] = 4.0


@dataclass(frozen=True, slots=True)
class MCEstimate:
    """A Monte Carlo mean with its standard error and provenance.

    The same (seed, samples, rng_version) always reproduces the estimate bit
    for bit, whatever the worker count.

    Attributes:
        quantity:
            What was estimated, e.g. "E|p_1 ^ p_2|".
        mean:
            The estimate.
        std_error:
            The sample standard deviation over sqrt(samples).
        samples:
            The number of samples.
        seed:
            The root seed of the batch streams.
        rng_version:
            The stream layout the samples were drawn with.
        closed_form:
            The exact value the estimate is compared with, if one is known.
    """

    quantity: str
    mean: float
    std_error: float
    samples: int
    seed: int
    rng_version: str = RNG_VERSION
    closed_form: float | None = None

    @classmethod
    def from_values(
        cls,
        quantity: str,
        values: np.ndarray,
        seed: int,
        closed_form: float | None = None,
    ) -> "MCEstimate":
        """Summarizes per-sample values given in stream order."""
        values = np.asarray(values, dtype=float)
        count = values.size
        mean = math.fsum(values) / count
        spread = float(np.std(values, ddof=1)) if count > 1 else 0.0

        return cls(
            quantity=quantity,
            mean=mean,
            std_error=spread / math.sqrt(count),
            samples=count,
            seed=seed,
            closed_form=closed_form,
        )

    @property
    def deviation(self) -> float | None:
        """How many standard errors the estimate is away from the closed form."""
        if self.closed_form is None:
            return None

        error = abs(self.mean - self.closed_form)

        if self.std_error == 0.0:
            return 0.0 if error == 0.0 else math.inf

        return error / self.std_error

    def agrees(self, sigmas: float = ACCEPTANCE_SIGMAS) -> bool:
        """Whether the estimate is within `sigmas` standard errors of the closed form."""
        deviation = self.deviation

        return deviation is not None and deviation <= sigmas

    def csv_header(self) -> list[str]:
        return ["quantity", "estimate", "std_error", "samples", "seed", "closed_form"]

    def csv_row(self) -> list[str]:
        return [
            self.quantity,
            repr(self.mean),
            repr(self.std_error),
            str(self.samples),
            str(self.seed),
            "" if self.closed_form is None else repr(self.closed_form),
        ]

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "quantity": self.quantity,
            "mean": self.mean,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
            "rng_version": self.rng_version,
            "closed_form": self.closed_form,
            "deviation": self.deviation,
        }


@dataclass(frozen=True, slots=True)
class DistanceCertificate:
    """Bounds on the distance of points from a zonotope.

    Attributes:
        upper:
            |x - sum c_i p_i| for the coefficients the solve ended with.
        lower:
            max(0, <u, x> - h(u)) for u along the final residual.
        coefficients:
            The (m, n) cube coefficients of the nearest points found.
        converged:
            Whether the last sweep moved no coefficient by 1e-10 or more.
    """

    upper: np.ndarray
    lower: np.ndarray
    coefficients: np.ndarray
    converged: np.ndarray

    def within(self, t: float, tol: float = 0.0) -> np.ndarray:
        """Decides distance <= t per point.

        Returns a float array holding 1.0 (inside), 0.0 (outside) or nan
        when the bounds straddle t and the solve didn't converge.
        """
        inside = self.upper <= t + tol
        outside = self.lower > t
        settled = self.converged & ~inside & ~outside

        decision = np.full(self.upper.shape, np.nan)
        decision[inside] = 1.0
        decision[outside] = 0.0
        decision[settled] = (self.lower[settled] <= t).astype(float)

        return decision


class ProbeFamily(StrEnum):
    """Generator families for the asymptotic probe.

    Attributes:
        RANDOM_UNIFORM:
            n uniform unit vectors, any d >= 2.
        PLANAR_REGULAR:
            The regular 2n-gon, d = 2 only.
        FIBONACCI_SPHERE:
            A golden-angle spiral over the hemisphere, d = 3 only.
    """

    RANDOM_UNIFORM = "random-uniform"
    PLANAR_REGULAR = "planar-regular"
    FIBONACCI_SPHERE = "fibonacci-sphere"


@dataclass(frozen=True, slots=True)
class ProbeRow:
    """Approximation gaps of one zonotope against the ball.

    Attributes:
        family:
            The generator family.
        d:
            The dimension.
        n:
            The number of generators.
        ratio_minus_one:
            cirr / ir - 1.
        inner_gaps:
            V_i(Z) / V_i(B) - 1 for Z scaled to inradius 1, i = 1..d.
        outer_gaps:
            1 - V_i(Z) / V_i(B) for Z scaled to circumradius 1, i = 1..d.
        inner_bounds:
            4i / (5dn^2), i = 1..d.
        outer_bounds:
            2i / (5n^2), i = 1..d.
        volume_bound:
            pi^2 / (12n^2), a lower bound for inner_gaps[d-1].
        width_bound:
            pi^2 / (24n^2) - pi^4 / (1920n^4), a lower bound for outer_gaps[0].
        rate:
            U_d(n).
        lower_bounds_hold:
            Whether every tabulated lower bound holds; None below n = 8.
    """

    family: ProbeFamily
    d: int
    n: int
    ratio_minus_one: float
    inner_gaps: tuple[float, ...]
    outer_gaps: tuple[float, ...]
    inner_bounds: tuple[float, ...]
    outer_bounds: tuple[float, ...]
    volume_bound: float
    width_bound: float
    rate: float
    lower_bounds_hold: bool | None

    def csv_rows(self) -> list[list[str]]:
        """Long-format rows: n, quantity, value, bound, U_d(n)."""
        rows = [[str(self.n), "ratio_minus_one", repr(self.ratio_minus_one), "", repr(self.rate)]]

        for i, (gap, bound) in enumerate(zip(self.inner_gaps, self.inner_bounds), start=1):
            if i == self.d:
                bound = max(bound, self.volume_bound)

            rows.append([str(self.n), f"inner_gap_{i}", repr(gap), repr(bound), repr(self.rate)])

        for i, (gap, bound) in enumerate(zip(self.outer_gaps, self.outer_bounds), start=1):
            if i == 1:
                bound = max(bound, self.width_bound)

            rows.append([str(self.n), f"outer_gap_{i}", repr(gap), repr(bound), repr(self.rate)])

        return rows

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "family": str(self.family),
            "d": self.d,
            "n": self.n,
            "ratio_minus_one": self.ratio_minus_one,
            "inner_gaps": list(self.inner_gaps),
            "outer_gaps": list(self.outer_gaps),
            "inner_bounds": list(self.inner_bounds),
            "outer_bounds": list(self.outer_bounds),
            "volume_bound": self.volume_bound,
            "width_bound": self.width_bound,
            "rate": self.rate,
            "lower_bounds_hold": self.lower_bounds_hold,
        }


@dataclass(frozen=True, slots=True)
class PolygonGaps:
    """Closed forms for the regular 2n-gon against the unit disc.

    Attributes:
        n:
            Half the number of sides.
        area_gap:
            (2n / pi) tan(pi / 2n) - 1, the circumscribed polygon.
        perimeter_gap:
            1 - (2n / pi) sin(pi / 2n), the inscribed polygon.
        area_bound:
            pi^2 / (12n^2).
        perimeter_bound:
            pi^2 / (24n^2) - pi^4 / (1920n^4).
    """

    n: int
    area_gap: float
    perimeter_gap: float
    area_bound: float
    perimeter_bound: float

    @property
    def holds(self) -> bool:
        return self.area_gap >= self.area_bound and self.perimeter_gap >= self.perimeter_bound
