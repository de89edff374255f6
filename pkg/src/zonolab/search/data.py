import math
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from enum import StrEnum
from typing import Any
from typing import Self

from .._schema import SCHEMA_VERSION
from .._schema import check_schema_version
from ..errors import ConfigError
from ..errors import FormatError
from ..inequalities import input_digest
from ..radii import RadiusCertificate
from ..rng import RNG_VERSION
from ..zonotope import GeneratorSet

__all__ = [
    "Objective",
    "Constraint",
    "Sense",
    "ProbeBody",
    "SearchConfig",
    "RestartTrace",
    "SearchOutcome",
    "CounterexampleRecord",
    "LocalProbeReport",
]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]


class Objective(StrEnum):
    """What a search optimizes.

    Attributes:
        POLARIZATION:
            max_u sum |<x_i, u>|^p over unit generators; 2 cirr when p = 1.
        CIRCUMRADIUS:
            The circumradius.
        INTRINSIC_VOLUME:
            V_k.
        POWER2_RATIO:
            V_{k,2}^m / V_{m,2}^k.
    """

    POLARIZATION = "polarization"
    CIRCUMRADIUS = "cirr"
    INTRINSIC_VOLUME = "V_k"
    POWER2_RATIO = "power2-ratio"


class Constraint(StrEnum):
    """How iterates are renormalized after every step.

    Attributes:
        UNIT_GENERATORS:
            Every generator is scaled to length 1.
        FIXED_MEAN_WIDTH:
            The body is scaled to mean width `target`.
        FIXED_VOLUME:
            The body is scaled to volume `target`.
        FIXED_INRADIUS:
            The body is scaled to inradius `target`.
        FIXED_CIRCUMRADIUS:
            The body is scaled to circumradius `target`.
        CENTERED:
            The generators are shifted to sum to o.
    """

    UNIT_GENERATORS = "unit-generators"
    FIXED_MEAN_WIDTH = "fixed-mean-width"
    FIXED_VOLUME = "fixed-volume"
    FIXED_INRADIUS = "fixed-inradius"
    FIXED_CIRCUMRADIUS = "fixed-circumradius"
    CENTERED = "centered"

    @property
    def is_scaling(self) -> bool:
        return self not in (Constraint.UNIT_GENERATORS, Constraint.CENTERED)


class Sense(StrEnum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ProbeBody(StrEnum):
    """The regular bodies a local optimality probe perturbs."""

    CUBE = "cube"
    REGULAR_RD = "regular_rd"


def _enum[E: StrEnum](kind: type[E], content: dict[str, Any], key: str, default: E | None = None) -> E:
    raw = content.get(key, default)

    if raw is None:
        raise ConfigError(f"{key}: missing required field")

    try:
        return kind(raw)
    except ValueError as e:
        choices = ", ".join(str(member) for member in kind)

        raise ConfigError(f"{key}: '{raw}' isn't one of {choices}") from e


def _integer(
    content: dict[str, Any],
    key: str,
    default: int | None,
    minimum: int,
    required: bool = False,
) -> int | None:
    raw = content.get(key, default)

    if raw is None:
        if required:
            raise ConfigError(f"{key}: missing required field")

        return None

    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ConfigError(f"{key}: expected an integer, got {raw!r}")

    if raw < minimum:
        raise ConfigError(f"{key}: must be at least {minimum}, got {raw}")

    return raw


def _positive(content: dict[str, Any], key: str, default: float) -> float:
    raw = content.get(key, default)

    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {raw!r}")

    if not raw > 0 or math.isnan(raw):
        raise ConfigError(f"{key}: must be positive, got {raw}")

    return float(raw)


@dataclass(frozen=True, slots=True)
class SearchConfig:
    """Everything a search run depends on.

    Attributes:
        objective:
            The objective.
        constraints:
            The renormalizations applied after every step, in order.
        sense:
            Whether the objective is minimized or maximized.
        n:
            The number of generators.
        d:
            The dimension.
        k:
            The index of V_k and of the numerator of the power-2 ratio.
        m:
            The index of the denominator of the power-2 ratio.
        p:
            The polarization exponent.
        restarts:
            The number of independent restarts.
        max_iters:
            The number of (sub)gradient steps per restart.
        step_a:
            The step schedule is step_a / (1 + iteration / step_b).
        step_b:
            See step_a.
        target:
            The value a scaling constraint fixes.
        seed:
            The root seed, or None for a fresh one.
        workers:
            The thread count for restarts, or None for the environment.
        polish:
            Whether every restart is refined by SLSQP.
    """

    objective: Objective
    constraints: tuple[Constraint, ...]
    n: int
    d: int
    sense: Sense = Sense.MINIMIZE
    k: int | None = None
    m: int | None = None
    p: float = 1.0
    restarts: int = 32
    max_iters: int = 200
    step_a: float = 0.1
    step_b: float = 50.0
    target: float = 1.0
    seed: int | None = None
    workers: int | None = None
    polish: bool = True

    def __post_init__(self):
        try:
            object.__setattr__(self, "objective", Objective(self.objective))
            object.__setattr__(self, "sense", Sense(self.sense))
            object.__setattr__(
                self, "constraints", tuple(Constraint(c) for c in self.constraints)
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e

        self.validate()

    def validate(self):
        """Checks the combination of objective, constraints and indices.

        Raises:
            ConfigError:
                The combination can't be searched.
        """
        if self.d < 2 or self.n < 1:
            raise ConfigError(f"Need d >= 2 and n >= 1, got d={self.d}, n={self.n}")

        if len(set(self.constraints)) != len(self.constraints):
            raise ConfigError("constraints: duplicates aren't allowed")

        scaling = [c for c in self.constraints if c.is_scaling]

        if len(scaling) > 1:
            raise ConfigError(f"constraints: at most one scaling constraint, got {scaling}")

        if scaling and Constraint.UNIT_GENERATORS in self.constraints:
            raise ConfigError("constraints: unit-generators already fixes the scale")

        if scaling and scaling[0] != Constraint.FIXED_MEAN_WIDTH and self.n < self.d:
            raise ConfigError(f"constraints: {scaling[0]} needs n >= d")

        match self.objective:
            case Objective.POLARIZATION:
                if self.constraints != (Constraint.UNIT_GENERATORS,):
                    raise ConfigError("polarization searches run over unit generators only")
            case Objective.INTRINSIC_VOLUME:
                if self.k is None or not 1 <= self.k <= self.d:
                    raise ConfigError(f"k: V_k needs 1 <= k <= d, got {self.k}")
            case Objective.POWER2_RATIO:
                if self.k is None or self.m is None or not 1 <= self.k < self.m <= self.d:
                    raise ConfigError(
                        f"k, m: the power-2 ratio needs 1 <= k < m <= d, got k={self.k}, m={self.m}"
                    )

        unit = Constraint.UNIT_GENERATORS in self.constraints

        if self.objective != Objective.POWER2_RATIO and not scaling and not unit:
            raise ConfigError("constraints: a scale-dependent objective needs a scale")

    @property
    def scaling(self) -> Constraint | None:
        return next((c for c in self.constraints if c.is_scaling), None)

    def with_seed(self, seed: int) -> Self:
        return replace(self, seed=seed)

    def digest(self) -> str:
        """A SHA-256 digest of the canonical JSON form, the worker count left out."""
        return input_digest(
            **{key: value for key, value in self.to_json().items() if key != "workers"}
        )

    @classmethod
    def from_json(cls, content: dict[str, Any]) -> Self:
        """Creates a new SearchConfig from a JSON object.

        Raises:
            ConfigError:
                A value is missing, has the wrong type or the combination is
                invalid.
        """
        if not isinstance(content, dict):
            raise ConfigError("Expected a mapping at the top level")

        try:
            check_schema_version(content)
        except FormatError as e:
            raise ConfigError(str(e)) from e

        constraints = content.get("constraints", [])

        if isinstance(constraints, str):
            constraints = [constraints]

        if not isinstance(constraints, list):
            raise ConfigError(f"constraints: expected a list, got {constraints!r}")

        polish = content.get("polish", True)

        if not isinstance(polish, bool):
            raise ConfigError(f"polish: expected a boolean, got {polish!r}")

        return cls(
            objective=_enum(Objective, content, "objective"),
            constraints=tuple(
                _enum(Constraint, {"constraints": item}, "constraints") for item in constraints
            ),
            n=_integer(content, "n", None, 1, required=True),
            d=_integer(content, "d", None, 2, required=True),
            sense=_enum(Sense, content, "sense", Sense.MINIMIZE),
            k=_integer(content, "k", None, 1),
            m=_integer(content, "m", None, 1),
            p=_positive(content, "p", 1.0),
            restarts=_integer(content, "restarts", 32, 1),
            max_iters=_integer(content, "max_iters", 200, 1),
            step_a=_positive(content, "step_a", 0.1),
            step_b=_positive(content, "step_b", 50.0),
            target=_positive(content, "target", 1.0),
            seed=_integer(content, "seed", None, 0),
            workers=_integer(content, "workers", None, 1),
            polish=polish,
        )

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "objective": str(self.objective),
            "constraints": [str(c) for c in self.constraints],
            "sense": str(self.sense),
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "m": self.m,
            "p": self.p,
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "step_a": self.step_a,
            "step_b": self.step_b,
            "target": self.target,
            "seed": self.seed,
            "workers": self.workers,
            "polish": self.polish,
        }


@dataclass(frozen=True, slots=True)
class RestartTrace:
    """The summary of one restart.

    Attributes:
        restart:
            The restart index, which is also its stream index.
        start_value:
            The objective at the normalized starting point.
        best_value:
            The best objective the restart found.
        iterations:
            The number of steps taken.
        rejected:
            Iterates that couldn't be normalized and were redrawn.
        polished:
            Whether SLSQP improved the restart's best point.
    """

    restart: int
    start_value: float
    best_value: float
    iterations: int
    rejected: int
    polished: bool

    def csv_row(self) -> list[str]:
        return [
            str(self.restart),
            repr(self.start_value),
            repr(self.best_value),
            str(self.iterations),
            str(self.rejected),
            str(self.polished).lower(),
        ]


@dataclass(frozen=True, slots=True)
class SearchOutcome:
    """The best configuration of a search with its provenance.

    Re-evaluating `best` with the exact evaluators reproduces `value`.

    Attributes:
        config:
            The configuration, with the seed that was actually used.
        best:
            The best generator set.
        value:
            The objective at `best`.
        best_restart:
            The restart that found it; ties go to the lower index.
        certificate:
            The circumradius certificate for radius objectives.
        trace:
            One entry per restart.
    """

    config: SearchConfig
    best: GeneratorSet
    value: float
    best_restart: int
    certificate: RadiusCertificate | None = None
    trace: tuple[RestartTrace, ...] = field(default=())

    @staticmethod
    def trace_header() -> list[str]:
        return ["restart", "start_value", "best_value", "iterations", "rejected", "polished"]

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "rng_version": RNG_VERSION,
            "config": self.config.to_json(),
            "config_digest": self.config.digest(),
            "value": self.value,
            "best_restart": self.best_restart,
            "best": self.best.to_json(),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }


@dataclass(frozen=True, slots=True)
class CounterexampleRecord:
    """An uncentered rhombic dodecahedron beating the regular one.

    Attributes:
        d:
            The odd dimension.
        v_scale:
            The length of the shift added to every generator.
        z_prime:
            The shifted body rescaled to the regular body's mean width.
        cirr_reg:
            The circumradius of the regular rhombic dodecahedron.
        cirr_prime:
            The circumradius of z_prime.
        width_reg:
            The mean width of the regular body.
        width_prime:
            The mean width of z_prime.
    """

    d: int
    v_scale: float
    z_prime: GeneratorSet
    cirr_reg: float
    cirr_prime: float
    width_reg: float
    width_prime: float

    @property
    def width_check(self) -> bool:
        return abs(self.width_prime - self.width_reg) <= 1e-12 * self.width_reg

    @property
    def beats_regular(self) -> bool:
        return self.cirr_prime < self.cirr_reg

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "d": self.d,
            "v_scale": self.v_scale,
            "z_prime": self.z_prime.to_json(),
            "cirr_reg": self.cirr_reg,
            "cirr_prime": self.cirr_prime,
            "width_reg": self.width_reg,
            "width_prime": self.width_prime,
            "width_check": self.width_check,
            "beats_regular": self.beats_regular,
        }


@dataclass(frozen=True, slots=True)
class LocalProbeReport:
    """Random perturbations of a regular body under a constraint.

    Attributes:
        body:
            The regular body.
        constraint:
            The constraint every perturbation is renormalized to.
        k:
            The index of the compared V_k.
        sense:
            MINIMIZE when the regular body is claimed to minimize V_k.
        trials:
            The number of perturbations.
        perturbation:
            The standard deviation of the Gaussian noise.
        seed:
            The root seed.
        regular_value:
            V_k of the regular body.
        improving:
            Perturbations that beat the regular body by more than 1e-9
            relative.
        best_improvement:
            The largest improvement found, or 0.
    """

    body: ProbeBody
    constraint: Constraint
    k: int
    sense: Sense
    trials: int
    perturbation: float
    seed: int
    regular_value: float
    improving: int
    best_improvement: float

    @property
    def improving_fraction(self) -> float:
        return self.improving / self.trials

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "body": str(self.body),
            "constraint": str(self.constraint),
            "k": self.k,
            "sense": str(self.sense),
            "trials": self.trials,
            "perturbation": self.perturbation,
            "seed": self.seed,
            "regular_value": self.regular_value,
            "improving": self.improving,
            "improving_fraction": self.improving_fraction,
            "best_improvement": self.best_improvement,
        }
