import math
from logging import getLogger
from typing import Callable
from typing import Final

import numpy as np
from scipy.optimize import minimize

from ..errors import DegenerateZonotopeError
from ..errors import NumericalBreakdownError
from ..functionals import intrinsic_volume
from ..functionals import mean_width
from ..functionals import power2_ratio
from ..radii import circumradius
from ..radii import circumradius_maximizers
from ..radii import inradius
from ..radii import signed_sum_maximizers
from ..zonotope import GeneratorSet
from ..zonotope import span_rank
from .data import Constraint
from .data import Objective
from .data import SearchConfig
from .data import Sense
from .polarization import polarization_value

__all__ = [
    "normalize",
    "evaluate",
    "gradient",
    "check_iterate",
    "is_radius_objective",
    "polish",
]

DIFFERENCE_STEP: Final[float] = 1e-6
PIECE_TOLERANCE: Final[float] = 5e-2
POLISH_ROUNDS: Final[int] = 5

_MAX_PIECES: Final[int] = 256
_RADIUS_SLACK: Final[float] = 1e-9

_ORDER: Final[dict[Constraint, int]] = {
    Constraint.CENTERED: 0,
    Constraint.UNIT_GENERATORS: 1,
}


def is_radius_objective(config: SearchConfig) -> bool:
    """Whether the objective is a maximum over sign vectors."""
    return config.objective == Objective.CIRCUMRADIUS or (
        config.objective == Objective.POLARIZATION and config.p == 1.0
    )


def _radius_factor(config: SearchConfig) -> float:
    return 0.5 if config.objective == Objective.CIRCUMRADIUS else 1.0


def _scale_to(config: SearchConfig, X: np.ndarray) -> np.ndarray | None:
    gs = GeneratorSet(X)
    target = config.target

    match config.scaling:
        case Constraint.FIXED_MEAN_WIDTH:
            current = mean_width(gs)
        case Constraint.FIXED_VOLUME:
            if span_rank(gs.generators) < config.d:
                return None

            current = intrinsic_volume(gs, config.d) ** (1.0 / config.d)
            target = target ** (1.0 / config.d)
        case Constraint.FIXED_INRADIUS:
            try:
                current = inradius(gs).value
            except DegenerateZonotopeError:
                return None
        case Constraint.FIXED_CIRCUMRADIUS:
            current = circumradius(gs).value
        case _:
            return X

    if not current > 0 or not math.isfinite(current):
        return None

    return X * (target / current)


def normalize(config: SearchConfig, X: np.ndarray) -> np.ndarray | None:
    """Applies the constraints of a search to a generator array.

    Centering comes first, then unit lengths, then the scaling constraint.

    Returns:
        The normalized (n, d) array, or None when the point can't be
        normalized (a zero generator under unit-generators, a degenerate
        body under fixed-volume or fixed-inradius, or non-finite entries).
    """
    X = np.array(X, dtype=float)

    if not np.all(np.isfinite(X)):
        return None

    for constraint in sorted(config.constraints, key=lambda c: _ORDER.get(c, 2)):
        match constraint:
            case Constraint.CENTERED:
                X = X - X.mean(axis=0)
            case Constraint.UNIT_GENERATORS:
                lengths = np.linalg.norm(X, axis=1)

                if np.any(lengths < 1e-12):
                    return None

                X = X / lengths[:, None]
            case _:
                X = _scale_to(config, X)

                if X is None:
                    return None

    return X if np.all(np.isfinite(X)) else None


def evaluate(config: SearchConfig, gs: GeneratorSet) -> float:
    """The raw objective of a generator set, independent of the sense.

    A power-2 ratio with a vanishing denominator evaluates to NaN.
    """
    match config.objective:
        case Objective.POLARIZATION:
            return polarization_value(gs, config.p)
        case Objective.CIRCUMRADIUS:
            return circumradius(gs).value
        case Objective.INTRINSIC_VOLUME:
            return intrinsic_volume(gs, config.k)
        case Objective.POWER2_RATIO:
            try:
                return power2_ratio(gs, config.k, config.m)
            except DegenerateZonotopeError:
                return math.nan


def _subgradient(config: SearchConfig, X: np.ndarray) -> np.ndarray:
    # The average over tied maximizers of eps_i * s / |s|.
    gs = GeneratorSet(X)
    total = np.zeros_like(X)
    count = 0

    for signs in circumradius_maximizers(gs):
        eps = np.asarray(signs, dtype=float)
        signed = eps @ X
        length = np.linalg.norm(signed)

        if length == 0.0:
            continue

        total += np.outer(eps, signed / length)
        count += 1

    return _radius_factor(config) * total / max(count, 1)


def _difference_gradient(config: SearchConfig, X: np.ndarray) -> np.ndarray:
    h = DIFFERENCE_STEP * max(1.0, float(np.abs(X).max()))
    grad = np.zeros_like(X)

    for index in np.ndindex(*X.shape):
        forward = X.copy()
        backward = X.copy()
        forward[index] += h
        backward[index] -= h
        grad[index] = (
            evaluate(config, GeneratorSet(forward)) - evaluate(config, GeneratorSet(backward))
        ) / (2 * h)

    return grad


def gradient(config: SearchConfig, X: np.ndarray) -> np.ndarray:
    """A (sub)gradient of the raw objective with respect to the generators.

    Radius objectives use the average of eps_i * s / |s| over every tied
    maximizing sign vector; everything else uses central differences with
    step 1e-6 relative to the largest entry.
    """
    if is_radius_objective(config):
        return _subgradient(config, X)

    return _difference_gradient(config, X)


def check_iterate(config: SearchConfig, gs: GeneratorSet, value: float, final: bool = False):
    """Checks cirr >= w/2 on iterates of radius objectives, and ir <= cirr on the final one.

    Raises:
        NumericalBreakdownError:
            One of the inequalities is violated beyond 1e-9 relative.
    """
    if not is_radius_objective(config):
        return

    outer = value / (2.0 * _radius_factor(config))
    half_width = 0.5 * mean_width(gs)

    if outer < half_width * (1.0 - _RADIUS_SLACK):
        raise NumericalBreakdownError(
            f"Circumradius {outer!r} fell below half the mean width {half_width!r}"
        )

    if final and span_rank(gs.generators) == gs.dim:
        inner = inradius(gs).value

        if inner > outer * (1.0 + _RADIUS_SLACK):
            raise NumericalBreakdownError(
                f"Inradius {inner!r} exceeds circumradius {outer!r}"
            )


def _equalities(config: SearchConfig) -> list[Callable[[np.ndarray], np.ndarray]]:
    n, d = config.n, config.d
    shape = (n, d)
    equalities = []

    for constraint in config.constraints:
        match constraint:
            case Constraint.UNIT_GENERATORS:
                equalities.append(lambda z: (z[: n * d].reshape(shape) ** 2).sum(axis=1) - 1.0)
            case Constraint.CENTERED:
                equalities.append(lambda z: z[: n * d].reshape(shape).sum(axis=0))
            case Constraint.FIXED_MEAN_WIDTH:
                equalities.append(
                    lambda z: np.array(
                        [mean_width(GeneratorSet(z[: n * d].reshape(shape))) - config.target]
                    )
                )
            case Constraint.FIXED_VOLUME:
                equalities.append(
                    lambda z: np.array(
                        [intrinsic_volume(GeneratorSet(z[: n * d].reshape(shape)), d) - config.target]
                    )
                )

    return equalities


def _polishable(config: SearchConfig) -> bool:
    if config.scaling in (Constraint.FIXED_INRADIUS, Constraint.FIXED_CIRCUMRADIUS):
        return False

    if is_radius_objective(config):
        return config.sense == Sense.MINIMIZE

    return config.objective != Objective.POLARIZATION


def _solve(config: SearchConfig, X: np.ndarray, value: float) -> np.ndarray | None:
    n, d = config.n, config.d
    constraints = [{"type": "eq", "fun": fun} for fun in _equalities(config)]
    options = {"maxiter": 200, "ftol": 1e-15}

    if is_radius_objective(config):
        # Epigraph form: minimize tau subject to tau >= c |eps @ X| per piece.
        pieces = signed_sum_maximizers(GeneratorSet(X), rel_tol=PIECE_TOLERANCE)
        order = np.argsort(-np.asarray(pieces.norms), kind="stable")[:_MAX_PIECES]
        signs = np.asarray([pieces.sign_vectors[i] for i in order], dtype=float)
        factor = _radius_factor(config)

        def pieces_jac(z: np.ndarray) -> np.ndarray:
            sums = signs @ z[: n * d].reshape(n, d)
            lengths = np.maximum(np.linalg.norm(sums, axis=1), 1e-300)
            blocks = signs[:, :, None] * (sums / lengths[:, None])[:, None, :]

            return np.hstack((-factor * blocks.reshape(len(signs), n * d), np.ones((len(signs), 1))))

        constraints.append(
            {
                "type": "ineq",
                "fun": lambda z: z[-1]
                - factor * np.linalg.norm(signs @ z[: n * d].reshape(n, d), axis=1),
                "jac": pieces_jac,
            }
        )
        start = np.append(X.ravel(), value)
        found = minimize(
            lambda z: z[-1],
            start,
            jac=lambda z: np.append(np.zeros(n * d), 1.0),
            method="SLSQP",
            constraints=constraints,
            options=options,
        )
    else:
        sign = 1.0 if config.sense == Sense.MINIMIZE else -1.0

        def loss(z: np.ndarray) -> float:
            result = evaluate(config, GeneratorSet(z[: n * d].reshape(n, d)))

            return sign * result if math.isfinite(result) else math.inf

        found = minimize(
            loss, X.ravel(), method="SLSQP", constraints=constraints, options=options
        )

    if not np.all(np.isfinite(found.x)):
        return None

    return found.x[: n * d].reshape(n, d)


def polish(config: SearchConfig, X: np.ndarray, value: float) -> tuple[np.ndarray, float] | None:
    """Refines a point with SLSQP.

    Radius objectives are minimized in epigraph form over the sign vectors
    within 5e-2 relative of the maximum, for up to five rounds with the
    pieces collected again each round. The result is renormalized and
    evaluated exactly, and only kept when it improves on `value`.

    Returns:
        The improved point and its value, or None.
    """
    if not _polishable(config):
        return None

    sign = 1.0 if config.sense == Sense.MINIMIZE else -1.0
    rounds = POLISH_ROUNDS if is_radius_objective(config) else 1
    best: tuple[np.ndarray, float] | None = None

    for _ in range(rounds):
        try:
            candidate = _solve(config, X, value)
        except (ValueError, ArithmeticError) as e:
            getLogger(__name__).debug(f"SLSQP polish failed: {e}")
            break

        candidate = None if candidate is None else normalize(config, candidate)

        if candidate is None:
            break

        refined = evaluate(config, GeneratorSet(candidate))

        if not math.isfinite(refined) or sign * refined >= sign * value:
            break

        X, value = candidate, refined
        best = (X, value)

    return best
