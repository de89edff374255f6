"""Projected subgradient search over generator configurations.

Every restart draws a Gaussian starting configuration from its own
substream, normalizes it to the constraints and takes max_iters steps of
length step_a / (1 + iteration / step_b) along the normalized descent
direction, scaled to the size of the iterate. Iterates that can't be
normalized are redrawn. The best iterate of each restart is polished by
SLSQP and the best restart wins, ties going to the lower index.
"""

import math
from logging import getLogger
from typing import Final

import numpy as np

from .._workers import ordered_map
from ..errors import ConfigError
from ..errors import ConvergenceError
from ..radii import circumradius
from ..rng import fresh_seed
from ..rng import spawn_generators
from ..stochastic import polarization_asymptotic
from ..zonotope import GeneratorSet
from .data import Constraint
from .data import Objective
from .data import RestartTrace
from .data import SearchConfig
from .data import SearchOutcome
from .data import Sense
from .objectives import check_iterate
from .objectives import evaluate
from .objectives import gradient
from .objectives import is_radius_objective
from .objectives import normalize
from .objectives import polish

__all__ = ["constrained_minimize", "minimize_polarization"]

START_ATTEMPTS: Final[int] = 100


def _draw_start(config: SearchConfig, generator: np.random.Generator) -> tuple[np.ndarray, float]:
    for _ in range(START_ATTEMPTS):
        X = normalize(config, generator.standard_normal((config.n, config.d)))

        if X is None:
            continue

        value = evaluate(config, GeneratorSet(X))

        if math.isfinite(value):
            return X, value

    raise ConvergenceError(
        f"No feasible starting point after {START_ATTEMPTS} draws for {config.objective}"
    )


def _run_restart(
    config: SearchConfig, index: int, generator: np.random.Generator
) -> tuple[np.ndarray, float, RestartTrace]:
    logger = getLogger(__name__)
    sign = 1.0 if config.sense == Sense.MINIMIZE else -1.0
    unit = Constraint.UNIT_GENERATORS in config.constraints

    X, value = _draw_start(config, generator)
    start_value = value
    best_X, best_value = X, value
    rejected = 0
    iterations = 0

    for iteration in range(config.max_iters):
        iterations = iteration + 1
        direction = sign * gradient(config, X)

        if unit:
            direction -= (direction * X).sum(axis=1, keepdims=True) * X

        length = np.linalg.norm(direction)

        if length == 0.0:
            break

        step = config.step_a / (1.0 + iteration / config.step_b)
        candidate = normalize(config, X - step * np.linalg.norm(X) * direction / length)
        candidate_value = (
            math.nan if candidate is None else evaluate(config, GeneratorSet(candidate))
        )

        if not math.isfinite(candidate_value):
            rejected += 1
            X, value = _draw_start(config, generator)
            continue

        X, value = candidate, candidate_value
        check_iterate(config, GeneratorSet(X), value)

        if sign * value < sign * best_value:
            best_X, best_value = X, value

    if rejected:
        logger.warning(f"Restart {index}: redrew {rejected} infeasible iterate(s)")

    polished = False

    if config.polish:
        refined = polish(config, best_X, best_value)

        if refined is not None:
            best_X, best_value = refined
            polished = True

    logger.debug(f"Restart {index}: {start_value!r} -> {best_value!r}")

    return (
        best_X,
        best_value,
        RestartTrace(index, start_value, best_value, iterations, rejected, polished),
    )


def constrained_minimize(config: SearchConfig) -> SearchOutcome:
    """Searches for the best generator configuration under constraints.

    A config without a seed gets a fresh one, which is recorded in the
    outcome. Restart i uses substream i of the seed, so the outcome doesn't
    depend on the worker count.

    Raises:
        ConvergenceError:
            A restart found no feasible starting point.
        NumericalBreakdownError:
            An iterate violated cirr >= w/2, or the best one ir <= cirr.
    """
    logger = getLogger(__name__)

    if config.seed is None:
        config = config.with_seed(fresh_seed())
        logger.info(f"Drew fresh seed {config.seed}")

    streams = spawn_generators(config.seed, config.restarts)
    results = ordered_map(
        lambda index: _run_restart(config, index, streams[index]),
        range(config.restarts),
        config.workers,
    )

    sign = 1.0 if config.sense == Sense.MINIMIZE else -1.0
    best_restart = min(range(len(results)), key=lambda i: (sign * results[i][1], i))
    best = GeneratorSet(
        results[best_restart][0],
        f"search({config.objective}, n={config.n}, d={config.d}, seed={config.seed})",
    )
    value = evaluate(config, best)
    check_iterate(config, best, value, final=True)

    certificate = circumradius(best) if is_radius_objective(config) else None

    if config.objective == Objective.POLARIZATION:
        logger.info(
            f"Best l_{config.p:g} polarization {value!r}; "
            f"n * mu_(d,1) = {polarization_asymptotic(config.n, config.d)!r}"
        )
    else:
        logger.info(f"Best {config.objective} {value!r} from restart {best_restart}")

    return SearchOutcome(
        config=config,
        best=best,
        value=value,
        best_restart=best_restart,
        certificate=certificate,
        trace=tuple(trace for _, _, trace in results),
    )


def minimize_polarization(config: SearchConfig) -> SearchOutcome:
    """Minimizes max_u sum |<x_i, u>| over n unit vectors, i.e. 2 cirr.

    Raises:
        ConfigError:
            The config isn't an l_1 polarization minimization.
    """
    if (
        config.objective != Objective.POLARIZATION
        or config.p != 1.0
        or config.sense != Sense.MINIMIZE
    ):
        raise ConfigError("minimize_polarization needs objective polarization, p = 1, minimize")

    return constrained_minimize(config)
