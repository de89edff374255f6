"""Monte Carlo estimators cross-checking the exact formulas.

Samples are drawn in fixed batches of 4096; batch i uses substream i of the
seed, so the values, and every estimate built from them, don't depend on
how many workers evaluate the batches.
"""

import math
from itertools import combinations
from logging import getLogger
from typing import Callable
from typing import Final

import numpy as np

from .._workers import ordered_map
from ..errors import ConvergenceError
from ..errors import DegenerateZonotopeError
from ..errors import EnumerationBoundError
from ..errors import ParameterRangeError
from ..functionals import intrinsic_volume
from ..functionals import steiner_polynomial
from ..functionals import surface_area
from ..geometry import complement_normals
from ..geometry import kappa
from ..geometry import omega
from ..geometry import subset_batches
from ..rng import spawn_generators
from ..rng import uniform_sphere
from ..zonotope import GeneratorSet
from ..zonotope import span_rank
from ..zonotope.transforms import SUBSET_LIMIT
from .data import BATCH_SIZE
from .data import MCEstimate
from .distance import zonotope_distance

__all__ = [
    "MIN_WEDGE_SAMPLES",
    "random_wedge_constant",
    "kubota_constant",
    "expected_random_wedge",
    "expected_volume_random_zonotope",
    "cauchy_surface_integral",
    "kubota_intrinsic_integral",
    "steiner_mc_volume",
]

MIN_WEDGE_SAMPLES: Final[int] = 1000
PER_SAMPLE_SUBSETS: Final[int] = 100_000
STEINER_MAX_DIMENSION: Final[int] = 4

_MAX_RESAMPLE_ROUNDS: Final[int] = 20
_STACK_ELEMENTS: Final[int] = 1 << 22


def _batch_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, BATCH_SIZE)

    return [BATCH_SIZE] * full + ([rest] if rest else [])


def _draw_batches[R](
    draw: Callable[[np.random.Generator, int], R],
    samples: int,
    seed: int,
    workers: int | None,
) -> list[R]:
    sizes = _batch_sizes(samples)
    streams = spawn_generators(seed, len(sizes))

    return ordered_map(lambda job: draw(*job), list(zip(streams, sizes)), workers)


def _check_samples(samples: int, minimum: int = 2):
    if samples < minimum:
        raise ParameterRangeError(f"Need at least {minimum} samples, got {samples}")


def _check_subsets(n: int, k: int, allow_large: bool):
    required = math.comb(n, k)

    if required > PER_SAMPLE_SUBSETS and not allow_large:
        raise EnumerationBoundError(
            f"Each sample would visit every {k}-subset of {n} generators",
            required,
            PER_SAMPLE_SUBSETS,
        )


def _require_full_dimensional(gs: GeneratorSet) -> np.ndarray:
    vectors = gs.nonzero_generators()

    if len(vectors) == 0 or span_rank(vectors) < gs.dim:
        raise DegenerateZonotopeError(
            f"Expected a full-dimensional zonotope in R^{gs.dim}"
        )

    return vectors


def random_wedge_constant(d: int) -> float:
    """E|p_1 ^ ... ^ p_d| for independent uniform unit vectors.

    The value is 2 omega_{d+1}^(d-1) / omega_d^d: 2/pi for d = 2 and pi/8
    for d = 3.
    """
    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")

    return 2.0 * omega(d + 1) ** (d - 1) / omega(d) ** d


def kubota_constant(d: int, i: int, k: int) -> float:
    """C(d,i) kappa_{k-i} kappa_d / (C(k,i) kappa_{d-i} kappa_k).

    Multiplying the mean of V_i over projections onto uniform k-subspaces
    by this constant gives V_i.
    """
    return (
        math.comb(d, i)
        * kappa(k - i)
        * kappa(d)
        / (math.comb(k, i) * kappa(d - i) * kappa(k))
    )


def expected_random_wedge(
    d: int, samples: int = 100_000, seed: int = 0, *, workers: int | None = None
) -> MCEstimate:
    """Averages |det(p_1, ..., p_d)| over d-tuples of uniform unit vectors.

    Raises:
        ParameterRangeError:
            d < 2 or fewer than 1000 samples.
    """
    constant = random_wedge_constant(d)
    _check_samples(samples, MIN_WEDGE_SAMPLES)

    def draw(generator: np.random.Generator, size: int) -> np.ndarray:
        tuples = uniform_sphere(generator, size * d, d).reshape(size, d, d)

        return np.abs(np.linalg.det(tuples))

    values = np.concatenate(_draw_batches(draw, samples, seed, workers))

    return MCEstimate.from_values(f"E|wedge| (d={d})", values, seed, constant)


def expected_volume_random_zonotope(
    n: int,
    d: int,
    samples: int = 10_000,
    seed: int = 0,
    *,
    allow_large: bool = False,
    workers: int | None = None,
) -> MCEstimate:
    """Averages V_d of zonotopes with n uniform unit generators.

    By linearity the expectation is C(n, d) times `random_wedge_constant(d)`.
    """
    constant = random_wedge_constant(d)

    if n < d:
        raise ParameterRangeError(f"Need n >= d, got n={n}, d={d}")

    _check_samples(samples)
    _check_subsets(n, d, allow_large)

    def draw(generator: np.random.Generator, size: int) -> np.ndarray:
        generators = uniform_sphere(generator, size * n, d).reshape(size, n, d)
        volumes = np.zeros(size)
        chunk = max(1, _STACK_ELEMENTS // (size * d * d))

        for batch in subset_batches(n, d, chunk):
            volumes += np.abs(np.linalg.det(generators[:, batch])).sum(axis=1)

        return volumes

    values = np.concatenate(_draw_batches(draw, samples, seed, workers))

    return MCEstimate.from_values(
        f"E V_{d} (n={n}, d={d})", values, seed, math.comb(n, d) * constant
    )


def _projection_normals(vectors: np.ndarray, d: int) -> np.ndarray:
    # V_{d-1}(Z | u^perp) = sum over (d-1)-subsets I of |<w_I, u>|, with w_I
    # the generalized cross product of p_I.
    pieces = []

    for batch in subset_batches(len(vectors), d - 1):
        normals, magnitudes = complement_normals(vectors[batch])
        pieces.append(normals * magnitudes[:, None])

    return np.vstack(pieces)


def cauchy_surface_integral(
    gs: GeneratorSet,
    samples: int = 10_000,
    seed: int = 0,
    *,
    workers: int | None = None,
) -> MCEstimate:
    """Estimates the surface area from the areas of random projections.

    Cauchy's formula gives surf(Z) = omega_d / kappa_{d-1} times the mean of
    V_{d-1}(Z | u^perp) over uniform directions u.

    Raises:
        DegenerateZonotopeError:
            The zonotope isn't full-dimensional.
    """
    d = gs.dim

    if d < 2:
        raise ParameterRangeError("Cauchy's formula needs dimension at least 2")

    _check_samples(samples)
    vectors = _require_full_dimensional(gs)

    if math.comb(len(vectors), d - 1) > SUBSET_LIMIT:
        raise EnumerationBoundError(
            "Too many facet directions to tabulate",
            math.comb(len(vectors), d - 1),
            SUBSET_LIMIT,
        )

    weighted = _projection_normals(vectors, d)
    factor = omega(d) / kappa(d - 1)

    def draw(generator: np.random.Generator, size: int) -> np.ndarray:
        directions = uniform_sphere(generator, size, d)

        return factor * np.abs(directions @ weighted.T).sum(axis=1)

    values = np.concatenate(_draw_batches(draw, samples, seed, workers))

    return MCEstimate.from_values(
        f"surface ({gs.label or 'zonotope'})",
        values,
        seed,
        surface_area(gs, allow_large=True),
    )


def _projected_volumes(projected: np.ndarray, i: int) -> np.ndarray:
    if i == 1:
        return np.linalg.norm(projected, axis=2).sum(axis=1)

    gram = projected @ projected.transpose(0, 2, 1)
    volumes = np.zeros(projected.shape[0])

    for subset in combinations(range(projected.shape[1]), i):
        index = list(subset)
        minors = np.linalg.det(gram[:, index][:, :, index])
        volumes += np.sqrt(np.maximum(minors, 0.0))

    return volumes


def kubota_intrinsic_integral(
    gs: GeneratorSet,
    i: int,
    k: int,
    samples: int = 10_000,
    seed: int = 0,
    *,
    allow_large: bool = False,
    workers: int | None = None,
) -> MCEstimate:
    """Estimates V_i from projections onto uniform random k-subspaces.

    Each subspace is the span of k Gaussian vectors, orthonormalized by QR.

    Raises:
        ParameterRangeError:
            Unless 1 <= i <= k <= d-1.
    """
    d = gs.dim

    if not 1 <= i <= k <= d - 1:
        raise ParameterRangeError(
            f"Need 1 <= i <= k <= d-1, got i={i}, k={k}, d={d}"
        )

    _check_samples(samples)
    vectors = gs.nonzero_generators()
    _check_subsets(len(vectors), i, allow_large)
    factor = kubota_constant(d, i, k)

    def draw(generator: np.random.Generator, size: int) -> np.ndarray:
        frames, _ = np.linalg.qr(generator.standard_normal((size, d, k)))
        projected = np.einsum("nd,sdk->snk", vectors, frames)

        return factor * _projected_volumes(projected, i)

    values = np.concatenate(_draw_batches(draw, samples, seed, workers))

    return MCEstimate.from_values(
        f"V_{i} via {k}-subspaces ({gs.label or 'zonotope'})",
        values,
        seed,
        intrinsic_volume(gs, i, allow_large=True),
    )


def steiner_mc_volume(
    gs: GeneratorSet,
    t: float,
    samples: int = 100_000,
    seed: int = 0,
    *,
    workers: int | None = None,
) -> MCEstimate:
    """Hit-or-miss estimate of V_d(Z + tB^d) inside the bounding box.

    A point belongs to the parallel body when its distance from Z is at
    most t. Points whose distance bracket straddles t after the sweep
    budget are redrawn from the same batch stream; the number of redraws
    is logged.

    Raises:
        ParameterRangeError:
            t is negative or d > 4.
        DegenerateZonotopeError:
            The zonotope isn't full-dimensional.
        ConvergenceError:
            Some points stayed undecided after 20 rounds of redraws.
    """
    d = gs.dim

    if not t >= 0.0 or not math.isfinite(t):
        raise ParameterRangeError(f"t must be non-negative, got {t}")

    if d > STEINER_MAX_DIMENSION:
        raise ParameterRangeError(
            f"Hit-or-miss sampling is limited to d <= {STEINER_MAX_DIMENSION}, got {d}"
        )

    _check_samples(samples)
    vectors = _require_full_dimensional(gs)
    low = np.minimum(vectors, 0.0).sum(axis=0) - t
    high = np.maximum(vectors, 0.0).sum(axis=0) + t
    box = float(np.prod(high - low))
    tol = 1e-12 * (1.0 + math.fsum(gs.norms))

    def draw(generator: np.random.Generator, size: int) -> tuple[np.ndarray, int]:
        points = low + (high - low) * generator.random((size, d))
        decision = zonotope_distance(gs, points).within(t, tol)
        redrawn = 0

        for _ in range(_MAX_RESAMPLE_ROUNDS):
            undecided = np.flatnonzero(np.isnan(decision))

            if undecided.size == 0:
                return box * decision, redrawn

            redrawn += undecided.size
            points = low + (high - low) * generator.random((undecided.size, d))
            decision[undecided] = zonotope_distance(gs, points).within(t, tol)

        raise ConvergenceError(
            f"{int(np.isnan(decision).sum())} points stayed undecided after "
            f"{_MAX_RESAMPLE_ROUNDS} rounds of redraws"
        )

    results = _draw_batches(draw, samples, seed, workers)
    redrawn = sum(count for _, count in results)

    if redrawn:
        getLogger(__name__).warning(
            f"Redrew {redrawn} of {samples} points whose projection solve didn't settle"
        )

    return MCEstimate.from_values(
        f"V_{d}(Z + {t:g}B)",
        np.concatenate([values for values, _ in results]),
        seed,
        steiner_polynomial(gs, allow_large=True).evaluate(t),
    )
