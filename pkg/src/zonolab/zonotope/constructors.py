import math
from logging import getLogger
from typing import Final

import numpy as np

from ..errors import ConvergenceError
from ..errors import ParameterRangeError
from ..rng import make_generator
from ..rng import uniform_sphere
from .data import GeneratorSet

__all__ = [
    "make_cube",
    "make_regular_simplex",
    "make_regular_rhombic_dodecahedron",
    "make_regular_zonogon",
    "make_fibonacci_hemisphere",
    "random_unit_generators",
    "random_parallelotope",
    "random_rhombic_dodecahedron",
    "random_centered_rhombic_dodecahedron",
]

_MAX_REJECTIONS: Final[int] = 100_000


def _check_edge(edge: float):
    if not edge > 0 or not math.isfinite(edge):
        raise ParameterRangeError(f"Edge length must be positive, got {edge}")


def make_cube(d: int, edge: float = 1.0) -> GeneratorSet:
    """The cube of the given edge, generated by the scaled standard basis."""
    if d < 1:
        raise ParameterRangeError(f"Dimension must be positive, got {d}")

    _check_edge(edge)

    return GeneratorSet(edge * np.eye(d), f"cube(d={d}, edge={edge:g})")


def make_regular_simplex(d: int, radius: float = 1.0) -> np.ndarray:
    """Vertices of a regular simplex centered at o with the given circumradius.

    Returns a (d+1, d) array whose rows have pairwise inner product
    -radius^2 / d and sum to the zero vector.
    """
    if d < 1:
        raise ParameterRangeError(f"Dimension must be positive, got {d}")

    root = math.sqrt(d + 1)
    ones = np.ones(d)

    vertices = np.empty((d + 1, d))
    vertices[:d] = math.sqrt((d + 1) / d) * np.eye(d) + (1 - root) / (
        d * math.sqrt(d)
    ) * ones
    vertices[d] = -ones / math.sqrt(d)

    return radius * vertices


def make_regular_rhombic_dodecahedron(d: int, edge: float = 1.0) -> GeneratorSet:
    """The rhombic dodecahedron generated by a regular simplex centered at o.

    The d+1 generators have length `edge`, pairwise inner product
    -edge^2 / d and zero sum.
    """
    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")

    _check_edge(edge)

    return GeneratorSet(
        make_regular_simplex(d, edge),
        f"regular-rhombic-dodecahedron(d={d}, edge={edge:g})",
    )


def make_regular_zonogon(n: int, edge: float = 1.0) -> GeneratorSet:
    """The planar regular 2n-gon generated by n segments at angles k*pi/n."""
    if n < 2:
        raise ParameterRangeError(f"A zonogon needs at least 2 generators, got {n}")

    _check_edge(edge)

    angles = np.arange(n) * math.pi / n

    return GeneratorSet(
        edge * np.column_stack((np.cos(angles), np.sin(angles))),
        f"regular-zonogon(n={n}, edge={edge:g})",
    )


def make_fibonacci_hemisphere(n: int) -> GeneratorSet:
    """n unit generators on a golden-angle spiral over the upper hemisphere.

    A segment and its reflection through o generate translates of one
    another, so directions on a hemisphere cover every segment direction.
    """
    if n < 1:
        raise ParameterRangeError(f"Need at least one generator, got {n}")

    index = np.arange(n)
    heights = 1.0 - (index + 0.5) / n
    radii = np.sqrt(1.0 - heights**2)
    angles = index * math.pi * (3.0 - math.sqrt(5.0))

    return GeneratorSet(
        np.column_stack((radii * np.cos(angles), radii * np.sin(angles), heights)),
        f"fibonacci-hemisphere(n={n})",
    )


def random_unit_generators(
    n: int, d: int, seed: int | np.random.Generator
) -> GeneratorSet:
    """n independent uniform points of S^{d-1}.

    Args:
        n:
            The number of generators.
        d:
            The dimension, at least 2.
        seed:
            A seed for a fresh Philox stream, or a generator to draw from.
    """
    if n < 1:
        raise ParameterRangeError(f"Need at least one generator, got {n}")

    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")

    generator = seed if isinstance(seed, np.random.Generator) else make_generator(seed)
    label = (
        f"random-unit(n={n}, d={d}, seed={seed})"
        if isinstance(seed, int)
        else f"random-unit(n={n}, d={d})"
    )

    return GeneratorSet(uniform_sphere(generator, n, d), label)


def random_parallelotope(d: int, generator: np.random.Generator) -> GeneratorSet:
    """A parallelotope with d independent standard Gaussian generators."""
    if d < 1:
        raise ParameterRangeError(f"Dimension must be positive, got {d}")

    return GeneratorSet(generator.standard_normal((d, d)), f"random-parallelotope(d={d})")


def _contains_origin(points: np.ndarray) -> bool:
    # Barycentric coordinates of o with respect to the d+1 points.
    count = points.shape[0]
    system = np.vstack((points.T, np.ones(count)))
    target = np.zeros(count)
    target[-1] = 1.0

    try:
        weights = np.linalg.solve(system, target)
    except np.linalg.LinAlgError:
        return False

    return bool(np.all(weights >= 0.0))


def random_rhombic_dodecahedron(
    d: int, generator: np.random.Generator
) -> GeneratorSet:
    """d+1 Gaussian generators, resampled until o lies in their convex hull.

    Raises:
        ConvergenceError:
            No admissible sample was drawn within the rejection budget.
    """
    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")

    for attempt in range(1, _MAX_REJECTIONS + 1):
        points = generator.standard_normal((d + 1, d))

        if _contains_origin(points):
            if attempt > 1:
                getLogger(__name__).debug(
                    f"Accepted a rhombic dodecahedron after {attempt} draws"
                )

            return GeneratorSet(points, f"random-rhombic-dodecahedron(d={d})")

    raise ConvergenceError(
        f"No simplex containing o in {_MAX_REJECTIONS} draws for d={d}"
    )


def random_centered_rhombic_dodecahedron(
    d: int, generator: np.random.Generator
) -> GeneratorSet:
    """d+1 Gaussian generators shifted so that they sum to o."""
    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")

    points = generator.standard_normal((d + 1, d))
    points -= points.mean(axis=0)

    return GeneratorSet(points, f"random-centered-rhombic-dodecahedron(d={d})")
