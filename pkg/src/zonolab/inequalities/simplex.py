import math
from itertools import product

import numpy as np

from ..errors import ParameterRangeError
from ..geometry import revolving_door_subsets
from ..geometry import wedge_norm
from ..zonotope import make_regular_simplex
from .data import Simplex

__all__ = [
    "regular_simplex",
    "random_simplex",
    "simplex_face_power_sum",
    "simplex_cone_sum",
    "simplex_sign_span",
]


def regular_simplex(d: int, volume: float = 1.0) -> Simplex:
    """A regular simplex centered at o with the given volume."""
    return Simplex(make_regular_simplex(d)).with_volume(volume)


def random_simplex(d: int, generator: np.random.Generator) -> Simplex:
    """A simplex with d+1 standard Gaussian vertices."""
    if d < 1:
        raise ParameterRangeError(f"Dimension must be positive, got {d}")

    return Simplex(generator.standard_normal((d + 1, d)))


def _check_face_dimension(simplex: Simplex, k: int):
    if not 1 <= k <= simplex.d - 1:
        raise ParameterRangeError(f"Need 1 <= k <= d-1, got k={k}, d={simplex.d}")


def simplex_face_power_sum(simplex: Simplex, k: int, m: float) -> float:
    """The sum of the m-th powers of the k-volumes of the k-faces.

    Args:
        simplex:
            The simplex.
        k:
            The face dimension, 1 <= k <= d-1.
        m:
            The power, m >= 1.
    """
    _check_face_dimension(simplex, k)

    if not m >= 1.0 or not math.isfinite(m):
        raise ParameterRangeError(f"Need m >= 1, got {m}")

    vertices = simplex.vertices
    scale = math.factorial(k)
    volumes = []

    for face in revolving_door_subsets(simplex.d + 1, k + 1):
        edges = vertices[list(face[1:])] - vertices[face[0]]
        volumes.append((wedge_norm(edges) / scale) ** m)

    return math.fsum(volumes)


def simplex_cone_sum(simplex: Simplex, k: int) -> float:
    """The sum of the k-volumes of conv({o} u F) over the (k-1)-faces F."""
    _check_face_dimension(simplex, k)

    vertices = simplex.vertices
    scale = math.factorial(k)

    return math.fsum(
        wedge_norm(vertices[list(face)]) / scale
        for face in revolving_door_subsets(simplex.d + 1, k)
    )


def simplex_sign_span(simplex: Simplex) -> float:
    """The largest |sum eps_i p_i| over sign vectors of the vertices."""
    tails = np.array(list(product((1.0, -1.0), repeat=simplex.d)))
    signs = np.hstack((np.ones((len(tails), 1)), tails))

    return float(np.linalg.norm(signs @ simplex.vertices, axis=1).max())
