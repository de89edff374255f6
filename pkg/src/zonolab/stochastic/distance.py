from typing import Final

import numpy as np

from ..errors import DimensionMismatchError
from ..errors import ParameterRangeError
from ..geometry import as_vectors
from ..zonotope import GeneratorSet
from .data import DistanceCertificate

__all__ = ["UPDATE_TOLERANCE", "zonotope_distance"]

UPDATE_TOLERANCE: Final[float] = 1e-10


def zonotope_distance(
    gs: GeneratorSet,
    points: np.ndarray,
    *,
    max_sweeps: int | None = None,
    tolerance: float = UPDATE_TOLERANCE,
) -> DistanceCertificate:
    """Distances of points from Z = sum [o, p_i] with a primal/dual bracket.

    The nearest point sum c_i p_i, c in [0, 1]^n, is found by cyclic
    coordinate descent on |x - sum c_i p_i|^2: each coordinate is moved to
    its clipped one-dimensional optimum. A point stops counting as active
    once a whole sweep moves none of its coefficients by `tolerance` or
    more.

    The residual norm is an upper bound on the distance. For the unit vector
    u along the residual, <u, x> - h(u) with h(u) = sum max(0, <u, p_i>)
    is a lower bound, since Z lies in the half-space <u, .> <= h(u).

    Args:
        gs:
            The zonotope.
        points:
            An (m, d) array of points.
        max_sweeps:
            The sweep budget, 10 * n * d by default.
        tolerance:
            The coefficient update size below which a point has converged.
    """
    points = as_vectors(points)
    vectors = gs.nonzero_generators()
    count, d = vectors.shape

    if points.shape[1] != gs.dim:
        raise DimensionMismatchError(
            f"Points have dimension {points.shape[1]}, zonotope has {gs.dim}"
        )

    if max_sweeps is None:
        max_sweeps = 10 * max(count, 1) * d

    if max_sweeps < 1:
        raise ParameterRangeError(f"Need at least one sweep, got {max_sweeps}")

    size = points.shape[0]
    squares = (vectors**2).sum(axis=1)
    coefficients = np.full((size, count), 0.5)
    residual = points - coefficients @ vectors
    converged = np.zeros(size, dtype=bool)

    for _ in range(max_sweeps):
        moved = np.zeros(size)

        for index in range(count):
            column = vectors[index]
            target = coefficients[:, index] + (residual @ column) / squares[index]
            updated = np.clip(target, 0.0, 1.0)
            delta = updated - coefficients[:, index]

            coefficients[:, index] = updated
            residual -= delta[:, None] * column
            moved = np.maximum(moved, np.abs(delta))

        converged = moved < tolerance

        if converged.all():
            break

    upper = np.linalg.norm(residual, axis=1)
    lower = np.zeros(size)
    positive = upper > 0.0

    if np.any(positive):
        directions = residual[positive] / upper[positive, None]
        heights = np.maximum(directions @ vectors.T, 0.0).sum(axis=1)
        offsets = (directions * points[positive]).sum(axis=1)
        lower[positive] = np.maximum(offsets - heights, 0.0)

    return DistanceCertificate(upper, np.minimum(lower, upper), coefficients, converged)
