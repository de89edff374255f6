import math
from logging import getLogger
from typing import Final

import numpy as np
from scipy.optimize import minimize

from ..errors import NonUnitDirectionError
from ..errors import ParameterRangeError
from ..radii import circumradius
from ..rng import make_generator
from ..rng import uniform_sphere
from ..zonotope import GeneratorSet
from ..zonotope import complement_basis
from ..zonotope.transforms import UNIT_TOLERANCE

__all__ = ["polarization_value"]

_ASCENT_STARTS: Final[int] = 8


def _check_unit_generators(gs: GeneratorSet):
    lengths = gs.norms
    worst = float(np.max(np.abs(lengths - 1.0)))

    if worst > UNIT_TOLERANCE:
        raise NonUnitDirectionError(
            f"Polarization needs unit generators; a length is off by {worst:.3g}"
        )


def _ascend(vectors: np.ndarray, p: float, start: np.ndarray) -> float:
    basis = complement_basis(start)

    def direction(offset: np.ndarray) -> np.ndarray:
        point = start + offset @ basis

        return point / np.linalg.norm(point)

    def loss(offset: np.ndarray) -> float:
        return -float((np.abs(vectors @ direction(offset)) ** p).sum())

    found = minimize(
        loss,
        np.zeros(len(basis)),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000 * len(basis)},
    )

    return -float(found.fun)


def polarization_value(
    gs: GeneratorSet, p: float = 1.0, *, directions: int = 20_000, seed: int = 0
) -> float:
    """The l_p polarization max_u sum |<x_i, u>|^p of unit generators.

    For p = 1 the maximum is exactly |sum eps_i x_i| for the best signs,
    twice the circumradius. Other exponents are evaluated numerically: a
    uniform grid of directions is scanned and its best points are refined
    by Nelder-Mead in the tangent plane.

    Raises:
        NonUnitDirectionError:
            A generator's length differs from 1 by more than 1e-9.
        ParameterRangeError:
            p isn't positive.
    """
    if not p > 0 or not math.isfinite(p):
        raise ParameterRangeError(f"p must be positive, got {p}")

    _check_unit_generators(gs)

    if p == 1.0:
        return 2.0 * circumradius(gs).value

    vectors = gs.generators
    grid = uniform_sphere(make_generator(seed), directions, gs.dim)
    values = (np.abs(grid @ vectors.T) ** p).sum(axis=1)
    starts = grid[np.argsort(-values, kind="stable")[:_ASCENT_STARTS]]
    best = max(float(values.max()), *(_ascend(vectors, p, start) for start in starts))

    getLogger(__name__).debug(f"Numerical l_{p:g} polarization of {gs.label!r}: {best!r}")

    return best
