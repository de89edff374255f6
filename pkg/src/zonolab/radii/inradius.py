import math
from logging import getLogger

import numpy as np
from scipy.optimize import minimize

from ..errors import DegenerateZonotopeError
from ..errors import EnumerationBoundError
from ..geometry import complement_normals
from ..geometry import subset_batches
from ..rng import make_generator
from ..rng import uniform_sphere
from ..zonotope import GeneratorSet
from ..zonotope import complement_basis
from ..zonotope import span_rank
from ..zonotope.transforms import SUBSET_LIMIT
from .circumradius import circumradius
from .data import RadiusCertificate
from .data import RadiusKind
from .data import RatioReport
from .support import support_many

__all__ = [
    "facet_normals",
    "inradius",
    "ratio_report",
    "sphere_grid_inradius",
]

_TIE_TOLERANCE = 1e-12


def _require_full_dimensional(gs: GeneratorSet) -> np.ndarray:
    vectors = gs.nonzero_generators()

    if span_rank(vectors) < gs.dim:
        raise DegenerateZonotopeError(
            f"The generators don't span R^{gs.dim}; the inradius is 0 "
            f"and has no facet certificate"
        )

    required = math.comb(len(vectors), gs.dim - 1)

    if required > SUBSET_LIMIT:
        raise EnumerationBoundError(
            f"Facet enumeration over C({len(vectors)}, {gs.dim - 1}) subsets "
            f"is refused",
            required,
            SUBSET_LIMIT,
        )

    return vectors


def _facet_normal_batches(vectors: np.ndarray, d: int):
    for batch in subset_batches(len(vectors), d - 1):
        normals, magnitudes = complement_normals(vectors[batch])

        yield normals[magnitudes > 0.0]


def facet_normals(gs: GeneratorSet) -> np.ndarray:
    """Canonical unit normals of the facets of a full-dimensional zonotope.

    Every linearly independent (d-1)-subset of the generators spans the
    hyperplane of a pair of parallel facets; duplicates from parallel
    subsets are removed.

    Returns:
        A (F, d) array of normals in lexicographic order.
    """
    d = gs.dim
    vectors = _require_full_dimensional(gs)

    if d == 1:
        return np.ones((1, 1))

    normals = np.vstack(list(_facet_normal_batches(vectors, d)))
    rounded = np.round(normals, 12)
    _, first = np.unique(rounded, axis=0, return_index=True)
    unique = normals[np.sort(first)]

    return unique[np.lexsort(unique.T[::-1])]


def inradius(gs: GeneratorSet) -> RadiusCertificate:
    """The inradius, the minimum of the support function over facet normals.

    The support function of a full-dimensional o-symmetric polytope attains
    its minimum over the sphere at an outer facet normal, so the finite
    minimum is exact. Ties within 1e-12 relative go to the lexicographically
    smallest normal.

    Raises:
        DegenerateZonotopeError:
            The zonotope isn't full-dimensional.
        EnumerationBoundError:
            More than 10^7 (d-1)-subsets would be visited.
    """
    d = gs.dim
    vectors = _require_full_dimensional(gs)

    if d == 1:
        witness = np.ones(1)
    else:
        best = math.inf
        pool: list[np.ndarray] = []

        for normals in _facet_normal_batches(vectors, d):
            if len(normals) == 0:
                continue

            values = 0.5 * np.abs(normals @ vectors.T).sum(axis=1)
            best = min(best, float(values.min()))
            pool.append(normals[values <= best * (1.0 + _TIE_TOLERANCE)])

        candidates = np.vstack(pool)
        values = 0.5 * np.abs(candidates @ vectors.T).sum(axis=1)
        ties = candidates[values <= best * (1.0 + _TIE_TOLERANCE)]
        witness = ties[np.lexsort(ties.T[::-1])[0]]

    value = float(support_many(gs, witness[None, :])[0])

    return RadiusCertificate(
        RadiusKind.INRADIUS, value, tuple(float(x) for x in witness)
    )


def ratio_report(
    gs: GeneratorSet, *, allow_large: bool = False, workers: int | None = None
) -> RatioReport:
    """Both radii and cirr / ir - 1."""
    outer = circumradius(gs, allow_large=allow_large, workers=workers)
    inner = inradius(gs)

    return RatioReport(outer, inner, max(outer.value / inner.value - 1.0, 0.0))


def _polish(gs: GeneratorSet, start: np.ndarray, width: float) -> np.ndarray:
    d = gs.dim
    basis = complement_basis(start)

    def direction(offset: np.ndarray) -> np.ndarray:
        point = start + offset @ basis

        return point / np.linalg.norm(point)

    found = minimize(
        lambda offset: float(support_many(gs, direction(offset)[None, :])[0]),
        np.zeros(d - 1),
        method="Nelder-Mead",
        options={
            "xatol": 1e-13,
            "fatol": 1e-15,
            "maxiter": 4000 * d,
            "initial_simplex": np.vstack((np.zeros(d - 1), width * np.eye(d - 1))),
        },
    )

    return direction(found.x)


def sphere_grid_inradius(
    gs: GeneratorSet,
    directions: int = 1_000_000,
    seed: int = 0,
    *,
    refine: int = 8,
) -> float:
    """Samples the support function over the sphere and polishes the minimum.

    This doesn't look at facets at all: uniform random directions are
    scanned in batches, then the best `refine` directions are improved by
    Nelder-Mead in the tangent plane.
    """
    d = gs.dim
    generator = make_generator(seed)
    best_values: list[np.ndarray] = []
    best_points: list[np.ndarray] = []
    remaining = directions

    while remaining > 0:
        size = min(remaining, 100_000)
        points = uniform_sphere(generator, size, d)
        values = support_many(gs, points)
        keep = np.argsort(values, kind="stable")[:refine]
        best_values.append(values[keep])
        best_points.append(points[keep])
        remaining -= size

    values = np.concatenate(best_values)
    points = np.vstack(best_points)
    starts = points[np.argsort(values, kind="stable")[:refine]]
    result = float(values.min())

    if d == 1:
        return result

    for start in starts:
        # Restarting with a smaller simplex helps at the kink of the minimum.
        for width in (1e-2, 1e-5):
            start = _polish(gs, start, width)

        result = min(result, float(support_many(gs, start[None, :])[0]))

    getLogger(__name__).debug(f"Sphere grid inradius {result!r} from {directions} directions")

    return result
