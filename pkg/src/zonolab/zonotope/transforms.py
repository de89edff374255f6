import math
from logging import getLogger
from typing import Final

import numpy as np

from ..errors import DegenerateZonotopeError
from ..errors import DimensionMismatchError
from ..errors import EnumerationBoundError
from ..errors import GeneralPositionError
from ..errors import NonUnitDirectionError
from ..errors import ParameterRangeError
from ..geometry import complement_normals
from ..geometry import subset_batches
from ..geometry import subset_wedge_norms
from ..geometry.linalg import INDEPENDENCE_TOLERANCE
from .data import GeneratorSet
from .data import ZonotopeClassification

__all__ = [
    "UNIT_TOLERANCE",
    "SUBSET_LIMIT",
    "check_unit",
    "center",
    "scale",
    "rotate",
    "complement_basis",
    "project",
    "project_to_frame",
    "projection_body",
    "span_rank",
    "classify",
]

UNIT_TOLERANCE: Final[float] = 1e-9
SUBSET_LIMIT: Final[int] = 10_000_000


def check_unit(u: np.ndarray, dim: int) -> np.ndarray:
    """Validates a direction and returns it as a float vector.

    Raises:
        DimensionMismatchError:
            The direction doesn't have dimension `dim`.
        NonUnitDirectionError:
            The direction's length differs from 1 by more than 1e-9.
    """
    u = np.asarray(u, dtype=float).reshape(-1)

    if u.size != dim:
        raise DimensionMismatchError(
            f"Direction has dimension {u.size}, expected {dim}"
        )

    length = float(np.linalg.norm(u))

    if abs(length - 1.0) > UNIT_TOLERANCE:
        raise NonUnitDirectionError(f"Direction has length {length!r}, not 1")

    return u


def center(gs: GeneratorSet) -> GeneratorSet:
    """Returns the same generators, recording the centering translate.

    The centered body 1/2 * sum [-p_i, p_i] plus the translate 1/2 * sum p_i
    is the canonical body Z; only the framing changes.
    """
    return GeneratorSet(gs.generators, gs.label, 0.5 * gs.generators.sum(axis=0))


def scale(gs: GeneratorSet, factor: float) -> GeneratorSet:
    """Scales every generator by a positive factor."""
    if not factor > 0 or not math.isfinite(factor):
        raise ParameterRangeError(f"Scale factor must be positive, got {factor}")

    return gs.with_generators(factor * gs.generators)


def rotate(gs: GeneratorSet, matrix: np.ndarray) -> GeneratorSet:
    """Applies an orthogonal matrix to every generator."""
    matrix = np.asarray(matrix, dtype=float)

    if matrix.shape != (gs.dim, gs.dim):
        raise DimensionMismatchError(
            f"Expected a {gs.dim}x{gs.dim} matrix, got {matrix.shape}"
        )

    if not np.allclose(matrix @ matrix.T, np.eye(gs.dim), atol=1e-9):
        raise ParameterRangeError("Rotation matrix must be orthogonal")

    return gs.with_generators(gs.generators @ matrix.T)


def complement_basis(u: np.ndarray) -> np.ndarray:
    """An orthonormal basis of the hyperplane orthogonal to a unit vector.

    Gram-Schmidt runs over the standard basis vectors in index order,
    skipping the coordinate where |u| is largest.

    Returns:
        A (d-1, d) array whose rows are the basis vectors.
    """
    d = u.size
    pivot = int(np.argmax(np.abs(u)))
    basis: list[np.ndarray] = [u]

    for index in range(d):
        if index == pivot:
            continue

        vector = np.zeros(d)
        vector[index] = 1.0

        for previous in basis:
            vector -= (vector @ previous) * previous

        basis.append(vector / np.linalg.norm(vector))

    return np.array(basis[1:]).reshape(d - 1, d)


def project(gs: GeneratorSet, u: np.ndarray) -> GeneratorSet:
    """Orthogonal projection of the zonotope onto the hyperplane u^perp.

    Each generator is replaced by its coordinates in `complement_basis(u)`.
    The number of generators is preserved; generators parallel to u become
    zero vectors.

    Raises:
        ParameterRangeError:
            The zonotope lives in R^1.
        NonUnitDirectionError:
            u isn't a unit vector.
    """
    if gs.dim < 2:
        raise ParameterRangeError("Projection requires dimension at least 2")

    u = check_unit(u, gs.dim)

    return GeneratorSet(gs.generators @ complement_basis(u).T, gs.label)


def project_to_frame(gs: GeneratorSet, frame: np.ndarray) -> GeneratorSet:
    """Projects onto the span of k orthonormal rows, in frame coordinates."""
    frame = np.atleast_2d(np.asarray(frame, dtype=float))

    if frame.shape[1] != gs.dim:
        raise DimensionMismatchError(
            f"Frame vectors have dimension {frame.shape[1]}, expected {gs.dim}"
        )

    if not np.allclose(frame @ frame.T, np.eye(frame.shape[0]), atol=1e-9):
        raise ParameterRangeError("Frame rows must be orthonormal")

    return GeneratorSet(gs.generators @ frame.T, gs.label)


def span_rank(vectors: np.ndarray) -> int:
    """Dimension of the span, with singular values below 1e-9 of the largest
    treated as zero."""
    if vectors.size == 0:
        return 0

    singular = np.linalg.svd(vectors, compute_uv=False)

    if singular[0] == 0.0:
        return 0

    return int(np.sum(singular > INDEPENDENCE_TOLERANCE * singular[0]))


def _check_subset_count(n: int, k: int, what: str):
    required = math.comb(n, k)

    if required > SUBSET_LIMIT:
        raise EnumerationBoundError(
            f"{what} would enumerate C({n}, {k}) subsets", required, SUBSET_LIMIT
        )


def projection_body(gs: GeneratorSet) -> GeneratorSet:
    """The projection body of the zonotope as a generator set.

    Every (d-1)-subset I of the nonzero generators contributes the generator
    2 |p_I| u_I, where u_I is the canonical unit normal of the subset.

    Raises:
        DegenerateZonotopeError:
            The zonotope isn't full-dimensional.
        GeneralPositionError:
            Some (d-1)-subset is linearly dependent, so parallel facets would
            have to be merged.
        EnumerationBoundError:
            More than 10^7 subsets would be visited.
    """
    d = gs.dim

    if d < 2:
        raise ParameterRangeError("Projection bodies require dimension at least 2")

    vectors = gs.nonzero_generators()

    if span_rank(vectors) < d:
        raise DegenerateZonotopeError(
            f"Projection body requires a full-dimensional zonotope in R^{d}"
        )

    _check_subset_count(len(vectors), d - 1, "Projection body")

    parts: list[np.ndarray] = []

    for batch in subset_batches(len(vectors), d - 1):
        normals, magnitudes = complement_normals(vectors[batch])

        if np.any(magnitudes == 0.0):
            bad = tuple(batch[int(np.argmin(magnitudes))].tolist())

            raise GeneralPositionError(
                f"Generators {bad} are linearly dependent; facets would merge"
            )

        parts.append(2.0 * magnitudes[:, None] * normals)

    label = f"projection-body({gs.label})" if gs.label else "projection-body"

    return GeneratorSet(np.vstack(parts), label)


def _is_cubical_candidate(vectors: np.ndarray, d: int) -> bool:
    n = len(vectors)

    if n == 0:
        return False

    k = min(n, d)
    _check_subset_count(n, k, "Cubical classification")

    gram = vectors @ vectors.T
    norms = np.sqrt(np.diagonal(gram))

    for batch in subset_batches(n, k):
        wedges = subset_wedge_norms(gram, batch)
        scale_ = np.prod(norms[batch], axis=1)

        if np.any(wedges <= INDEPENDENCE_TOLERANCE * scale_):
            return False

    return True


def classify(gs: GeneratorSet) -> ZonotopeClassification:
    """Computes the shape flags of a generator set.

    Zero generators make the set non-equilateral and non-cubical; they are
    reported through `has_zero_generators`.
    """
    norms = gs.norms
    longest = float(norms.max())
    equilateral = bool(longest > 0 and np.all(np.abs(norms - longest) <= 1e-9 * longest))
    common = longest if equilateral else None
    unit_edge = equilateral and abs(longest - 1.0) <= 1e-9
    total = float(norms.sum())
    centered = bool(
        np.linalg.norm(gs.generators.sum(axis=0)) <= 1e-9 * max(total, 1e-300)
    )
    rank = span_rank(gs.generators)

    if gs.has_zero_generators:
        getLogger(__name__).warning(
            f"Generator set {gs.label!r} has {int(gs.zero_mask.sum())} zero "
            f"generator(s); they are ignored by every functional."
        )

    cubical = not gs.has_zero_generators and _is_cubical_candidate(
        gs.generators, gs.dim
    )

    return ZonotopeClassification(
        is_equilateral=equilateral,
        common_length=common,
        is_unit_edge=unit_edge,
        is_centered=centered,
        is_cubical_candidate=cubical,
        full_dimensional=rank == gs.dim,
        has_zero_generators=gs.has_zero_generators,
        rank=rank,
    )
