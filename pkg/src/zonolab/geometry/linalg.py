from typing import Final
from typing import Sequence

import numpy as np

from ..errors import DimensionMismatchError
from ..errors import EigenSolverError
from ..errors import NumericalBreakdownError
from ..errors import ParameterRangeError
from .combinatorics import elementary_symmetric_all

__all__ = [
    "GRAM_CLAMP_TOLERANCE",
    "EIGEN_ZERO_TOLERANCE",
    "INDEPENDENCE_TOLERANCE",
    "as_vectors",
    "gram_matrix",
    "wedge_norm",
    "subset_wedge_norms",
    "gram_eigenvalues",
    "char_poly_symmetric_sums",
    "complement_normals",
    "orthogonal_complement_normal",
    "canonicalize_signs",
]

type Vectors = Sequence[Sequence[float]] | np.ndarray

GRAM_CLAMP_TOLERANCE: Final[float] = 1e-10
EIGEN_ZERO_TOLERANCE: Final[float] = 1e-12
INDEPENDENCE_TOLERANCE: Final[float] = 1e-9


def as_vectors(vectors: Vectors, dim: int | None = None) -> np.ndarray:
    """Converts a list of vectors into a (k, d) float array.

    Args:
        vectors:
            The vectors; every entry must have the same length.
        dim:
            The dimension the vectors are expected to have, if known.
    Raises:
        DimensionMismatchError:
            The vectors have different lengths or don't match `dim`.
        ParameterRangeError:
            A coordinate isn't finite.
    """
    try:
        array = np.array(vectors, dtype=float, ndmin=2)
    except ValueError as e:
        raise DimensionMismatchError(
            "Vectors must all have the same dimension"
        ) from e

    if array.ndim != 2:
        raise DimensionMismatchError(
            f"Expected a list of vectors, got an array of shape {array.shape}"
        )

    if dim is not None and array.shape[1] != dim:
        raise DimensionMismatchError(
            f"Expected vectors of dimension {dim}, got {array.shape[1]}"
        )

    if not np.all(np.isfinite(array)):
        raise ParameterRangeError("Vector coordinates must be finite")

    return array


def gram_matrix(vectors: Vectors) -> np.ndarray:
    """Returns the matrix of pairwise inner products of the vectors."""
    array = as_vectors(vectors)

    return array @ array.T


def subset_wedge_norms(gram: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Evaluates |p_I| = sqrt(det G[I, I]) for a batch of index subsets.

    Args:
        gram:
            The Gram matrix of all n vectors.
        subsets:
            A (B, k) integer array; every row is one k-subset.
    Raises:
        NumericalBreakdownError:
            A principal minor is negative beyond the clamping tolerance.
    """
    subsets = np.asarray(subsets, dtype=np.intp)
    batch, k = subsets.shape

    if k == 0:
        return np.ones(batch)

    diagonal = np.diagonal(gram)[subsets]

    if k == 1:
        return np.sqrt(np.maximum(diagonal[:, 0], 0.0))

    if k == 2:
        cross = gram[subsets[:, 0], subsets[:, 1]]
        determinants = diagonal[:, 0] * diagonal[:, 1] - cross * cross
    else:
        minors = gram[subsets[:, :, None], subsets[:, None, :]]
        determinants = np.linalg.det(minors)

    scale = np.prod(diagonal, axis=1)
    floor = np.maximum(GRAM_CLAMP_TOLERANCE * scale, np.finfo(float).tiny)

    if np.any(determinants < -floor):
        worst = int(np.argmin(determinants + floor))

        raise NumericalBreakdownError(
            f"Gram determinant {determinants[worst]:.3e} of subset "
            f"{tuple(subsets[worst].tolist())} is negative beyond tolerance"
        )

    return np.sqrt(np.maximum(determinants, 0.0))


def wedge_norm(vectors: Vectors) -> float:
    """The k-volume |p_1 ^ ... ^ p_k| of the parallelotope spanned by vectors.

    Args:
        vectors:
            Between 1 and d vectors of a common dimension d.
    Raises:
        DimensionMismatchError:
            The vectors have different dimensions.
        ParameterRangeError:
            More than d or fewer than 1 vectors were given.
    """
    array = as_vectors(vectors)
    k, d = array.shape

    if not 1 <= k <= d:
        raise ParameterRangeError(f"Need 1 <= k <= d, got k={k}, d={d}")

    gram = array @ array.T

    return float(subset_wedge_norms(gram, np.arange(k)[None, :])[0])


def gram_eigenvalues(gram: np.ndarray) -> np.ndarray:
    """The eigenvalues of a symmetric matrix in decreasing order.

    Eigenvalues below 1e-12 of the largest one in magnitude count as zero.

    Raises:
        ParameterRangeError:
            G isn't a square symmetric matrix.
        EigenSolverError:
            The symmetric eigensolver didn't converge.
    """
    gram = np.asarray(gram, dtype=float)

    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise ParameterRangeError(f"Expected a square matrix, got {gram.shape}")

    size = gram.shape[0]

    if size == 0:
        return np.zeros(0)

    magnitude = float(np.max(np.abs(gram)))

    if not np.allclose(gram, gram.T, rtol=0.0, atol=1e-12 * max(magnitude, 1.0)):
        raise ParameterRangeError("Gram matrix must be symmetric")

    try:
        eigenvalues = np.linalg.eigvalsh(gram)[::-1]
    except np.linalg.LinAlgError as e:
        raise EigenSolverError(f"Eigensolver failed on a {size}x{size} matrix") from e

    largest = float(np.max(np.abs(eigenvalues)))

    return np.where(
        np.abs(eigenvalues) < EIGEN_ZERO_TOLERANCE * largest, 0.0, eigenvalues
    )


def char_poly_symmetric_sums(gram: np.ndarray) -> np.ndarray:
    """Returns (e_1, ..., e_n), the sums of k x k principal minors of G.

    The sums are the elementary symmetric functions of the eigenvalues of G,
    computed from `gram_eigenvalues`.
    """
    eigenvalues = gram_eigenvalues(gram)

    return elementary_symmetric_all(eigenvalues, eigenvalues.size)[1:]


def canonicalize_signs(normals: np.ndarray) -> np.ndarray:
    """Flips rows so that their first nonzero coordinate is positive."""
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    significant = np.abs(normals) > EIGEN_ZERO_TOLERANCE
    leading = np.argmax(significant, axis=1)
    signs = np.sign(normals[np.arange(normals.shape[0]), leading])
    signs[signs == 0.0] = 1.0

    return normals * signs[:, None]


def complement_normals(stacks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Generalized cross products of a batch of (d-1)-tuples in R^d.

    Entry j of each cross product is the signed minor obtained by deleting
    column j, so its length equals the wedge norm of the tuple.

    Args:
        stacks:
            A (B, d-1, d) array of vector tuples, d >= 2.
    Returns:
        The canonicalized unit normals (B, d) and the wedge norms (B,).
        Rows whose tuple is linearly dependent are left as zero vectors.
    """
    stacks = np.asarray(stacks, dtype=float)
    batch, rows, d = stacks.shape

    if rows != d - 1 or d < 2:
        raise DimensionMismatchError(
            f"Expected {d - 1} vectors of dimension {d}, got {rows}"
        )

    cofactors = np.empty((batch, d))

    for column in range(d):
        minor = np.delete(stacks, column, axis=2)
        cofactors[:, column] = (-1.0) ** column * np.linalg.det(minor)

    magnitudes = np.linalg.norm(cofactors, axis=1)
    scale = np.prod(np.linalg.norm(stacks, axis=2), axis=1)
    independent = magnitudes > INDEPENDENCE_TOLERANCE * scale

    normals = np.zeros_like(cofactors)
    normals[independent] = canonicalize_signs(
        cofactors[independent] / magnitudes[independent, None]
    )
    magnitudes = np.where(independent, magnitudes, 0.0)

    return normals, magnitudes


def orthogonal_complement_normal(vectors: Vectors) -> np.ndarray | None:
    """Unit normal to d-1 vectors in R^d, or None when they are dependent.

    The normal's first nonzero coordinate is positive.
    """
    array = as_vectors(vectors)

    if array.shape[0] != array.shape[1] - 1:
        raise DimensionMismatchError(
            f"Expected {array.shape[1] - 1} vectors of dimension "
            f"{array.shape[1]}, got {array.shape[0]}"
        )

    normals, magnitudes = complement_normals(array[None, :, :])

    if magnitudes[0] == 0.0:
        return None

    return normals[0]
