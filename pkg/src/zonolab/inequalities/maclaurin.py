import math
from typing import Sequence

import numpy as np

from ..errors import EnumerationBoundError
from ..errors import ParameterRangeError
from ..functionals import power_k_volume
from ..geometry import elementary_symmetric_all
from ..geometry import gram_eigenvalues
from ..geometry import subset_batches
from ..geometry import subset_wedge_norms
from ..zonotope import GeneratorSet
from ..zonotope.transforms import SUBSET_LIMIT
from .data import EQUALITY_RELATIVE_TOLERANCE
from .data import EqualityBranch
from .data import InequalityVerdict
from .data import MaclaurinChain
from .data import Orientation
from .data import input_digest

__all__ = [
    "maclaurin_chain",
    "maclaurin_chain_nonneg",
    "vector_maclaurin",
    "power2_maclaurin",
    "power2_reduced_maclaurin",
]


def _means(values: np.ndarray) -> list[float]:
    count = values.size
    sums = elementary_symmetric_all(values, count)

    return [
        max(float(sums[k]), 0.0) / math.comb(count, k)
        for k in range(1, count + 1)
    ]


def _chain(values: np.ndarray) -> list[float]:
    return [mean ** (1.0 / k) for k, mean in enumerate(_means(values), start=1)]


def maclaurin_chain(values: Sequence[float] | np.ndarray) -> list[float]:
    """The Maclaurin means M_k = (sigma_m^k / C(m, k))^(1/k), k = 1..m.

    For positive values the list is non-increasing.

    Raises:
        ParameterRangeError:
            The list is empty or a value isn't positive.
    """
    values = np.asarray(values, dtype=float).ravel()

    if values.size == 0:
        raise ParameterRangeError("Need at least one value")

    if not np.all(values > 0.0) or not np.all(np.isfinite(values)):
        raise ParameterRangeError("Maclaurin means need positive finite values")

    return _chain(values)


def _branch(values: np.ndarray, k: int) -> EqualityBranch:
    largest = float(values.max())

    if largest - float(values.min()) <= EQUALITY_RELATIVE_TOLERANCE * largest:
        return EqualityBranch.ALL_EQUAL

    if int(np.count_nonzero(values == 0.0)) >= values.size - k + 1:
        return EqualityBranch.ENOUGH_ZEROS

    return EqualityBranch.STRICT


def maclaurin_chain_nonneg(values: Sequence[float] | np.ndarray) -> MaclaurinChain:
    """The Maclaurin means of nonnegative values with an equality diagnosis.

    M_k and M_{k+1} coincide exactly when all values are equal or at least
    m-k+1 of them are zero; `branches[k-1]` says which applies.

    Raises:
        ParameterRangeError:
            The list is empty or a value is negative.
    """
    values = np.asarray(values, dtype=float).ravel()

    if values.size == 0:
        raise ParameterRangeError("Need at least one value")

    if not np.all(values >= 0.0) or not np.all(np.isfinite(values)):
        raise ParameterRangeError("Maclaurin means need nonnegative finite values")

    return MaclaurinChain(
        tuple(_chain(values)),
        tuple(_branch(values, k) for k in range(1, values.size)),
    )


def _max_wedge(gs: GeneratorSet, k: int, allow_large: bool) -> float:
    required = math.comb(gs.n, k)

    if required > SUBSET_LIMIT and not allow_large:
        raise EnumerationBoundError(
            f"Maximizing over {k}-subsets of {gs.n} generators is refused",
            required,
            SUBSET_LIMIT,
        )

    gram = gs.generators @ gs.generators.T

    return max(
        float(subset_wedge_norms(gram, batch).max())
        for batch in subset_batches(gs.n, k)
    )


def vector_maclaurin(
    gs: GeneratorSet,
    k: int,
    p: float,
    *,
    allow_large: bool = False,
    workers: int | None = None,
) -> InequalityVerdict:
    """Checks the vector Maclaurin inequality for the generators.

    The claim is

        (V_{k,p} / C(n, k))^(1/(pk)) <= (V_{k-1,p} / C(n, k-1))^(1/(p(k-1)))

    with V_{j,p} the sum of |p_I|^p over j-subsets. For p = inf both sides
    become the largest wedge norm to the powers 1/k and 1/(k-1).

    Args:
        gs:
            The generator set, with 2 <= k <= d <= n.
        k:
            The larger subset size.
        p:
            A positive power or math.inf.
    """
    d, n = gs.dim, gs.n

    if not 2 <= k <= d:
        raise ParameterRangeError(f"Need 2 <= k <= d, got k={k}, d={d}")

    if n < d:
        raise ParameterRangeError(f"Need n >= d, got n={n}, d={d}")

    if not p > 0 or math.isnan(p):
        raise ParameterRangeError(f"p must be positive or inf, got {p}")

    if math.isinf(p):
        lhs = _max_wedge(gs, k, allow_large) ** (1.0 / k)
        rhs = _max_wedge(gs, k - 1, allow_large) ** (1.0 / (k - 1))
    else:
        upper = power_k_volume(gs, k, p, allow_large=allow_large, workers=workers)
        lower = power_k_volume(gs, k - 1, p, allow_large=allow_large, workers=workers)
        lhs = (upper.value / math.comb(n, k)) ** (1.0 / (p * k))
        rhs = (lower.value / math.comb(n, k - 1)) ** (1.0 / (p * (k - 1)))

    return InequalityVerdict.compare(
        f"vector-maclaurin[k={k},p={p:g}]",
        lhs,
        Orientation.AT_MOST,
        rhs,
        input_digest(gs.generators, k=k, p=p),
    )


def _nonnegative_spectrum(gs: GeneratorSet) -> np.ndarray:
    eigenvalues = gram_eigenvalues(gs.generators @ gs.generators.T)

    return np.clip(eigenvalues, 0.0, None)


def _check_power2_k(gs: GeneratorSet, k: int):
    if not 1 <= k < gs.dim:
        raise ParameterRangeError(f"Need 1 <= k < d, got k={k}, d={gs.dim}")


def power2_maclaurin(gs: GeneratorSet, k: int) -> InequalityVerdict:
    """Checks (V_{k,2}/C(n,k))^(1/k) >= (V_{k+1,2}/C(n,k+1))^(1/(k+1)).

    V_{j,2} is the j-th elementary symmetric function of the n eigenvalues of
    the Gram matrix, so this is the Maclaurin inequality for the spectrum.
    Equality holds for cubes (n = d) and for generators spanning at most k-1
    dimensions; the verdict's detail names the branch.
    """
    _check_power2_k(gs, k)

    if gs.n < k + 1:
        raise ParameterRangeError(f"Need n >= k+1, got n={gs.n}, k={k}")

    chain = maclaurin_chain_nonneg(_nonnegative_spectrum(gs))

    return InequalityVerdict.compare(
        f"power2-maclaurin[k={k}]",
        chain.means[k - 1],
        Orientation.AT_LEAST,
        chain.means[k],
        input_digest(gs.generators, k=k),
        detail=str(chain.branches[k - 1]),
    )


def power2_reduced_maclaurin(gs: GeneratorSet, k: int) -> InequalityVerdict:
    """The Maclaurin inequality for the d largest Gram eigenvalues.

    Every nonzero eigenvalue is among them, so sigma_d^j of these values is
    still V_{j,2}; the normalization is C(d, j). For d+1 generators equality
    means the zonotope is a regular rhombic dodecahedron.
    """
    _check_power2_k(gs, k)

    if gs.n < gs.dim:
        raise ParameterRangeError(f"Need n >= d, got n={gs.n}, d={gs.dim}")

    chain = maclaurin_chain_nonneg(_nonnegative_spectrum(gs)[: gs.dim])

    return InequalityVerdict.compare(
        f"power2-reduced-maclaurin[k={k}]",
        chain.means[k - 1],
        Orientation.AT_LEAST,
        chain.means[k],
        input_digest(gs.generators, k=k, reduced=True),
        detail=str(chain.branches[k - 1]),
    )
