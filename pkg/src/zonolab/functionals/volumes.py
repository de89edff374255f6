import math
from itertools import islice
from logging import getLogger
from typing import Final
from typing import Literal

import numpy as np

from .._workers import ordered_map
from .._workers import resolve_workers
from ..errors import DegenerateZonotopeError
from ..errors import EnumerationBoundError
from ..errors import ParameterRangeError
from ..geometry import ball_intrinsic_volume
from ..geometry import ball_mean_width_constant
from ..geometry import char_poly_symmetric_sums
from ..geometry import kappa
from ..geometry import subset_batches
from ..geometry import subset_wedge_norms
from ..zonotope import GeneratorSet
from ..zonotope import span_rank
from .data import FunctionalsReport
from .data import MethodTag
from .data import PowerKVolume
from .data import SteinerPolynomial

__all__ = [
    "ENUMERATION_LIMIT",
    "intrinsic_volume",
    "intrinsic_volumes",
    "steiner_polynomial",
    "mean_width",
    "surface_area",
    "power_k_volume",
    "alexandrov_fenchel_chain",
    "power2_ratio",
    "functionals_report",
]

ENUMERATION_LIMIT: Final[int] = 30

type PowerMethod = Literal["auto", "enumerate", "gram"]


def _check_k(k: int, d: int, lowest: int):
    if not lowest <= k <= d:
        raise ParameterRangeError(f"Need {lowest} <= k <= d, got k={k}, d={d}")


def _method_for(k: int, d: int) -> MethodTag:
    if k == 0:
        return MethodTag.CONVENTION

    if k == 1:
        return MethodTag.NORM_SUM

    if k == 2:
        return MethodTag.GRAM_PAIRWISE

    return MethodTag.REVOLVING_DOOR


def _check_enumeration(n: int, k: int, d: int, allow_large: bool):
    if allow_large or n <= ENUMERATION_LIMIT or k in (1, 2, d):
        return

    raise EnumerationBoundError(
        f"Summing over {k}-subsets of {n} generators is refused without "
        f"allow_large",
        math.comb(n, k),
        math.comb(ENUMERATION_LIMIT, k),
    )


def _subset_power_sum(
    vectors: np.ndarray, k: int, alpha: float, workers: int | None
) -> float:
    # Each batch is summed exactly; the partials are combined in batch order
    # so the result doesn't depend on the number of workers.
    count = len(vectors)

    if k > count:
        return 0.0

    if k == 1:
        return math.fsum(np.linalg.norm(vectors, axis=1) ** alpha)

    gram = vectors @ vectors.T

    def batch_sum(batch: np.ndarray) -> float:
        wedges = subset_wedge_norms(gram, batch)

        return math.fsum(wedges if alpha == 1.0 else wedges**alpha)

    batches = subset_batches(count, k)
    group = 2 * resolve_workers(workers)
    partials: list[float] = []

    while chunk := list(islice(batches, group)):
        partials.extend(ordered_map(batch_sum, chunk, workers))

    return math.fsum(partials)


def intrinsic_volume(
    gs: GeneratorSet,
    k: int,
    *,
    allow_large: bool = False,
    workers: int | None = None,
) -> float:
    """The k-th intrinsic volume V_k(Z), the sum of |p_I| over k-subsets I.

    Args:
        gs:
            The generator set.
        k:
            0 <= k <= d; V_0 is 1 by convention.
        allow_large:
            Lifts the refusal to enumerate k-subsets of more than 30
            generators for 2 < k < d.
        workers:
            Caps the number of threads summing subset batches.
    Raises:
        ParameterRangeError:
            k is outside 0..d.
        EnumerationBoundError:
            The subset count is refused.
    """
    _check_k(k, gs.dim, 0)

    if k == 0:
        return 1.0

    vectors = gs.nonzero_generators()
    _check_enumeration(len(vectors), k, gs.dim, allow_large)

    return _subset_power_sum(vectors, k, 1.0, workers)


def intrinsic_volumes(
    gs: GeneratorSet, *, allow_large: bool = False, workers: int | None = None
) -> tuple[float, ...]:
    """V_0..V_d of the zonotope."""
    return tuple(
        intrinsic_volume(gs, k, allow_large=allow_large, workers=workers)
        for k in range(gs.dim + 1)
    )


def steiner_polynomial(
    gs: GeneratorSet, *, allow_large: bool = False, workers: int | None = None
) -> SteinerPolynomial:
    """The Steiner polynomial, with coeffs[j] = kappa_j * V_{d-j}(Z)."""
    d = gs.dim
    volumes = intrinsic_volumes(gs, allow_large=allow_large, workers=workers)
    coeffs = tuple(kappa(j) * volumes[d - j] for j in range(d + 1))

    return SteinerPolynomial(d, coeffs)


def mean_width(gs: GeneratorSet) -> float:
    """The mean width 2 kappa_{d-1} / (d kappa_d) * sum |p_i|."""
    return ball_mean_width_constant(gs.dim) * math.fsum(gs.norms)


def surface_area(
    gs: GeneratorSet, *, allow_large: bool = False, workers: int | None = None
) -> float:
    """The surface area 2 V_{d-1}(Z) of a full-dimensional zonotope.

    Raises:
        DegenerateZonotopeError:
            The generators don't span R^d.
    """
    if span_rank(gs.generators) < gs.dim:
        raise DegenerateZonotopeError(
            "Surface area requires a full-dimensional zonotope"
        )

    return 2.0 * intrinsic_volume(
        gs, gs.dim - 1, allow_large=allow_large, workers=workers
    )


def power_k_volume(
    gs: GeneratorSet,
    k: int,
    alpha: float,
    *,
    method: PowerMethod = "auto",
    allow_large: bool = False,
    workers: int | None = None,
) -> PowerKVolume:
    """The total k-volume of power alpha, the sum of |p_I|^alpha.

    With alpha = 2 the sum equals the k-th elementary symmetric function of
    the Gram eigenvalues, which `auto` uses for any n.

    Args:
        gs:
            The generator set.
        k:
            1 <= k <= d.
        alpha:
            A positive power.
        method:
            "auto", "enumerate" (subset sums) or "gram" (eigenvalues,
            alpha = 2 only).
    """
    _check_k(k, gs.dim, 1)

    if not alpha > 0 or not math.isfinite(alpha):
        raise ParameterRangeError(f"alpha must be positive, got {alpha}")

    if method not in ("auto", "enumerate", "gram"):
        raise ParameterRangeError(f"Unknown method '{method}'")

    if method == "gram" and alpha != 2.0:
        raise ParameterRangeError("The Gram path only evaluates alpha = 2")

    vectors = gs.nonzero_generators()

    if method == "gram" or (method == "auto" and alpha == 2.0):
        if k > len(vectors):
            return PowerKVolume(k, alpha, 0.0, MethodTag.GRAM_EIGEN)

        sums = char_poly_symmetric_sums(vectors @ vectors.T)

        return PowerKVolume(k, alpha, max(float(sums[k - 1]), 0.0), MethodTag.GRAM_EIGEN)

    _check_enumeration(len(vectors), k, gs.dim, allow_large)
    value = _subset_power_sum(vectors, k, float(alpha), workers)

    return PowerKVolume(k, alpha, value, _method_for(k, gs.dim))


def alexandrov_fenchel_chain(
    gs: GeneratorSet, *, allow_large: bool = False
) -> list[float]:
    """The normalized chain (V_k(Z) / V_k(B^d))^(1/k) for k = 1..d.

    For a full-dimensional zonotope the chain is non-increasing.
    """
    d = gs.dim
    volumes = intrinsic_volumes(gs, allow_large=allow_large)

    return [(volumes[k] / ball_intrinsic_volume(d, k)) ** (1.0 / k) for k in range(1, d + 1)]


def power2_ratio(gs: GeneratorSet, k: int, m: int) -> float:
    """The scale-free quotient V_{k,2}^m / V_{m,2}^k.

    Raises:
        DegenerateZonotopeError:
            V_{m,2} vanishes.
    """
    numerator = power_k_volume(gs, k, 2.0).value
    denominator = power_k_volume(gs, m, 2.0).value

    if denominator == 0.0:
        raise DegenerateZonotopeError(
            f"V_{{{m},2}} vanishes; the generators span fewer than {m} dimensions"
        )

    return numerator**m / denominator**k


def functionals_report(
    gs: GeneratorSet, *, allow_large: bool = False, workers: int | None = None
) -> FunctionalsReport:
    """Evaluates V_0..V_d, mean width and surface area with method tags."""
    d = gs.dim

    if gs.has_zero_generators:
        getLogger(__name__).warning(
            f"Ignoring {int(gs.zero_mask.sum())} zero generator(s) of {gs.label!r}"
        )

    volumes = intrinsic_volumes(gs, allow_large=allow_large, workers=workers)
    methods = {f"V_{k}": _method_for(k, d) for k in range(d + 1)}
    methods["mean_width"] = MethodTag.NORM_SUM
    methods["surface_area"] = methods[f"V_{d - 1}"]

    return FunctionalsReport(
        label=gs.label,
        n=gs.n,
        d=d,
        volumes=volumes,
        mean_width=mean_width(gs),
        surface_area=2.0 * volumes[d - 1],
        methods=methods,
    )
