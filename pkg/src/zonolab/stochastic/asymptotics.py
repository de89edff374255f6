import math
from logging import getLogger
from typing import Final
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .._workers import ordered_map
from ..errors import ParameterRangeError
from ..functionals import intrinsic_volumes
from ..geometry import ball_intrinsic_volume
from ..radii import ratio_report
from ..rng import spawn_generators
from ..zonotope import GeneratorSet
from ..zonotope import make_fibonacci_hemisphere
from ..zonotope import make_regular_zonogon
from ..zonotope import random_unit_generators
from .data import PolygonGaps
from .data import ProbeFamily
from .data import ProbeRow

__all__ = [
    "BOUNDS_FROM_N",
    "u_d",
    "regular_polygon_gaps",
    "fit_decay_exponent",
    "polarization_asymptotic",
    "asymptotic_probe",
    "family_member",
]

BOUNDS_FROM_N: Final[int] = 8

_BOUND_SLACK: Final[float] = 1e-12


def u_d(n: int, d: int) -> float:
    """The rate U_d(n): sqrt(log n) / n^((d+2)/(2d-2)) for d = 3, 4, else without the root."""
    if d < 2 or n < 2:
        raise ParameterRangeError(f"Need d >= 2 and n >= 2, got d={d}, n={n}")

    rate = n ** (-(d + 2) / (2 * d - 2))

    return math.sqrt(math.log(n)) * rate if d in (3, 4) else rate


def regular_polygon_gaps(n: int) -> PolygonGaps:
    """How far the regular 2n-gon is from the disc, with the lower bounds."""
    if n < 2:
        raise ParameterRangeError(f"A zonogon needs at least 2 generators, got {n}")

    angle = math.pi / (2 * n)

    return PolygonGaps(
        n=n,
        area_gap=math.tan(angle) / angle - 1.0,
        perimeter_gap=1.0 - math.sin(angle) / angle,
        area_bound=math.pi**2 / (12 * n**2),
        perimeter_bound=math.pi**2 / (24 * n**2) - math.pi**4 / (1920 * n**4),
    )


def fit_decay_exponent(ns: Sequence[int], values: Sequence[float]) -> float:
    """The least-squares slope of log(values) against log(ns).

    Non-positive values are skipped.

    Raises:
        ParameterRangeError:
            Fewer than two usable points remain.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=float)

    if ns.shape != values.shape:
        raise ParameterRangeError("Expected as many values as sizes")

    usable = (values > 0.0) & (ns > 0.0)

    if int(usable.sum()) < 2:
        raise ParameterRangeError("A slope needs at least two positive points")

    slope, _ = np.polyfit(np.log(ns[usable]), np.log(values[usable]), 1)

    return float(slope)


def polarization_asymptotic(n: int, d: int) -> float:
    """n * mu_{d,1}, mu_{d,1} = Gamma(d/2) / (sqrt(pi) Gamma((d+1)/2)).

    mu_{d,1} is the mean of |<u, x>| over the unit sphere, so this is the
    leading term of the l_1 polarization constant for n points.
    """
    if d < 2 or n < 1:
        raise ParameterRangeError(f"Need d >= 2 and n >= 1, got d={d}, n={n}")

    return n * math.exp(gammaln(d / 2) - gammaln((d + 1) / 2)) / math.sqrt(math.pi)


def family_member(
    family: ProbeFamily, n: int, d: int, generator: np.random.Generator
) -> GeneratorSet:
    """Member n of a probe family; only random-uniform draws from the generator."""
    match family:
        case ProbeFamily.PLANAR_REGULAR:
            return make_regular_zonogon(n)
        case ProbeFamily.FIBONACCI_SPHERE:
            return make_fibonacci_hemisphere(n)
        case _:
            return random_unit_generators(n, d, generator)


def _check_family(family: ProbeFamily, d: int):
    if family == ProbeFamily.PLANAR_REGULAR and d != 2:
        raise ParameterRangeError(f"The planar-regular family needs d = 2, got {d}")

    if family == ProbeFamily.FIBONACCI_SPHERE and d != 3:
        raise ParameterRangeError(f"The fibonacci-sphere family needs d = 3, got {d}")

    if d < 2:
        raise ParameterRangeError(f"Dimension must be at least 2, got {d}")


def _probe_row(family: ProbeFamily, gs: GeneratorSet, workers: int | None) -> ProbeRow:
    d, n = gs.dim, gs.n
    radii = ratio_report(gs, allow_large=True, workers=workers)
    volumes = intrinsic_volumes(gs, allow_large=True, workers=workers)
    inner, outer = radii.inradius.value, radii.circumradius.value

    inner_gaps = tuple(
        volumes[i] / (inner**i * ball_intrinsic_volume(d, i)) - 1.0
        for i in range(1, d + 1)
    )
    outer_gaps = tuple(
        1.0 - volumes[i] / (outer**i * ball_intrinsic_volume(d, i))
        for i in range(1, d + 1)
    )
    inner_bounds = tuple(4 * i / (5 * d * n**2) for i in range(1, d + 1))
    outer_bounds = tuple(2 * i / (5 * n**2) for i in range(1, d + 1))
    volume_bound = math.pi**2 / (12 * n**2)
    width_bound = math.pi**2 / (24 * n**2) - math.pi**4 / (1920 * n**4)

    holds = None

    if n >= BOUNDS_FROM_N:
        holds = (
            all(g >= b - _BOUND_SLACK for g, b in zip(inner_gaps, inner_bounds))
            and all(g >= b - _BOUND_SLACK for g, b in zip(outer_gaps, outer_bounds))
            and inner_gaps[-1] >= volume_bound - _BOUND_SLACK
            and outer_gaps[0] >= width_bound - _BOUND_SLACK
        )

    return ProbeRow(
        family=family,
        d=d,
        n=n,
        ratio_minus_one=radii.ratio_minus_one,
        inner_gaps=inner_gaps,
        outer_gaps=outer_gaps,
        inner_bounds=inner_bounds,
        outer_bounds=outer_bounds,
        volume_bound=volume_bound,
        width_bound=width_bound,
        rate=u_d(n, d),
        lower_bounds_hold=holds,
    )


def asymptotic_probe(
    family: ProbeFamily | str,
    d: int,
    n_list: Sequence[int],
    seed: int = 0,
    *,
    workers: int | None = None,
) -> list[ProbeRow]:
    """Tabulates the gaps of a generator family against the ball for every n.

    Lower bounds are checked from n = 8 on; the upper-bound rate U_d(n) is
    only tabulated. The fitted decay exponent of cirr/ir - 1 is logged.

    Args:
        family:
            A ProbeFamily or its name.
        d:
            The dimension; planar-regular needs 2 and fibonacci-sphere 3.
        n_list:
            The generator counts, each at least d.
        seed:
            Member j of the random-uniform family uses substream j.
    Raises:
        ParameterRangeError:
            The family doesn't exist in dimension d, or some n is below d.
    """
    try:
        family = ProbeFamily(family)
    except ValueError as e:
        raise ParameterRangeError(f"Unknown family '{family}'") from e

    _check_family(family, d)
    sizes = [int(n) for n in n_list]

    for n in sizes:
        if n < max(d, 2):
            raise ParameterRangeError(f"Need n >= d for a full-dimensional body, got n={n}")

    logger = getLogger(__name__)
    streams = spawn_generators(seed, len(sizes))

    def evaluate(index: int) -> ProbeRow:
        gs = family_member(family, sizes[index], d, streams[index])
        row = _probe_row(family, gs, None)
        logger.debug(f"{family} d={d} n={row.n}: cirr/ir - 1 = {row.ratio_minus_one:.6g}")

        return row

    rows = ordered_map(evaluate, range(len(sizes)), workers)

    if len(rows) >= 2:
        try:
            exponent = fit_decay_exponent(
                [row.n for row in rows], [row.ratio_minus_one for row in rows]
            )
            logger.info(f"{family} d={d}: cirr/ir - 1 decays like n^{exponent:.3f}")
        except ParameterRangeError:
            pass

    failed = [row.n for row in rows if row.lower_bounds_hold is False]

    if failed:
        logger.warning(f"{family} d={d}: lower bounds fail for n in {failed}")

    return rows
