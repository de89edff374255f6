import math
from functools import lru_cache

from ..errors import ParameterRangeError
from .data import SphereConstants

__all__ = [
    "sphere_constants",
    "kappa",
    "omega",
    "ball_intrinsic_volume",
    "ball_mean_width_constant",
]


@lru_cache(maxsize=None)
def sphere_constants(d: int) -> SphereConstants:
    """Returns the ball constants for dimension d."""
    if d < 0:
        raise ParameterRangeError(f"Dimension must be non-negative, got {d}")

    volume = math.pi ** (d / 2) / math.gamma(d / 2 + 1)

    return SphereConstants(d, volume, d * volume)


def kappa(d: int) -> float:
    """Volume of the unit ball B^d (kappa_0 = 1)."""
    return sphere_constants(d).kappa


def omega(d: int) -> float:
    """Surface area of the unit sphere S^{d-1}."""
    return sphere_constants(d).omega


def ball_intrinsic_volume(d: int, i: int) -> float:
    """The i-th intrinsic volume of B^d, C(d, i) * kappa_d / kappa_{d-i}."""
    if not 0 <= i <= d:
        raise ParameterRangeError(f"Need 0 <= i <= d, got i={i}, d={d}")

    return math.comb(d, i) * kappa(d) / kappa(d - i)


def ball_mean_width_constant(d: int) -> float:
    """The factor 2 kappa_{d-1} / (d kappa_d) turning sum |p_i| into width."""
    if d < 1:
        raise ParameterRangeError(f"Dimension must be positive, got {d}")

    return 2.0 * kappa(d - 1) / (d * kappa(d))
