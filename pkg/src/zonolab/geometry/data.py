from dataclasses import dataclass

__all__ = ["SphereConstants", "RevolvingDoorStep"]


@dataclass(frozen=True, slots=True)
class SphereConstants:
    """Volume and surface constants of the unit ball in R^d.

    Attributes:
        d:
            The dimension; 0 is allowed so that kappa_0 = 1 is expressible.
        kappa:
            The volume of the unit ball B^d.
        omega:
            The surface area of the unit sphere S^{d-1}, equal to d * kappa.
    """

    d: int
    kappa: float
    omega: float


@dataclass(frozen=True, slots=True)
class RevolvingDoorStep:
    """One k-subset of the revolving-door order.

    Attributes:
        subset:
            The subset as a sorted tuple of 0-based indices.
        removed:
            The index that left the previous subset, None for the first one.
        added:
            The index that entered the previous subset, None for the first one.
    """

    subset: tuple[int, ...]
    removed: int | None
    added: int | None
