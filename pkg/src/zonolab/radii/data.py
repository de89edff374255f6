from dataclasses import dataclass
from enum import StrEnum
from typing import Any

__all__ = ["RadiusKind", "RadiusCertificate", "RatioReport"]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]
type SignVector = tuple[int, ...]


class RadiusKind(StrEnum):
    """Which radius a certificate belongs to.

    Attributes:
        CIRCUMRADIUS:
            The witness is a sign vector in {-1, +1}^n whose signed sum is a
            farthest vertex of the centered zonotope.
        INRADIUS:
            The witness is the unit facet normal minimizing the support
            function.
    """

    CIRCUMRADIUS = "circumradius"
    INRADIUS = "inradius"


@dataclass(frozen=True, slots=True)
class RadiusCertificate:
    """A radius together with the object that attains it.

    Attributes:
        kind:
            The radius being certified.
        value:
            The radius.
        witness:
            A sign vector for the circumradius, a unit normal for the
            inradius. Re-evaluating it reproduces `value`.
    """

    kind: RadiusKind
    value: float
    witness: tuple[int, ...] | tuple[float, ...]

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "kind": str(self.kind),
            "value": self.value,
            "witness": list(self.witness),
        }


@dataclass(frozen=True, slots=True)
class RatioReport:
    """Circumradius and inradius of one zonotope.

    Attributes:
        circumradius:
            The circumradius certificate.
        inradius:
            The inradius certificate.
        ratio_minus_one:
            cirr / ir - 1, never negative.
    """

    circumradius: RadiusCertificate
    inradius: RadiusCertificate
    ratio_minus_one: float

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "cirr": self.circumradius.to_json(),
            "ir": self.inradius.to_json(),
            "ratio_minus_one": self.ratio_minus_one,
        }
