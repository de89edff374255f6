from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np

from .._schema import SCHEMA_VERSION

__all__ = [
    "MethodTag",
    "SteinerPolynomial",
    "FunctionalsReport",
    "PowerKVolume",
]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]


class MethodTag(StrEnum):
    """How a functional was evaluated.

    Attributes:
        CONVENTION:
            The value is fixed by definition (V_0 = 1).
        NORM_SUM:
            A sum of generator lengths.
        GRAM_PAIRWISE:
            Pairwise wedges from the Gram entries |p|^2 |q|^2 - <p, q>^2.
        REVOLVING_DOOR:
            Principal Gram minors over the revolving-door subset order.
        GRAM_EIGEN:
            Elementary symmetric functions of the Gram eigenvalues.
    """

    CONVENTION = "convention"
    NORM_SUM = "norm-sum"
    GRAM_PAIRWISE = "gram-pairwise"
    REVOLVING_DOOR = "revolving-door"
    GRAM_EIGEN = "gram-eigen"


@dataclass(frozen=True, slots=True)
class SteinerPolynomial:
    """The volume of the parallel body, t -> V_d(Z + tB^d).

    Attributes:
        d:
            The dimension.
        coeffs:
            d+1 coefficients; coeffs[j] multiplies t^j, so coeffs[0] is the
            volume and coeffs[d] is kappa_d.
    """

    d: int
    coeffs: tuple[float, ...]

    def evaluate(self, t: float) -> float:
        """Evaluates the polynomial at t."""
        return float(np.polynomial.polynomial.polyval(t, self.coeffs))

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {"d": self.d, "coeffs": list(self.coeffs)}


@dataclass(frozen=True, slots=True)
class PowerKVolume:
    """The total k-volume of power alpha, the sum of |p_I|^alpha over k-subsets.

    Attributes:
        k:
            The subset size.
        alpha:
            The power.
        value:
            The sum.
        method:
            Which evaluation path produced the value.
    """

    k: int
    alpha: float
    value: float
    method: MethodTag

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "k": self.k,
            "alpha": self.alpha,
            "value": self.value,
            "method": str(self.method),
        }


@dataclass(frozen=True, slots=True)
class FunctionalsReport:
    """Every intrinsic volume of one zonotope with its derived quantities.

    Attributes:
        label:
            The label of the generator set.
        n:
            The number of generators.
        d:
            The dimension.
        volumes:
            V_0..V_d.
        mean_width:
            The mean width.
        surface_area:
            Twice V_{d-1}.
        methods:
            The method tag of every entry, keyed by "V_0".."V_d",
            "mean_width" and "surface_area".
    """

    label: str | None
    n: int
    d: int
    volumes: tuple[float, ...]
    mean_width: float
    surface_area: float
    methods: dict[str, MethodTag]

    @property
    def full_dimensional(self) -> bool:
        return self.volumes[self.d] > 0.0

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "n": self.n,
            "d": self.d,
            "intrinsic_volumes": list(self.volumes),
            "mean_width": self.mean_width,
            "surface_area": self.surface_area,
            "methods": {key: str(value) for key, value in self.methods.items()},
        }

    def csv_header(self) -> list[str]:
        """The CSV column names for this report's dimension."""
        return (
            ["label", "n", "d"]
            + [f"V_{k}" for k in range(self.d + 1)]
            + ["width", "surf", "methods"]
        )

    def csv_row(self) -> list[str]:
        """The report as one CSV row matching `csv_header`."""
        methods = ";".join(f"{key}={value}" for key, value in self.methods.items())

        return (
            [self.label or "", str(self.n), str(self.d)]
            + [repr(value) for value in self.volumes]
            + [repr(self.mean_width), repr(self.surface_area), methods]
        )
