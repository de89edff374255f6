from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Self

import numpy as np

from .._schema import SCHEMA_VERSION
from .._schema import check_schema_version
from ..errors import DimensionMismatchError
from ..errors import FormatError
from ..errors import ParameterRangeError
from ..geometry import as_vectors

__all__ = ["GeneratorSet", "ZonotopeClassification"]

type JsonValue = int | float | bool | str | None | list[Any] | dict[str, Any]


@dataclass(frozen=True, slots=True, eq=False)
class GeneratorSet:
    """An ordered list of n generators p_1..p_n in R^d.

    The set describes the zonotope Z = [o, p_1] + ... + [o, p_n]. Generators
    are stored in a read-only (n, d) array; zero generators are allowed and
    every functional treats them as absent.

    Attributes:
        generators:
            The (n, d) generator array.
        label:
            Optional free text describing where the set came from.
        translate:
            Set by `center`: the vector 1/2 * sum p_i that moves the centered
            body Z' = 1/2 * sum [-p_i, p_i] onto Z.
    """

    generators: np.ndarray
    label: str | None = None
    translate: np.ndarray | None = field(default=None)

    def __post_init__(self):
        array = as_vectors(self.generators).copy()

        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ParameterRangeError(
                "A generator set needs at least one generator of dimension >= 1"
            )

        array.setflags(write=False)
        object.__setattr__(self, "generators", array)

        if self.translate is not None:
            translate = np.array(self.translate, dtype=float).reshape(-1)

            if translate.size != array.shape[1]:
                raise DimensionMismatchError(
                    f"Translate has dimension {translate.size}, "
                    f"generators have {array.shape[1]}"
                )

            translate.setflags(write=False)
            object.__setattr__(self, "translate", translate)

    @property
    def n(self) -> int:
        """The number of generators, zero generators included."""
        return self.generators.shape[0]

    @property
    def dim(self) -> int:
        """The dimension d of the ambient space."""
        return self.generators.shape[1]

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.generators, axis=1)

    @property
    def zero_mask(self) -> np.ndarray:
        """Marks generators that are exactly the zero vector."""
        return ~np.any(self.generators != 0.0, axis=1)

    @property
    def has_zero_generators(self) -> bool:
        return bool(np.any(self.zero_mask))

    def nonzero_generators(self) -> np.ndarray:
        """The generators with zero vectors removed, in their original order."""
        return self.generators[~self.zero_mask]

    def with_generators(self, generators: np.ndarray, label: str | None = None) -> Self:
        """Returns a new set with other generators and the same label."""
        return type(self)(generators, self.label if label is None else label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorSet):
            return NotImplemented

        return (
            self.label == other.label
            and self.generators.shape == other.generators.shape
            and bool(np.array_equal(self.generators, other.generators))
        )

    def __hash__(self) -> int:
        return hash((self.label, self.generators.shape, self.generators.tobytes()))

    @classmethod
    def from_json(cls, content: dict[str, Any]) -> Self:
        """Creates a new GeneratorSet from a JSON object.

        Args:
            content:
                An object with the keys "dim", "label" and "generators".
        Raises:
            FormatError:
                A key is missing or holds a value of the wrong shape.
        """
        if not isinstance(content, dict):
            raise FormatError("Expected a JSON object")

        check_schema_version(content)

        for key in ("dim", "generators"):
            if key not in content:
                raise FormatError("missing required field", key)

        dim = content["dim"]

        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise FormatError(f"expected a positive integer, got {dim!r}", "dim")

        label = content.get("label")

        if label is not None and not isinstance(label, str):
            raise FormatError(f"expected a string or null, got {label!r}", "label")

        raw = content["generators"]

        if not isinstance(raw, list) or not raw:
            raise FormatError("expected a non-empty list of vectors", "generators")

        for index, vector in enumerate(raw):
            if not isinstance(vector, list) or len(vector) != dim:
                raise FormatError(
                    f"expected a list of {dim} numbers", f"generators[{index}]"
                )

            for value in vector:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise FormatError(
                        f"expected a number, got {value!r}", f"generators[{index}]"
                    )

        try:
            return cls(np.array(raw, dtype=float), label)
        except ParameterRangeError as e:
            raise FormatError(str(e), "generators") from e

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.dim,
            "label": self.label,
            "generators": self.generators.tolist(),
        }


@dataclass(frozen=True, slots=True)
class ZonotopeClassification:
    """Shape flags of a generator set.

    Attributes:
        is_equilateral:
            Every generator has the same length, within 1e-9 relative.
        common_length:
            That shared length, or None when the set isn't equilateral.
        is_unit_edge:
            The set is equilateral with common length 1.
        is_centered:
            The generators sum to the zero vector.
        is_cubical_candidate:
            Every subset of at most d generators is linearly independent.
        full_dimensional:
            The generators span R^d.
        has_zero_generators:
            At least one generator is the zero vector.
        rank:
            The dimension of the span of the generators.
    """

    is_equilateral: bool
    common_length: float | None
    is_unit_edge: bool
    is_centered: bool
    is_cubical_candidate: bool
    full_dimensional: bool
    has_zero_generators: bool
    rank: int

    def to_json(self) -> JsonValue:
        """Converts the object to a JSON object."""
        return {
            "is_equilateral": self.is_equilateral,
            "common_length": self.common_length,
            "is_unit_edge": self.is_unit_edge,
            "is_centered": self.is_centered,
            "is_cubical_candidate": self.is_cubical_candidate,
            "full_dimensional": self.full_dimensional,
            "has_zero_generators": self.has_zero_generators,
            "rank": self.rank,
        }
