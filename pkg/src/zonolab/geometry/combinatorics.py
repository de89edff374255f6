import math
from itertools import islice
from typing import Iterator
from typing import Sequence

import numpy as np

from ..errors import ParameterRangeError
from .data import RevolvingDoorStep

__all__ = [
    "elementary_symmetric",
    "elementary_symmetric_all",
    "revolving_door_subsets",
    "gray_code_subsets",
    "subset_batches",
    "sign_gray_code",
    "binomial",
]


def elementary_symmetric_all(
    values: Sequence[float] | np.ndarray, k_max: int
) -> np.ndarray:
    """Computes e_0..e_{k_max} of the values in one pass.

    Each value updates the whole table with e_j += x * e_{j-1} using the
    previous row, so no subset is ever formed.

    Args:
        values:
            The variables x_1..x_m.
        k_max:
            The highest order wanted, 0 <= k_max <= m.
    """
    values = np.asarray(values, dtype=float).ravel()

    if not 0 <= k_max <= values.size:
        raise ParameterRangeError(
            f"Need 0 <= k <= m, got k={k_max}, m={values.size}"
        )

    table = np.zeros(k_max + 1)
    table[0] = 1.0

    for count, value in enumerate(values, start=1):
        top = min(count, k_max)
        table[1 : top + 1] += value * table[0:top]

    return table


def elementary_symmetric(values: Sequence[float] | np.ndarray, k: int) -> float:
    """The k-th elementary symmetric function sigma_m^k of the values."""
    size = np.asarray(values).size

    if not 1 <= k <= size:
        raise ParameterRangeError(f"Need 1 <= k <= m, got k={k}, m={size}")

    return float(elementary_symmetric_all(values, k)[k])


def _revolving_door(n: int, k: int, reverse: bool) -> Iterator[tuple[int, ...]]:
    # R(n, k) = R(n-1, k) followed by reversed R(n-1, k-1) extended by n-1.
    if k == 0:
        yield ()
    elif k == n:
        yield tuple(range(n))
    elif k == 1:
        yield from ((i,) for i in (range(n - 1, -1, -1) if reverse else range(n)))
    elif not reverse:
        yield from _revolving_door(n - 1, k, False)

        for head in _revolving_door(n - 1, k - 1, True):
            yield head + (n - 1,)
    else:
        for head in _revolving_door(n - 1, k - 1, False):
            yield head + (n - 1,)

        yield from _revolving_door(n - 1, k, True)


def revolving_door_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yields every k-subset of range(n) once, in revolving-door order."""
    if not 0 <= k <= n:
        raise ParameterRangeError(f"Need 0 <= k <= n, got k={k}, n={n}")

    return _revolving_door(n, k, False)


def gray_code_subsets(n: int, k: int) -> Iterator[RevolvingDoorStep]:
    """Yields k-subsets of range(n) with the single swap from the previous one.

    Consecutive subsets differ by removing exactly one index and adding
    exactly one; there are C(n, k) steps in total.
    """
    previous: tuple[int, ...] | None = None

    for subset in revolving_door_subsets(n, k):
        if previous is None:
            yield RevolvingDoorStep(subset, None, None)
        else:
            (removed,) = set(previous).difference(subset)
            (added,) = set(subset).difference(previous)

            yield RevolvingDoorStep(subset, removed, added)

        previous = subset


def subset_batches(
    n: int, k: int, batch_size: int = 65536
) -> Iterator[np.ndarray]:
    """Yields the revolving-door k-subsets as (B, k) integer index arrays."""
    iterator = revolving_door_subsets(n, k)

    while True:
        chunk = list(islice(iterator, batch_size))

        if not chunk:
            return

        yield np.asarray(chunk, dtype=np.intp).reshape(len(chunk), k)


def sign_gray_code(m: int) -> Iterator[int]:
    """Yields the bit flipped at each step of the reflected Gray code.

    Starting from the all-zero word of m bits, flipping the yielded indices
    in order visits all 2^m words once.
    """
    if m < 0:
        raise ParameterRangeError(f"Word length must be non-negative, got {m}")

    for step in range(1, 1 << m):
        yield (step & -step).bit_length() - 1


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    return math.comb(n, k) if 0 <= k <= n else 0
