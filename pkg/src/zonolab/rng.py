"""Named, versioned random streams.

Every stochastic path in zonolab draws from a Philox counter-based bit
generator seeded through a SeedSequence, so a (seed, stream index) pair
always reproduces the same numbers regardless of how work is scheduled.
"""

import secrets
from typing import Final

import numpy as np

__all__ = [
    "RNG_VERSION",
    "make_generator",
    "spawn_generators",
    "fresh_seed",
    "uniform_sphere",
]

RNG_VERSION: Final[str] = "philox4x64-seedsequence-spawn/1"


def make_generator(seed: int) -> np.random.Generator:
    """Creates the root generator for a seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Derives independent generators for substreams 0..count-1.

    Args:
        seed:
            The root seed.
        count:
            The number of substreams. Substream i only depends on the seed
            and on i, never on the total count.
    """
    children = np.random.SeedSequence(seed).spawn(count)

    return [np.random.Generator(np.random.Philox(child)) for child in children]


def fresh_seed() -> int:
    """Draws a new 63-bit seed from OS entropy."""
    return secrets.randbits(63)


def uniform_sphere(
    generator: np.random.Generator, count: int, d: int
) -> np.ndarray:
    """Samples points uniformly on the unit sphere of R^d.

    Normalized Gaussian vectors are used; a zero draw has probability zero
    but is redrawn anyway.
    """
    points = generator.standard_normal((count, d))
    norms = np.linalg.norm(points, axis=1)

    while np.any(norms == 0.0):
        bad = norms == 0.0
        points[bad] = generator.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(points, axis=1)

    return points / norms[:, None]
