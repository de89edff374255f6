import numpy as np

from ..zonotope import GeneratorSet
from ..zonotope import check_unit

__all__ = ["support", "support_many"]


def support(gs: GeneratorSet, u: np.ndarray) -> float:
    """The support function of the centered zonotope, 1/2 * sum |<u, p_i>|.

    Raises:
        NonUnitDirectionError:
            u isn't a unit vector within 1e-9.
    """
    u = check_unit(u, gs.dim)

    return 0.5 * float(np.sum(np.abs(gs.generators @ u)))


def support_many(gs: GeneratorSet, directions: np.ndarray) -> np.ndarray:
    """Evaluates the support function for a (B, d) batch of unit directions.

    Directions aren't validated.
    """
    return 0.5 * np.abs(np.asarray(directions) @ gs.generators.T).sum(axis=1)
