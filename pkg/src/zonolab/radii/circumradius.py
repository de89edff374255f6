import math
from dataclasses import dataclass
from typing import Final
from typing import Literal

import numpy as np

from .._workers import ordered_map
from .._workers import resolve_workers
from ..errors import EnumerationBoundError
from ..geometry import complement_normals
from ..geometry import sign_gray_code
from ..geometry import subset_batches
from ..zonotope import GeneratorSet
from ..zonotope.transforms import SUBSET_LIMIT
from .data import RadiusCertificate
from .data import RadiusKind

__all__ = [
    "CIRCUMRADIUS_LIMIT",
    "MAXIMIZER_TOLERANCE",
    "SignMaximizers",
    "signed_sum_maximizers",
    "circumradius",
    "circumradius_maximizers",
    "circumradius_witness_count",
]

CIRCUMRADIUS_LIMIT: Final[int] = 40
MAXIMIZER_TOLERANCE: Final[float] = 1e-9
WITNESS_TOLERANCE: Final[float] = 1e-12

_SUFFIX_BITS: Final[int] = 12
_GRAY_PREFERRED: Final[int] = 24
_CANDIDATE_FLUSH: Final[int] = 4096


@dataclass(frozen=True, slots=True)
class SignMaximizers:
    """Canonical sign vectors maximizing |sum eps_i p_i|.

    Attributes:
        norm:
            The maximal length of a signed sum.
        sign_vectors:
            Every canonical sign vector within the relative tolerance of the
            maximum, in lexicographic order (-1 before +1), one entry per
            generator of the input set.
        norms:
            The signed-sum length of each sign vector.
    """

    norm: float
    sign_vectors: list[tuple[int, ...]]
    norms: list[float]


def _suffix_table(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    count = len(vectors)
    bits = (np.arange(1 << count)[:, None] >> np.arange(count)) & 1
    signs = 1 - 2 * bits

    return signs, signs @ vectors


def _search_block(
    fixed: np.ndarray,
    prefix: np.ndarray,
    top_signs: np.ndarray,
    suffix_signs: np.ndarray,
    suffix_sums: np.ndarray,
    suffix_total: float,
    rel_tol: float,
) -> tuple[float, list[tuple[np.ndarray, float]]]:
    # The first len(top_signs) prefix signs are pinned; the rest run through
    # a reflected Gray code with one vector update per flip.
    pinned = len(top_signs)
    signs = np.ones(len(prefix))
    signs[:pinned] = top_signs
    partial = fixed + signs @ prefix
    best = 0.0
    candidates: list[tuple[np.ndarray, float]] = []

    def visit():
        nonlocal best, candidates

        if np.linalg.norm(partial) + suffix_total < best * (1.0 - rel_tol):
            return

        norms = np.linalg.norm(partial + suffix_sums, axis=1)
        best = max(best, float(norms.max()))

        for row in np.flatnonzero(norms >= best * (1.0 - rel_tol)):
            candidates.append(
                (np.concatenate((signs, suffix_signs[row])), float(norms[row]))
            )

        if len(candidates) > _CANDIDATE_FLUSH:
            candidates = [
                (vector, norm)
                for vector, norm in candidates
                if norm >= best * (1.0 - rel_tol)
            ]

    visit()

    for bit in sign_gray_code(len(prefix) - pinned):
        position = pinned + bit
        signs[position] = -signs[position]
        partial += 2.0 * signs[position] * prefix[position]
        visit()

    return best, candidates


def _gray_candidates(
    vectors: np.ndarray, rel_tol: float, workers: int | None
) -> tuple[float, list[tuple[np.ndarray, float]]]:
    count = len(vectors)
    norms = np.linalg.norm(vectors, axis=1)
    order = np.concatenate(([0], 1 + np.argsort(-norms[1:], kind="stable")))
    ordered = vectors[order]

    free = count - 1
    block = min(free, _SUFFIX_BITS)
    prefix = ordered[1 : 1 + free - block]
    suffix = ordered[1 + free - block :]
    suffix_signs, suffix_sums = _suffix_table(suffix)
    suffix_total = float(np.linalg.norm(suffix, axis=1).sum())

    workers = resolve_workers(workers)
    pinned = min(len(prefix), math.ceil(math.log2(workers))) if workers > 1 else 0
    tops = [1 - 2 * ((top >> np.arange(pinned)) & 1) for top in range(1 << pinned)]

    results = ordered_map(
        lambda top: _search_block(
            ordered[0], prefix, top, suffix_signs, suffix_sums, suffix_total, rel_tol
        ),
        tops,
        workers,
    )

    best = max(result[0] for result in results)
    inverse = np.empty(count, dtype=np.intp)
    inverse[order] = np.arange(count)
    candidates: list[tuple[np.ndarray, float]] = []

    for _, found in results:
        for ordered_signs, norm in found:
            full = np.concatenate(([1.0], ordered_signs))
            candidates.append((full[inverse], norm))

    return best, candidates


def _arrangement_candidates(
    vectors: np.ndarray, rel_tol: float
) -> tuple[float, list[tuple[np.ndarray, float]]] | None:
    # A maximizing signed sum v has eps_i = sign <v, p_i> for every i, so its
    # sign vector is that of an open cell of the arrangement of hyperplanes
    # p_i^perp. Each cell has an arrangement vertex w (the normal of some
    # independent (d-1)-subset I) on its boundary; off I the signs are
    # sign <w, p_i>, on I all 2^(d-1) patterns are tried.
    count, d = vectors.shape
    lengths = np.linalg.norm(vectors, axis=1)
    patterns = 1.0 - 2.0 * ((np.arange(1 << (d - 1))[:, None] >> np.arange(d - 1)) & 1)
    best = 0.0
    candidates: list[tuple[np.ndarray, float]] = []
    found_vertex = False

    def offer(signs: np.ndarray, norms: np.ndarray):
        nonlocal best

        best = max(best, float(norms.max()))

        for row in np.flatnonzero(norms >= best * (1.0 - rel_tol)):
            candidates.append((signs[row].copy(), float(norms[row])))

    for batch in subset_batches(count, d - 1, 4096):
        normals, magnitudes = complement_normals(vectors[batch])
        keep = magnitudes > 0.0

        if not np.any(keep):
            continue

        found_vertex = True
        normals, batch = normals[keep], batch[keep]
        dots = normals @ vectors.T
        flat = np.abs(dots) <= 1e-12 * lengths[None, :]
        base = np.where(flat, 0.0, np.sign(dots))

        for row in range(len(batch)):
            free = np.union1d(np.flatnonzero(flat[row]), batch[row])

            if len(free) == d - 1:
                local = patterns
            elif len(free) <= _SUFFIX_BITS + 4:
                local = 1.0 - 2.0 * (
                    (np.arange(1 << len(free))[:, None] >> np.arange(len(free))) & 1
                )
            else:
                raise EnumerationBoundError(
                    "Too many generators lie on one arrangement vertex",
                    2 ** len(free),
                    2 ** (_SUFFIX_BITS + 4),
                )

            signs = np.repeat(base[row][None, :], len(local), axis=0)
            signs[:, free] = local
            offer(signs, np.linalg.norm(signs @ vectors, axis=1))

        candidates = [
            (signs, norm) for signs, norm in candidates if norm >= best * (1.0 - rel_tol)
        ]

    return (best, candidates) if found_vertex else None


def signed_sum_maximizers(
    gs: GeneratorSet,
    *,
    rel_tol: float = MAXIMIZER_TOLERANCE,
    method: Literal["auto", "gray", "arrangement"] = "auto",
    allow_large: bool = False,
    workers: int | None = None,
) -> SignMaximizers:
    """Finds every canonical sign vector maximizing |sum eps_i p_i|.

    Zero generators carry the sign +1 and the first nonzero generator has
    the sign +1, so each antipodal pair is reported once.

    The "gray" method visits all 2^(n-1) canonical sign vectors. The
    generators are ordered by decreasing length; the shortest ones (up to
    12) are evaluated as one vectorized block per prefix, the prefixes run
    through a reflected Gray code with one vector update per flip, and a
    prefix is skipped when |prefix sum| + sum of the block's lengths can't
    reach the best value found so far.

    The "arrangement" method visits the vertices of the hyperplane
    arrangement of the generators instead, C(n, d-1) * 2^(d-1) sign vectors,
    and is what "auto" picks above 24 generators.

    Raises:
        EnumerationBoundError:
            The Gray method would run over more than 40 nonzero generators
            and `allow_large` is off, or the arrangement has more than 10^7
            vertices.
    """
    nonzero = np.flatnonzero(~gs.zero_mask)
    count = len(nonzero)

    if count == 0:
        return SignMaximizers(0.0, [tuple([1] * gs.n)], [0.0])

    vectors = gs.generators[nonzero]
    outcome = None

    if method == "arrangement" or (
        method == "auto" and count > _GRAY_PREFERRED and gs.dim > 1
    ):
        required = math.comb(count, gs.dim - 1)

        if required > SUBSET_LIMIT:
            raise EnumerationBoundError(
                f"Arrangement of {count} generators in R^{gs.dim} is too large",
                required,
                SUBSET_LIMIT,
            )

        outcome = _arrangement_candidates(vectors, rel_tol) if gs.dim > 1 else None

    if outcome is None:
        if count > CIRCUMRADIUS_LIMIT and not allow_large:
            raise EnumerationBoundError(
                f"Circumradius enumeration over {count} generators is refused",
                2 ** (count - 1),
                2 ** (CIRCUMRADIUS_LIMIT - 1),
            )

        outcome = _gray_candidates(vectors, rel_tol, workers)

    best, candidates = outcome
    unique: dict[tuple[int, ...], float] = {}

    for partial, norm in candidates:
        if norm < best * (1.0 - rel_tol):
            continue

        if partial[0] < 0:
            partial = -partial

        signs = np.ones(gs.n, dtype=int)
        signs[nonzero] = partial.astype(int)
        key = tuple(int(s) for s in signs)
        unique[key] = max(unique.get(key, 0.0), norm)

    ordered = sorted(unique)

    return SignMaximizers(best, ordered, [unique[key] for key in ordered])


def _signed_norm(gs: GeneratorSet, signs: tuple[int, ...]) -> float:
    return float(np.linalg.norm(np.asarray(signs, dtype=float) @ gs.generators))


def circumradius(
    gs: GeneratorSet,
    *,
    method: Literal["auto", "gray", "arrangement"] = "auto",
    allow_large: bool = False,
    workers: int | None = None,
) -> RadiusCertificate:
    """The circumradius 1/2 * max |sum eps_i p_i| of the centered zonotope.

    The witness is the lexicographically smallest canonical sign vector
    within 1e-12 relative of the maximum; the value is re-evaluated from it.
    """
    maximizers = signed_sum_maximizers(
        gs, method=method, allow_large=allow_large, workers=workers
    )
    floor = maximizers.norm * (1.0 - WITNESS_TOLERANCE)
    witness = next(
        signs
        for signs, norm in zip(maximizers.sign_vectors, maximizers.norms)
        if norm >= floor
    )

    return RadiusCertificate(
        RadiusKind.CIRCUMRADIUS, 0.5 * _signed_norm(gs, witness), witness
    )


def circumradius_maximizers(
    gs: GeneratorSet,
    rel_tol: float = MAXIMIZER_TOLERANCE,
    *,
    method: Literal["auto", "gray", "arrangement"] = "auto",
    allow_large: bool = False,
    workers: int | None = None,
) -> list[tuple[int, ...]]:
    """All canonical sign vectors attaining the circumradius within rel_tol."""
    return signed_sum_maximizers(
        gs, rel_tol=rel_tol, method=method, allow_large=allow_large, workers=workers
    ).sign_vectors


def circumradius_witness_count(
    gs: GeneratorSet,
    *,
    method: Literal["auto", "gray", "arrangement"] = "auto",
    allow_large: bool = False,
    workers: int | None = None,
) -> int:
    """The number of canonical sign vectors attaining the circumradius."""
    return len(
        circumradius_maximizers(
            gs, method=method, allow_large=allow_large, workers=workers
        )
    )
