import math
from logging import getLogger
from typing import Final
from typing import Sequence

import numpy as np

from ..errors import ParameterRangeError
from ..functionals import intrinsic_volume
from ..functionals import mean_width
from ..radii import circumradius
from ..rng import make_generator
from ..zonotope import GeneratorSet
from ..zonotope import make_cube
from ..zonotope import make_regular_rhombic_dodecahedron
from .data import Constraint
from .data import CounterexampleRecord
from .data import LocalProbeReport
from .data import Objective
from .data import ProbeBody
from .data import SearchConfig
from .data import Sense
from .objectives import normalize

__all__ = [
    "thm5_counterexample",
    "counterexample_trend",
    "local_optimality_probe",
]

IMPROVEMENT_TOLERANCE: Final[float] = 1e-9

_PROBE_CONSTRAINTS: Final[dict[tuple[ProbeBody, Constraint], tuple[tuple[Constraint, ...], Sense]]] = {
    (ProbeBody.CUBE, Constraint.FIXED_VOLUME): ((Constraint.FIXED_VOLUME,), Sense.MINIMIZE),
    (ProbeBody.CUBE, Constraint.FIXED_MEAN_WIDTH): ((Constraint.FIXED_MEAN_WIDTH,), Sense.MAXIMIZE),
    (ProbeBody.CUBE, Constraint.UNIT_GENERATORS): ((Constraint.UNIT_GENERATORS,), Sense.MAXIMIZE),
    (ProbeBody.REGULAR_RD, Constraint.FIXED_VOLUME): ((Constraint.FIXED_VOLUME,), Sense.MINIMIZE),
    (ProbeBody.REGULAR_RD, Constraint.FIXED_MEAN_WIDTH): (
        (Constraint.FIXED_MEAN_WIDTH,),
        Sense.MAXIMIZE,
    ),
    (ProbeBody.REGULAR_RD, Constraint.UNIT_GENERATORS): (
        (Constraint.UNIT_GENERATORS,),
        Sense.MAXIMIZE,
    ),
    (ProbeBody.REGULAR_RD, Constraint.CENTERED): (
        (Constraint.CENTERED, Constraint.FIXED_MEAN_WIDTH),
        Sense.MAXIMIZE,
    ),
}


def thm5_counterexample(d: int, v_scale: float = 1e-2) -> CounterexampleRecord:
    """An uncentered rhombic dodecahedron with a smaller circumradius than the regular one.

    Every generator of the regular rhombic dodecahedron is shifted by
    v = v_scale * q_1 / |q_1| and the result is rescaled to the regular
    body's mean width. In odd dimensions the d+1 signs can be balanced, the
    farthest vertices don't see the shift and the circumradius drops with
    the rescaling factor.

    Raises:
        ParameterRangeError:
            d is even or below 3, or v_scale isn't positive.
    """
    if d < 3 or d % 2 == 0:
        raise ParameterRangeError(f"The construction needs an odd d >= 3, got {d}")

    if not v_scale > 0 or not math.isfinite(v_scale):
        raise ParameterRangeError(f"v_scale must be positive, got {v_scale}")

    regular = make_regular_rhombic_dodecahedron(d)
    q = regular.generators
    shifted = q + v_scale * q[0] / np.linalg.norm(q[0])

    width_reg = mean_width(regular)
    factor = width_reg / mean_width(GeneratorSet(shifted))
    z_prime = GeneratorSet(
        factor * shifted, f"shifted-rhombic-dodecahedron(d={d}, v_scale={v_scale:g})"
    )

    record = CounterexampleRecord(
        d=d,
        v_scale=v_scale,
        z_prime=z_prime,
        cirr_reg=circumradius(regular).value,
        cirr_prime=circumradius(z_prime).value,
        width_reg=width_reg,
        width_prime=mean_width(z_prime),
    )

    getLogger(__name__).info(
        f"d={d}, |v|={v_scale:g}: cirr' = {record.cirr_prime!r} vs "
        f"cirr_reg = {record.cirr_reg!r}"
    )

    return record


def counterexample_trend(
    d: int, scales: Sequence[float] = (1e-1, 1e-2, 1e-3)
) -> list[CounterexampleRecord]:
    """The counterexample for shrinking shifts; the gap to the regular body closes as |v| -> 0."""
    records = [thm5_counterexample(d, scale) for scale in scales]
    gaps = [record.cirr_reg - record.cirr_prime for record in records]

    getLogger(__name__).info(f"d={d}: circumradius gaps {gaps}")

    return records


def _regular_body(body: ProbeBody, d: int) -> GeneratorSet:
    match body:
        case ProbeBody.CUBE:
            return make_cube(d)
        case ProbeBody.REGULAR_RD:
            return make_regular_rhombic_dodecahedron(d)


def _target(constraints: tuple[Constraint, ...], gs: GeneratorSet) -> float:
    if Constraint.FIXED_VOLUME in constraints:
        return intrinsic_volume(gs, gs.dim)

    if Constraint.FIXED_MEAN_WIDTH in constraints:
        return mean_width(gs)

    return 1.0


def local_optimality_probe(
    body: ProbeBody | str,
    constraint: Constraint | str,
    k: int,
    trials: int = 1000,
    perturbation: float = 1e-2,
    seed: int = 0,
    *,
    d: int = 3,
) -> LocalProbeReport:
    """Perturbs a regular body and counts perturbations that improve V_k.

    Every trial adds Gaussian noise of the given standard deviation to the
    generators and renormalizes to the constraint. Under fixed volume the
    regular body is compared as a minimizer of V_k; under fixed mean width,
    unit generators and centering (with the mean width fixed) as a
    maximizer. An improvement counts when it exceeds 1e-9 relative.

    Raises:
        ParameterRangeError:
            The (body, constraint) pair isn't recognized, k is outside 1..d,
            or trials or perturbation aren't positive.
    """
    try:
        body = ProbeBody(body)
        constraint = Constraint(constraint)
    except ValueError as e:
        raise ParameterRangeError(str(e)) from e

    if (body, constraint) not in _PROBE_CONSTRAINTS:
        raise ParameterRangeError(f"No local probe for {body} under {constraint}")

    if not 1 <= k <= d:
        raise ParameterRangeError(f"k must be in 1..{d}, got {k}")

    if trials < 1 or not perturbation > 0:
        raise ParameterRangeError("trials and perturbation must be positive")

    constraints, sense = _PROBE_CONSTRAINTS[body, constraint]
    regular = _regular_body(body, d)
    config = SearchConfig(
        objective=Objective.INTRINSIC_VOLUME,
        constraints=constraints,
        n=regular.n,
        d=d,
        sense=sense,
        k=k,
        target=_target(constraints, regular),
    )

    regular_value = intrinsic_volume(regular, k)
    generator = make_generator(seed)
    improving = 0
    best_improvement = 0.0

    for _ in range(trials):
        noise = perturbation * generator.standard_normal(regular.generators.shape)
        X = normalize(config, regular.generators + noise)

        if X is None:
            continue

        value = intrinsic_volume(GeneratorSet(X), k)
        improvement = regular_value - value if sense == Sense.MINIMIZE else value - regular_value

        if improvement > IMPROVEMENT_TOLERANCE * regular_value:
            improving += 1

        best_improvement = max(best_improvement, improvement)

    report = LocalProbeReport(
        body=body,
        constraint=constraint,
        k=k,
        sense=sense,
        trials=trials,
        perturbation=perturbation,
        seed=seed,
        regular_value=regular_value,
        improving=improving,
        best_improvement=best_improvement,
    )

    logger = getLogger(__name__)
    message = f"{body} under {constraint}, V_{k}: {improving}/{trials} improving perturbations"

    if improving:
        logger.warning(message)
    else:
        logger.info(message)

    return report
