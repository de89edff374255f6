from ._io import dump_estimates
from ._io import write_estimates_csv
from ._io import write_probe_csv
from .asymptotics import BOUNDS_FROM_N
from .asymptotics import asymptotic_probe
from .asymptotics import family_member
from .asymptotics import fit_decay_exponent
from .asymptotics import polarization_asymptotic
from .asymptotics import regular_polygon_gaps
from .asymptotics import u_d
from .data import BATCH_SIZE
from .data import DistanceCertificate
from .data import MCEstimate
from .data import PolygonGaps
from .data import ProbeFamily
from .data import ProbeRow
from .distance import zonotope_distance
from .estimators import cauchy_surface_integral
from .estimators import expected_random_wedge
from .estimators import expected_volume_random_zonotope
from .estimators import kubota_constant
from .estimators import kubota_intrinsic_integral
from .estimators import random_wedge_constant
from .estimators import steiner_mc_volume

__all__ = [
    "BATCH_SIZE",
    "BOUNDS_FROM_N",
    "DistanceCertificate",
    "MCEstimate",
    "PolygonGaps",
    "ProbeFamily",
    "ProbeRow",
    "asymptotic_probe",
    "cauchy_surface_integral",
    "dump_estimates",
    "expected_random_wedge",
    "expected_volume_random_zonotope",
    "family_member",
    "fit_decay_exponent",
    "kubota_constant",
    "kubota_intrinsic_integral",
    "polarization_asymptotic",
    "random_wedge_constant",
    "regular_polygon_gaps",
    "steiner_mc_volume",
    "u_d",
    "write_estimates_csv",
    "write_probe_csv",
    "zonotope_distance",
]
