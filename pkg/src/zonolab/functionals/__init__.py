from ._io import append_report_row
from ._io import dump_report
from .data import FunctionalsReport
from .data import MethodTag
from .data import PowerKVolume
from .data import SteinerPolynomial
from .volumes import ENUMERATION_LIMIT
from .volumes import alexandrov_fenchel_chain
from .volumes import functionals_report
from .volumes import intrinsic_volume
from .volumes import intrinsic_volumes
from .volumes import mean_width
from .volumes import power2_ratio
from .volumes import power_k_volume
from .volumes import steiner_polynomial
from .volumes import surface_area

__all__ = [
    "ENUMERATION_LIMIT",
    "FunctionalsReport",
    "MethodTag",
    "PowerKVolume",
    "SteinerPolynomial",
    "alexandrov_fenchel_chain",
    "append_report_row",
    "dump_report",
    "functionals_report",
    "intrinsic_volume",
    "intrinsic_volumes",
    "mean_width",
    "power2_ratio",
    "power_k_volume",
    "steiner_polynomial",
    "surface_area",
]
