from .circumradius import CIRCUMRADIUS_LIMIT
from .circumradius import SignMaximizers
from .circumradius import circumradius
from .circumradius import circumradius_maximizers
from .circumradius import circumradius_witness_count
from .circumradius import signed_sum_maximizers
from .data import RadiusCertificate
from .data import RadiusKind
from .data import RatioReport
from .inradius import facet_normals
from .inradius import inradius
from .inradius import ratio_report
from .inradius import sphere_grid_inradius
from .support import support
from .support import support_many

__all__ = [
    "CIRCUMRADIUS_LIMIT",
    "RadiusCertificate",
    "RadiusKind",
    "RatioReport",
    "SignMaximizers",
    "circumradius",
    "circumradius_maximizers",
    "circumradius_witness_count",
    "facet_normals",
    "inradius",
    "ratio_report",
    "signed_sum_maximizers",
    "sphere_grid_inradius",
    "support",
    "support_many",
]
