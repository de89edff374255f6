from ._io import dump_suite_summary
from ._io import write_suite_csv
from .data import EqualityBranch
from .data import InequalityVerdict
from .data import MaclaurinChain
from .data import Orientation
from .data import Simplex
from .data import SuiteResult
from .data import input_digest
from .maclaurin import maclaurin_chain
from .maclaurin import maclaurin_chain_nonneg
from .maclaurin import power2_maclaurin
from .maclaurin import power2_reduced_maclaurin
from .maclaurin import vector_maclaurin
from .simplex import random_simplex
from .simplex import regular_simplex
from .simplex import simplex_cone_sum
from .simplex import simplex_face_power_sum
from .simplex import simplex_sign_span
from .suites import SUITE_ALIASES
from .suites import SuiteSpec
from .suites import available_suites
from .suites import resolve_suite
from .suites import verify_theorem_suite

__all__ = [
    "EqualityBranch",
    "InequalityVerdict",
    "MaclaurinChain",
    "Orientation",
    "SUITE_ALIASES",
    "Simplex",
    "SuiteResult",
    "SuiteSpec",
    "available_suites",
    "dump_suite_summary",
    "input_digest",
    "maclaurin_chain",
    "maclaurin_chain_nonneg",
    "power2_maclaurin",
    "power2_reduced_maclaurin",
    "random_simplex",
    "regular_simplex",
    "resolve_suite",
    "simplex_cone_sum",
    "simplex_face_power_sum",
    "simplex_sign_span",
    "verify_theorem_suite",
    "vector_maclaurin",
    "write_suite_csv",
]
