from ._io import load_search_config
from ._io import save_search_config
from ._io import write_run_directory
from .data import Constraint
from .data import CounterexampleRecord
from .data import LocalProbeReport
from .data import Objective
from .data import ProbeBody
from .data import RestartTrace
from .data import SearchConfig
from .data import SearchOutcome
from .data import Sense
from .objectives import evaluate
from .objectives import normalize
from .optimize import constrained_minimize
from .optimize import minimize_polarization
from .polarization import polarization_value
from .probes import counterexample_trend
from .probes import local_optimality_probe
from .probes import thm5_counterexample

__all__ = [
    "Constraint",
    "CounterexampleRecord",
    "LocalProbeReport",
    "Objective",
    "ProbeBody",
    "RestartTrace",
    "SearchConfig",
    "SearchOutcome",
    "Sense",
    "constrained_minimize",
    "counterexample_trend",
    "evaluate",
    "load_search_config",
    "local_optimality_probe",
    "minimize_polarization",
    "normalize",
    "polarization_value",
    "save_search_config",
    "thm5_counterexample",
    "write_run_directory",
]
