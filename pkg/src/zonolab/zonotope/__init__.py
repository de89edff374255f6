from ._io import load_generator_set
from ._io import parse_generator_set
from ._io import save_generator_set
from .constructors import make_cube
from .constructors import make_fibonacci_hemisphere
from .constructors import make_regular_rhombic_dodecahedron
from .constructors import make_regular_simplex
from .constructors import make_regular_zonogon
from .constructors import random_centered_rhombic_dodecahedron
from .constructors import random_parallelotope
from .constructors import random_rhombic_dodecahedron
from .constructors import random_unit_generators
from .data import GeneratorSet
from .data import ZonotopeClassification
from .transforms import center
from .transforms import check_unit
from .transforms import classify
from .transforms import complement_basis
from .transforms import project
from .transforms import project_to_frame
from .transforms import projection_body
from .transforms import rotate
from .transforms import scale
from .transforms import span_rank

__all__ = [
    "GeneratorSet",
    "ZonotopeClassification",
    "center",
    "check_unit",
    "classify",
    "complement_basis",
    "load_generator_set",
    "make_cube",
    "make_fibonacci_hemisphere",
    "make_regular_rhombic_dodecahedron",
    "make_regular_simplex",
    "make_regular_zonogon",
    "parse_generator_set",
    "project",
    "project_to_frame",
    "projection_body",
    "random_centered_rhombic_dodecahedron",
    "random_parallelotope",
    "random_rhombic_dodecahedron",
    "random_unit_generators",
    "rotate",
    "save_generator_set",
    "scale",
    "span_rank",
]
