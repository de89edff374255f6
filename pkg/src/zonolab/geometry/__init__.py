from .combinatorics import binomial
from .combinatorics import elementary_symmetric
from .combinatorics import elementary_symmetric_all
from .combinatorics import gray_code_subsets
from .combinatorics import revolving_door_subsets
from .combinatorics import sign_gray_code
from .combinatorics import subset_batches
from .data import RevolvingDoorStep
from .data import SphereConstants
from .linalg import as_vectors
from .linalg import canonicalize_signs
from .linalg import char_poly_symmetric_sums
from .linalg import complement_normals
from .linalg import gram_eigenvalues
from .linalg import gram_matrix
from .linalg import orthogonal_complement_normal
from .linalg import subset_wedge_norms
from .linalg import wedge_norm
from .sphere import ball_intrinsic_volume
from .sphere import ball_mean_width_constant
from .sphere import kappa
from .sphere import omega
from .sphere import sphere_constants

__all__ = [
    "RevolvingDoorStep",
    "SphereConstants",
    "as_vectors",
    "ball_intrinsic_volume",
    "ball_mean_width_constant",
    "binomial",
    "canonicalize_signs",
    "char_poly_symmetric_sums",
    "complement_normals",
    "elementary_symmetric",
    "elementary_symmetric_all",
    "gram_eigenvalues",
    "gram_matrix",
    "gray_code_subsets",
    "kappa",
    "omega",
    "orthogonal_complement_normal",
    "revolving_door_subsets",
    "sign_gray_code",
    "sphere_constants",
    "subset_batches",
    "subset_wedge_norms",
    "wedge_norm",
]
