"""Exact lattices over F_q[T] inside F_q((1/T)).

Layers: scalar arithmetic with exact degree-valuation norms
(fflat.algebra), dense linear algebra over F_q(T) and normal forms over
F_q[T] (fflat.linalg), exterior algebra with the max norm
(fflat.exterior), ultrametric orthonormalization and the orthogonal group
(fflat.ortho), lattices with covolume exponents, projections, and the
submodularity check (fflat.lattice), seeded generators plus the property
suite (fflat.harness), JSON instance documents (fflat.serialize), and the
command-line front end (fflat.cli).

BACKEND names the active polynomial kernel: "cython" when the compiled
extension is importable, otherwise "python" (forced by the
FFLAT_PURE_PYTHON environment variable).
"""

from ._core import BACKEND
from .algebra import (
    BOTTOM,
    FieldConfig,
    FqElem,
    Poly,
    QExp,
    RatFunc,
    format_element,
    parse_element,
    poly_gcd,
    valuation,
)
from .exterior import MultiVec, max_norm, wedge, wedge_vectors
from .lattice import (
    CovolConfig,
    Lattice,
    Subspace,
    SubmodularityReport,
    check_submodularity,
    covolume,
    d_delta,
    module_basis,
    project_lattice,
    shortest_vector,
    subspace_intersect,
    subspace_meet_lattice,
    subspace_sum,
)
from .linalg import Matrix, hnf, mat_det, saturate, snf, unimodular_complete
from .ortho import (
    extend_to_special_ortho,
    is_in_ortho_group,
    is_orthonormal_set,
    ortho_transport,
    orthonormalize,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BOTTOM",
    "CovolConfig",
    "FieldConfig",
    "FqElem",
    "Lattice",
    "Matrix",
    "MultiVec",
    "Poly",
    "QExp",
    "RatFunc",
    "Subspace",
    "SubmodularityReport",
    "check_submodularity",
    "covolume",
    "d_delta",
    "extend_to_special_ortho",
    "format_element",
    "hnf",
    "is_in_ortho_group",
    "is_orthonormal_set",
    "mat_det",
    "max_norm",
    "module_basis",
    "ortho_transport",
    "orthonormalize",
    "parse_element",
    "poly_gcd",
    "project_lattice",
    "saturate",
    "shortest_vector",
    "snf",
    "subspace_intersect",
    "subspace_meet_lattice",
    "subspace_sum",
    "unimodular_complete",
    "valuation",
    "wedge",
    "wedge_vectors",
    "__version__",
]
