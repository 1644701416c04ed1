"""Degrees of polarization for 2D and 3D fields.

The distance-based degree of a coherence matrix is computed analytically
from its eigenvalues and cross-checked by a brute-force minimization over
SU(2)/SU(3) group elements.
"""

from .ensemble import FieldEnsemble, estimate_coherence, estimate_overlap, sample_ensemble
from .errors import (
    BadResolution,
    DimMismatch,
    InternalConsistencyError,
    NonPositiveTrace,
    NotHermitian,
    NotPositiveSemidefinite,
    OutsideTriangle,
    PoldegError,
    UnsupportedDim,
)
from .groups import (
    EulerSU2,
    EulerSU3,
    GroupElement,
    adjoint_on_stokes,
    conjugate,
    sample_group,
    su2_from_euler,
    su3_from_euler,
)
from .matcore import EigenSystem, eig_hermitian, hermitize, trace_norm, trace_product
from .optimizer import (
    MinimizationResult,
    Zone,
    ZoneClassification,
    classify_zone,
    degree_hs_analytic,
    degree_hs_oracle,
    degree_trace_distance,
    hs_distance_sq,
    overlap_transform,
    trace_distance_oracle,
)
from .polarization import (
    CoherenceMatrix,
    DegreeReport,
    build_degree_report,
    decompose_2d,
    degree_eigen,
    degree_length,
    degree_purity,
    degree_sheppard,
    from_stokes,
    make_coherence,
    purity,
    random_coherence,
    to_stokes,
)
from .regionmap import TriangleGrid, build_grid, check_sixfold_symmetry, evaluate_grid
from .su import GeneratorBasis, StructureTensors, build_basis, compute_structure_tensors, star, wedge

__version__ = "0.1.0"
