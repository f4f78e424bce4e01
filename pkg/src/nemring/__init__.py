"""Rotationally equivariant Landau-de Gennes model of a spherical colloid in a
nematic liquid crystal with an external field: discrete energy minimization,
recovery-style seed fields, defect diagnostics, and the closed-form limit
landscape with its dipole/saturn-ring hysteresis."""

from .analysis import (
    ComparisonRecord,
    Defect,
    DefectReport,
    biaxiality_field,
    classify_configuration,
    compare_to_limit,
    detect_defects,
)
from .energy import (
    ConvergenceReport,
    EnergyBreakdown,
    Field2D,
    Mesh,
    MeshSpec,
    SolverOpts,
    annulus_elastic_energy,
    assemble_energy,
    assemble_gradient,
    build_mesh,
    minimize,
    read_checkpoint,
    write_checkpoint,
)
from .errors import (
    BoundaryViolationError,
    ConfigError,
    DegenerateTensorError,
    InvalidInputError,
    InvalidSpecError,
    NearZeroTensorError,
    NemringError,
    SolverFailureError,
    SolverStallError,
)
from .limitmodel import (
    LimitTrace,
    TraceRecord,
    critical_betas,
    hysteresis_sweep,
    limit_energy,
    limit_energy_bandset,
    limit_energy_deriv,
    stationary_angles,
)
from .potentials import (
    ModelParams,
    bulk_constant,
    bulk_f,
    bulk_grad,
    field_g,
    field_grad,
    g_on_N,
    s_star,
)
from .profile import (
    ProfileSpec,
    closed_form_I,
    minimize_I,
    optimal_n3,
    quadrature_I,
)
from .qtensor import (
    QTensor,
    SpectralData,
    azimuthal_grad_sq,
    biaxiality_phi,
    dist_N,
    from_director,
    project_N,
    retract_Linf,
    rotate,
    spectral,
)
from .seeds import SeedSpec, build_seed, seed_core, seed_region_F, seed_region_Fc, seed_wedge

__version__ = "0.1.0"
