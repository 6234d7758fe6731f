"""Rigid folding kinematics of a single degree-6 vertex.

Loop-closure geometry, symmetry-reduced first and second order rigidity
analysis, exhaustive classification of symmetric folding modes on the
equilateral pattern, closed-form evaluators for each foldable family, and
configuration-space sampling with csv/json/obj export.
"""

from .config_space import (
    AdmissibleRegion,
    ConfigSample,
    CurveTrace,
    ExportReport,
    SurfaceGrid,
    admissible_region,
    export,
    load_samples_json,
    make_sample,
    sweep_model,
    trace_implicit_curve,
)
from .core_geometry import (
    CLOSURE_TOL,
    CreasePattern,
    FoldedState,
    closure_matrix,
    closure_residual,
    crease_rotation,
    folded_geometry,
    g60,
    self_intersects,
    wrap_angle,
)
from .errors import (
    BranchAmbiguityError,
    DegenerateConfigurationError,
    DomainError,
    InconsistentPointError,
    NoSolutionError,
    NotClosedError,
    NumericalError,
    OutOfRangeError,
    RigidFoldError,
    SingularParameterError,
)
from .fold_models import (
    FoldMode,
    FoldModel,
    Multiplier,
    OppositesSolution,
    almost_general,
    bowtie,
    bowtie_multiplier,
    bowtie_pattern,
    bowtie_vector,
    degree4_fold,
    degree4_multipliers,
    degree4_pattern,
    general_fold,
    general_rho1,
    general_rho2,
    general_rho3,
    igloo_1dof,
    igloo_pattern,
    igloo_rho1,
    igloo_rho4,
    igloo_vector,
    opposites_pattern,
    opposites_solve,
    opposites_vector,
    pleat_multiplier,
    resch_fold,
    trifold,
    trifold_drive_limit,
    trifold_multiplier,
    trifold_pattern,
    trifold_vector,
    two_pair_complete,
    two_pair_curve_residual,
    two_pair_pattern,
    two_pair_vector,
)
from .second_order_rigidity import (
    ModeSolution,
    VelocityVector,
    first_order_matrix,
    ray_class_values,
    second_order_matrix,
    symmetric_mode_solve,
    symmetry_reduced_system,
)
from .symmetry_enumeration import (
    ColorPattern,
    NAMED_PATTERNS,
    NAMED_REPRESENTATIVES,
    Table1Row,
    canonical_form,
    classify_g60,
    enumerate_patterns,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleRegion",
    "BranchAmbiguityError",
    "CLOSURE_TOL",
    "ColorPattern",
    "ConfigSample",
    "CreasePattern",
    "CurveTrace",
    "DegenerateConfigurationError",
    "DomainError",
    "ExportReport",
    "FoldMode",
    "FoldModel",
    "FoldedState",
    "InconsistentPointError",
    "ModeSolution",
    "Multiplier",
    "NAMED_PATTERNS",
    "NAMED_REPRESENTATIVES",
    "NoSolutionError",
    "NotClosedError",
    "NumericalError",
    "OppositesSolution",
    "OutOfRangeError",
    "RigidFoldError",
    "SingularParameterError",
    "SurfaceGrid",
    "Table1Row",
    "VelocityVector",
    "admissible_region",
    "almost_general",
    "bowtie",
    "bowtie_multiplier",
    "bowtie_pattern",
    "bowtie_vector",
    "canonical_form",
    "classify_g60",
    "closure_matrix",
    "closure_residual",
    "crease_rotation",
    "degree4_fold",
    "degree4_multipliers",
    "degree4_pattern",
    "enumerate_patterns",
    "export",
    "first_order_matrix",
    "folded_geometry",
    "g60",
    "general_fold",
    "general_rho1",
    "general_rho2",
    "general_rho3",
    "igloo_1dof",
    "igloo_pattern",
    "igloo_rho1",
    "igloo_rho4",
    "igloo_vector",
    "load_samples_json",
    "make_sample",
    "opposites_pattern",
    "opposites_solve",
    "opposites_vector",
    "pleat_multiplier",
    "ray_class_values",
    "resch_fold",
    "second_order_matrix",
    "self_intersects",
    "sweep_model",
    "symmetric_mode_solve",
    "symmetry_reduced_system",
    "trace_implicit_curve",
    "trifold",
    "trifold_drive_limit",
    "trifold_multiplier",
    "trifold_pattern",
    "trifold_vector",
    "two_pair_complete",
    "two_pair_curve_residual",
    "two_pair_pattern",
    "two_pair_vector",
    "wrap_angle",
]
