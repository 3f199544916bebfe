"""Meromorphic null curves in SL(2,C) and C^3.

Construction, transformation and validation of null curves; Wronskian,
Gauss-map and Hopf invariants with end classification at punctures;
hyperbolic and de Sitter projections with surface meshing; period
integrals over cycles and a damped Newton solver that closes the periods
of multiplicatively sprayed spinor data.
"""

from .errors import (
    CrossCheckFailed,
    DegenerateDenominator,
    DegenerateEta,
    DivisionByZeroFunction,
    EtaIdenticallyZero,
    EvaluationAtPole,
    FirstEntryZero,
    GaussMapMismatch,
    HopfMismatch,
    HypothesisViolation,
    IdenticallyZero,
    InvalidMultiplicity,
    MaxIterExceeded,
    NonExactField,
    NotAnEnd,
    NotHermitian,
    NotUnimodular,
    NullCurveError,
    ParseError,
    PoleOnContour,
    PoleOnGrid,
    SearchFailed,
    SingularJacobian,
    ThirdCoordinateZero,
    TruncationTooShort,
    UmbilicInput,
    ValidationFailed,
)
from .exact import ExactComplex, Poly
from .series import (
    DEFAULT_TERMS,
    ZERO_TOL,
    DomainTag,
    LaurentWindow,
    MeroFunction,
    Rational,
    annulus,
    arith,
    differentiate,
    disk,
    evaluate,
    ord_at,
    plane,
    punctured_disk,
    residue,
)
from .spinor import (
    C3NullCurve,
    C3Report,
    DirectionField,
    SpinorData,
    check_null_c3,
    extract_spinor,
    from_spinor,
    integrate_null,
    is_flat,
    spinor_common_zero_points,
)
from .sl2curve import (
    SHEAR_KINDS,
    EndModelSpec,
    SL2NullCurve,
    SL2Report,
    aux_rotations,
    check_null_sl2,
    end_model,
    min_sup_norm_on_circle,
    push_norm,
    shear,
    shear_matrix,
    shear_operator_norm,
    tee,
    tee_curve,
    tee_inv,
    tee_inv_curve,
)
from .invariants import (
    EndReport,
    classify_end,
    end_multiplicity,
    hopf,
    hyperbolic_gauss,
    induced_metric_factor,
    maurer_cartan_min_ord,
    omega,
    secondary_gauss,
)
from .spaceforms import (
    MEMBERSHIP_TOL,
    H3Point,
    MinkowskiPoint,
    S31Point,
    ball_to_hyperboloid,
    her_from_l4,
    l4_from_her,
    membership,
    minkowski_inner,
    poincare_ball,
    project_h3,
    project_s31,
    random_su2,
    random_su11,
    random_unimodular,
)
from .periods import (
    Cycle,
    PeriodReport,
    SolveResult,
    SprayFamily,
    period,
    period_map,
    period_solve,
    solver_residual,
    spray_apply,
    window_exp,
)
from .meshing import (
    SurfaceMesh,
    build_surface_mesh,
    grid_points,
    obj_text,
    read_obj_vertices,
    sidecar_dict,
    write_obj,
)

__version__ = "0.1.0"
