"""Generalized power cones: membership, projection, faces, Hoelder error
bounds, facial reduction certificates and automorphisms."""

__version__ = "0.1.0"

from .cone import (  # noqa: E402
    ConeParams,
    MembershipReport,
    SplitPoint,
    Status,
    dist_to_cone,
    dual_membership,
    dual_transform,
    gauge,
    in_cone,
    in_dual_cone,
    join,
    membership,
    membership_batch,
    moreau_check,
    project_batch,
    project_onto_cone,
    sample_boundary,
    sample_dual_boundary,
    sample_interior,
    split,
)
from .faces import (  # noqa: E402
    Full,
    Orthant,
    Ray,
    Trivial,
    dist_to_face,
    expose_face,
    face_membership,
    idempotent_projection,
    project_onto_face,
)
from .error_bounds import (  # noqa: E402
    FrfSpec,
    GammaEstimate,
    analytic_gamma,
    exponent_for_face,
    frf_evaluate,
    frf_spec,
    gamma_estimate,
    holder_bound_check,
    witness_curve_orthant,
    witness_curve_ray,
)
from .facial_reduction import (  # noqa: E402
    AffineSet,
    Certificate,
    certify,
    error_bound_apply,
    find_exposing_vector,
    interior_feasible,
    verify_exposing_vector,
)
from .automorphisms import (  # noqa: E402
    AutElement,
    ConeClassification,
    LieElement,
    classify,
    exp_check,
    is_automorphism,
    lie_basis,
    lie_dim,
    lie_dim_numeric,
    sample_automorphism,
)
