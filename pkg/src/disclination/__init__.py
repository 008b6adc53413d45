"""Flat SO(3) connections, parallel transport, and point-defect director fields.

A numerics library for the spherically symmetric flat-connection family:
evaluate the connection and its curvature, transport frames along curves,
reconstruct the unit director field, classify the defect at the origin,
and export field samples for figures.  All evaluators are pure functions
of their inputs; values are immutable after construction and safe to
share across threads.
"""

__version__ = "0.1.0"

from .ansatz import (  # noqa: F401
    CurvatureAtPoint,
    GeneralAnsatz,
    SignBranch,
    TorsionAtPoint,
    eval_curvature_K_form,
    eval_flat_connection,
    eval_general_connection,
    eval_general_curvature,
    finite_difference_curvature,
    flat_connection_field,
    general_connection_field,
    ode_residuals,
    flat_solution,
    torsion_flat_vielbein,
)
from .errors import (  # noqa: F401
    AxisExclusionError,
    IntegrationError,
    OriginExclusionError,
    ProfileValidationError,
)
from .nfield import (  # noqa: F401
    Construction,
    DirectorField,
    OriginClassification,
    classify_origin,
    covariant_derivative_n,
    directional_limit,
    director_field,
    estimate_directional_limit,
    hedgehog_P,
    hedgehog_field,
    nfield_cartesian,
    nfield_spherical,
    plane_section_x2,
    spherical_matrix,
)
from .profiles import (  # noqa: F401
    ProfileFunction,
    RadialFunction,
    exp_decay,
    from_expression,
    gauss,
    make_profile,
    rational,
    zero_profile,
)
from .sampling import (  # noqa: F401
    FieldSample,
    FieldSampleSet,
    SampleGridSpec,
    build_sample_set,
)
from .so3 import (  # noqa: F401
    EPSILON,
    apply_rotation,
    bivector_to_vector,
    exp_so3,
    is_rotation,
    log_so3,
    orthonormalize,
    vector_to_bivector,
)
from .transport import (  # noqa: F401
    Curve,
    TransportResult,
    curve_commutator_norm,
    integrate_transport,
    radial_transport_closed_form,
    transport_to_infinity,
    verify_ray_commutativity,
)
