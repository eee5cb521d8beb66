"""Tetrahedron and n-simplex operator families, the Toffoli gate families
they contain, and numerical verification of the simplex equations."""

from .gates import CCNOT, CCZ, CNOT, CZ, SWAP, local_conjugate, n_toffoli, reference_gate
from .operators import (
    FOUR_SIMPLEX_VARIANTS,
    CouplingConstants,
    SiteOperatorFamily,
    conjugated_site_operator,
    constant_alpha,
    constant_alpha_beta,
    constant_ccz,
    constant_linear,
    cz_yangbaxter,
    general_toffoli,
    generic_tetrahedron,
    n_simplex_constant,
    n_simplex_su2_toffoli,
    su2_4simplex,
    su2_tetrahedron,
    toffoli_family,
    twisted_permutation,
)
from .su2 import (
    AxisAngle,
    DegenerateEigenvaluesError,
    fixed_gate,
    projector_pm,
    random_axis_angle,
    rotated_x,
    rotation,
)
from .tensor import (
    DEFAULT_TOL,
    Tolerance,
    apply,
    arity_of,
    embed,
    equal_up_to_global_phase,
    frobenius_distance,
    identity,
    is_unitary,
    kron,
    load_operator,
    random_operator,
    random_state,
    random_unitary,
    register_size_of,
    save_operator,
)
from .verify import (
    CHECKS,
    campaign,
    edge_residual_3,
    index_scheme,
    permutation_relation_suite,
    reversal_residual,
    vertex_residual,
)

__version__ = "0.1.0"
