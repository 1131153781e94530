"""Product-frame expansions of multiqubit density operators.

Builds dual frames of Bloch-vector projectors, expands states into product
coefficient tables (discrete frames, spherical harmonics, or the continuous
angular density), minimizes the expansion function over product directions,
and certifies or refutes separability against closed-form thresholds.
"""

from .operators import (
    BlochVector,
    DenseOperator,
    DensityCheck,
    bloch_projector,
    hermitian_eigenvalues,
    pauli,
    sigma_stack,
    tensor,
    trace_inner,
    validate_density,
)
from .frames import (
    Frame,
    FrameCheck,
    NonSpanningFrameError,
    Superoperator,
    build_frame,
    cardinal6,
    continuous_dual,
    dual_frame,
    frame_check,
    frame_from_json,
    frame_to_json,
    gram,
    polyhedron_vectors,
    reflect_octant,
)
from .representations import (
    CoefficientTable,
    PauliCoefficients,
    SphereQuadrature,
    pauli_coefficients,
    pauli_to_operator,
    reconstruct_continuous,
    reconstruct_discrete,
    sphere_quadrature,
    wcan_continuous,
    wcan_discrete,
)
from .harmonics import SphCoefficients, add_hosh, canonical_pauli, sph_coefficients, sph_y
from .minimize import (
    MinimizeResult,
    minimize_wcan,
    mix_with_identity,
    sphere_grid,
    threshold_search,
)
from .states import (
    EnsembleTerm,
    ProductEnsemble,
    StateSpec,
    bound_cat,
    bound_duer,
    bound_general,
    build_state,
    cat_state_vector,
    dilute_with_mixed,
    ensemble_to_table,
    ghz_ensemble,
    werner_ensemble,
)
from .separability import (
    CertificateError,
    SeparabilityCertificate,
    WitnessReport,
    certify,
    partial_transpose,
    ppt_min_eigenvalue,
    witness_ghz,
    witness_werner,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "CertificateError",
    "CoefficientTable",
    "DenseOperator",
    "DensityCheck",
    "EnsembleTerm",
    "Frame",
    "FrameCheck",
    "MinimizeResult",
    "NonSpanningFrameError",
    "PauliCoefficients",
    "ProductEnsemble",
    "SeparabilityCertificate",
    "SphCoefficients",
    "SphereQuadrature",
    "StateSpec",
    "Superoperator",
    "WitnessReport",
    "add_hosh",
    "bloch_projector",
    "bound_cat",
    "bound_duer",
    "bound_general",
    "build_frame",
    "build_state",
    "canonical_pauli",
    "cardinal6",
    "cat_state_vector",
    "certify",
    "continuous_dual",
    "dilute_with_mixed",
    "dual_frame",
    "ensemble_to_table",
    "frame_check",
    "frame_from_json",
    "frame_to_json",
    "ghz_ensemble",
    "gram",
    "hermitian_eigenvalues",
    "minimize_wcan",
    "mix_with_identity",
    "partial_transpose",
    "pauli",
    "pauli_coefficients",
    "pauli_to_operator",
    "polyhedron_vectors",
    "ppt_min_eigenvalue",
    "reconstruct_continuous",
    "reconstruct_discrete",
    "reflect_octant",
    "sigma_stack",
    "sph_coefficients",
    "sph_y",
    "sphere_grid",
    "sphere_quadrature",
    "tensor",
    "threshold_search",
    "trace_inner",
    "validate_density",
    "werner_ensemble",
    "witness_ghz",
    "witness_werner",
]
