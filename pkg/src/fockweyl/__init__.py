"""Truncated multimode Fock-space numerics.

Dense and matrix-free bosonic operator algebra on a per-mode-truncated
Fock basis, Weyl quantization and Wigner-operator machinery, closed-form
Gaussian integrals, constructors for center-of-mass / relative-momentum
entangled states, and a validation suite (eigen-residuals, completeness
resolutions, delta-normalization probes).
"""

from fockweyl.fock import (
    BasisSpec,
    ExponentSpec,
    MultiIndex,
    OperatorMatrix,
    StateVector,
    apply_exponent_to_vacuum,
    basis_dimension,
    coherent_state,
    inner_product,
    ladder_matrix,
    quadrature_matrix,
)
from fockweyl.massgauss import (
    GaussianIntegralSpec,
    MassPartition,
    b_det_closed,
    b_inverse_closed,
    b_matrix,
    gaussian_integral_closed,
    gaussian_integral_quadrature,
    make_partition,
)
from fockweyl.states import (
    BipartiteEprParam,
    EtaParam,
    MultiEprParam,
    com_operator,
    eta_exponent,
    multipartite_exponent,
    rel_momentum_operator,
    tripartite_exponent,
    xi_exponent,
)
from fockweyl.weyl import (
    ClassicalMonomial,
    ClassicalPolynomial,
    PhasePoint,
    quantize_via_wigner_quadrature,
    weyl_order_monomial,
    weyl_quantize,
    wigner_function,
    wigner_operator,
)

__all__ = [
    "BasisSpec",
    "MultiIndex",
    "StateVector",
    "OperatorMatrix",
    "ExponentSpec",
    "basis_dimension",
    "ladder_matrix",
    "quadrature_matrix",
    "apply_exponent_to_vacuum",
    "inner_product",
    "coherent_state",
    "PhasePoint",
    "ClassicalMonomial",
    "ClassicalPolynomial",
    "wigner_operator",
    "weyl_order_monomial",
    "weyl_quantize",
    "quantize_via_wigner_quadrature",
    "wigner_function",
    "MassPartition",
    "GaussianIntegralSpec",
    "make_partition",
    "b_matrix",
    "b_det_closed",
    "b_inverse_closed",
    "gaussian_integral_closed",
    "gaussian_integral_quadrature",
    "EtaParam",
    "BipartiteEprParam",
    "MultiEprParam",
    "eta_exponent",
    "xi_exponent",
    "tripartite_exponent",
    "multipartite_exponent",
    "com_operator",
    "rel_momentum_operator",
]

__version__ = "0.1.0"
