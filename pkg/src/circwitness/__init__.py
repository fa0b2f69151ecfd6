"""Circulant entanglement witnesses for two-qudit systems.

Constructs circulant operators on C^d (x) C^d, the witness families
W_alpha / W'_alpha / W[a_0,...,a_{d-1}], the beta-parametrized family of
(bound) entangled states, and the tools to classify states (PPT/NPT),
numerically certify the witness property via see-saw product-state
minimization, and expand witnesses over a generalized Gell-Mann basis.
"""

__version__ = "0.1.0"

from ._backend import SEESAW_BACKEND
from .linalg import (
    Tolerance,
    hadamard,
    hermitian_eigenvalues,
    is_positive_semidefinite,
    partial_transpose,
    tensor,
    trace_product,
)
from .circulant import (
    CirculantSpec,
    assemble,
    assemble_tilde,
    circulant_partial_transpose,
    disassemble,
    shift_matrix,
)
from .witness import (
    AlphaWitnessParams,
    WitnessCoefficients,
    alpha_admissible_range,
    flip_operator,
    max_entangled_projector,
    projector_O,
    witness_W_alpha,
    witness_family,
)
from .states import (
    StateLambdas,
    beta_lambdas,
    classify_beta,
    is_ppt,
    ppt_closed_form,
    state_from_lambdas,
)
from .detect import (
    DetectionReport,
    SeeSawConfig,
    certify_nd,
    detect_state,
    expectation,
    product_min,
)
from .gellmann import (
    LocalDecomposition,
    expand_local,
    gellmann_basis,
    measurement_settings_report,
    reconstruct,
)
