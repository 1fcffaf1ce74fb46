"""Skew-information quantum correlation of bipartite states.

The correlation of an ``m x n`` state is the smallest summed Wigner-Yanase
skew information of rank-one projectors ``|k><k| (x) 1`` over orthonormal
bases of A. It is computed by joint approximate diagonalization of the blocks
of ``sqrt(rho)``, with closed forms for qubit-qudit and pure states.
"""

from .channels import KrausChannel, apply_on_B, local_unitary, random_channel
from .jad import JadOptions, JadResult, MatrixSet, best_rotation, block_set, jad, objective
from .linalg import (
    DensityMatrix,
    StateValidationError,
    extract_blocks,
    hermitian_eig,
    kron,
    partial_trace_A,
    partial_trace_B,
    psd_sqrt,
)
from .measure import (
    CorrelationResult,
    correlation_matrix_T,
    fisher_per_phase,
    is_classical_quantum,
    q_general,
    q_pure,
    q_qubit_qudit,
    quantum_correlation,
    skew_information,
)
from .oracle import (
    OracleBudget,
    analytic_isotropic,
    analytic_ppt,
    analytic_werner,
    brute_force_q,
    sudden_change_point,
)
from .states import (
    FamilySpec,
    classical_quantum,
    isotropic,
    max_entangled,
    ppt_family,
    pure_from_schmidt,
    random_mixed,
    random_unitary,
    werner,
)

__version__ = "0.1.0"
