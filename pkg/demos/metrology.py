"""
Phase estimation reading
========================

At the optimal basis the per-phase Fisher information adds up to twice the
correlation. The Bell state reaches the largest value for two qubits.
"""

import numpy as np

from skewcorr import q_general
from skewcorr.measure import fisher_per_phase
from skewcorr.states import max_entangled, random_mixed
from skewcorr.linalg import pure_density

for label, rho in [("bell", pure_density(max_entangled(2), 2, 2)),
                   ("random 3x2", random_mixed(3, 2, seed=3))]:
    res = q_general(rho)
    fisher = fisher_per_phase(rho, res.optimal_basis)
    print(f"{label}: F = {np.round(fisher, 6)}, sum {fisher.sum():.10f}, 2q {2 * res.q:.10f}")
