"""
Cross-checking against brute force
==================================

The brute-force oracle searches bases of A directly. Since it reports the
cost of an explicit basis it can never beat the true minimum, so it should
land just above the joint-diagonalization value.
"""

from skewcorr import q_general, q_qubit_qudit
from skewcorr.oracle import brute_force_q
from skewcorr.states import random_mixed

for m, n, seed in [(2, 2, 0), (2, 3, 1), (3, 3, 2)]:
    rho = random_mixed(m, n, seed=seed)
    q = q_general(rho).q
    line = f"{m}x{n}: jad {q:.10f}  brute {brute_force_q(rho):.10f}"
    if m == 2:
        line += f"  closed form {q_qubit_qudit(rho).q:.10f}"
    print(line)
