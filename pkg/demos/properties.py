"""
Invariance, contractivity and the zero set
==========================================

Local unitaries leave the correlation unchanged, channels on B can only
lower it, and classical-quantum states sit exactly at zero.
"""

from skewcorr import q_general
from skewcorr.channels import apply_on_B, depolarizing_channel, local_unitary, random_channel
from skewcorr.states import random_classical_quantum, random_mixed, random_unitary

rho = random_mixed(2, 3, seed=4)
q0 = q_general(rho).q
moved = local_unitary(rho, random_unitary(2, 5), random_unitary(3, 6))
print(f"q = {q0:.10f}, after local unitaries {q_general(moved).q:.10f}")

for k in (1, 2, 3):
    out = apply_on_B(rho, random_channel(3, k, seed=k))
    print(f"random channel with {k} Kraus operators: q = {q_general(out).q:.10f}")
print(f"full depolarization of B: q = {q_general(apply_on_B(rho, depolarizing_channel(3))).q:.1e}")

cq = random_classical_quantum(3, 3, seed=8)
print(f"classical-quantum state: q = {q_general(cq).q:.1e}")
