"""
Werner and isotropic curves
===========================

Computes the correlation of Werner and isotropic states over their full
parameter range and compares each value with its closed form.
"""

import numpy as np

from skewcorr import q_general
from skewcorr.oracle import analytic_isotropic, analytic_werner
from skewcorr.states import isotropic, werner

# %%
# Werner states vanish at x = 1/m, where they become the maximally mixed state.
for m in (2, 3, 5):
    xs = np.linspace(-1, 1, 21)
    qs = np.array([q_general(werner(m, x)).q for x in xs])
    ref = np.array([analytic_werner(m, x) for x in xs])
    print(f"werner m={m}: max gap {np.max(np.abs(qs - ref)):.1e}, "
          f"q(1/m)={q_general(werner(m, 1 / m)).q:.1e}")

# %%
# Isotropic states vanish at x = 1/m^2 and reach (m-1)/m when fully entangled.
for m in (2, 3, 5):
    xs = np.linspace(0, 1, 21)
    gap = max(abs(q_general(isotropic(m, x)).q - analytic_isotropic(m, x)) for x in xs)
    top = q_general(isotropic(m, 1.0)).q
    print(f"isotropic m={m}: max gap {gap:.1e}, q(1)={top:.6f} vs {(m - 1) / m:.6f}")
