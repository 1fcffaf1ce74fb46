"""
Sudden change in a bound entangled family
=========================================

The 3x3 PPT family keeps changing with alpha until it hits 4/21 and then
stays flat. Sample the curve, then bisect for the kink.
"""

import numpy as np

from skewcorr import q_general
from skewcorr.oracle import PLATEAU, locate_plateau_onset, sudden_change_closed_form
from skewcorr.states import ppt_family

alphas = np.linspace(2, 5, 61)
qs = np.array([q_general(ppt_family(a)).q for a in alphas])

for a, q in zip(alphas[::10], qs[::10]):
    print(f"alpha={a:.2f}  q={q:.10f}")

onset = locate_plateau_onset(lambda a: q_general(ppt_family(a)).q, alphas, qs)
print(f"numerical kink  {onset:.6f}")
print(f"closed form     {sudden_change_closed_form():.6f}")
print(f"plateau offset  {np.max(np.abs(qs[alphas >= 3.2] - PLATEAU)):.1e}")
