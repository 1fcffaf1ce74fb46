"""Reference values that do not go through joint diagonalization.

Closed forms exist for the Werner, isotropic and ``3 x 3`` PPT families. For
anything else :func:`brute_force_q` searches bases of subsystem A directly,
scoring each by commutator norms; it never forms the blocks of ``sqrt(rho)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, haar_unitary, psd_sqrt

PLATEAU = 4.0 / 21.0


@dataclass(frozen=True)
class OracleBudget:
    grid_points: int = 10_000
    restarts: int = 64
    refine_iters: int = 200
    seed: int = 0

    def __post_init__(self):
        if min(self.grid_points, self.restarts, self.refine_iters) < 1:
            raise ValueError("oracle budget entries must be positive")


def analytic_werner(m: int, x: float) -> float:
    """``(m - x - sqrt(m^2-1) sqrt(1-x^2)) / (2 (m+1))``."""
    if m < 2 or not (-1.0 <= x <= 1.0):
        raise ValueError("need m >= 2 and x in [-1, 1]")
    return (m - x - math.sqrt(m * m - 1) * math.sqrt(1 - x * x)) / (2 * (1 + m))


def analytic_isotropic(m: int, x: float) -> float:
    """``(1 - 2 sqrt(m^2-1) sqrt(x(1-x)) + (m^2-2) x) / (m (m+1))``."""
    if m < 2 or not (0.0 <= x <= 1.0):
        raise ValueError("need m >= 2 and x in [0, 1]")
    return (1 - 2 * math.sqrt(m * m - 1) * math.sqrt(x * (1 - x)) + (m * m - 2) * x) / (
        m * (1 + m)
    )


def sudden_change_closed_form() -> float:
    """``(15 + sqrt(136 sqrt(94) - 1307)) / 6``."""
    return (15 + math.sqrt(136 * math.sqrt(94) - 1307)) / 6


def _ppt_branch(alpha: float) -> float:
    return (
        21
        - math.sqrt(6 * (5 - alpha))
        - math.sqrt(6 * alpha)
        - 3 * math.sqrt(alpha * (5 - alpha))
    ) / 31.5


def analytic_ppt(alpha: float) -> float:
    """Piecewise closed form for the PPT family, constant ``4/21`` past the kink."""
    if not (2.0 <= alpha <= 5.0):
        raise ValueError("alpha must lie in [2, 5]")
    if alpha <= sudden_change_closed_form():
        return _ppt_branch(alpha)
    return PLATEAU


def bisect_root(f, lo: float, hi: float, xtol: float = 1e-12) -> float:
    """Bisection for a sign change of ``f`` on ``[lo, hi]``."""
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ValueError("no sign change on the bracket")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sudden_change_point(xtol: float = 1e-10) -> float:
    """Where the curved branch of the PPT formula reaches the ``4/21`` plateau."""
    return bisect_root(lambda a: _ppt_branch(a) - PLATEAU, 2.5, 4.0, xtol)


def locate_plateau_onset(q_of_alpha, alphas, qs, level=PLATEAU, tol=1e-8, xtol=1e-5):
    """Find where a sampled curve first settles on ``level``.

    The first grid point within ``tol`` of ``level`` brackets the onset with
    its predecessor; the bracket is then bisected by calling ``q_of_alpha``.
    """
    alphas = np.asarray(alphas, dtype=float)
    qs = np.asarray(qs, dtype=float)
    on = np.abs(qs - level) <= tol
    if not on.any():
        raise ValueError("curve never reaches the plateau")
    first = int(np.argmax(on))
    if first == 0:
        return float(alphas[0])
    lo, hi = float(alphas[first - 1]), float(alphas[first])
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if abs(q_of_alpha(mid) - level) <= tol:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# --- brute-force minimization over bases ------------------------------------


def _vector_costs(root: np.ndarray, vecs: np.ndarray, n: int) -> np.ndarray:
    """``I(rho, |v><v| (x) 1_n)`` for a stack of vectors ``vecs[..., m]``."""
    m = vecs.shape[-1]
    d = m * n
    proj = np.einsum("...a,...b->...ab", vecs, vecs.conj())
    big = np.einsum("...ab,ij->...aibj", proj, np.eye(n)).reshape(vecs.shape[:-1] + (d, d))
    comm = root @ big - big @ root
    return 0.5 * np.sum(np.abs(comm) ** 2, axis=(-2, -1))


_MOVES = ((1.0, 1.0), (-1.0, 1.0), (1.0, 1j), (-1.0, 1j))


def _hill_climb(root, bases, n, delta, iters, min_step=1e-7):
    """Coordinate search over plane rotations, batched over starting bases.

    ``bases[r, :, k]`` is the k-th vector of start ``r``. A move rotates
    columns ``p, q`` by angle ``+-delta`` with a real or imaginary coupling;
    failed passes halve the step of that start.
    """
    bases = bases.copy()
    nb, m, _ = bases.shape
    costs = _vector_costs(root, np.swapaxes(bases, 1, 2), n)
    delta = np.full(nb, float(delta))
    planes = [(p, q) for p in range(m) for q in range(p + 1, m)]
    for _ in range(iters):
        moved = np.zeros(nb, dtype=bool)
        for p, q in planes:
            for sign, phase in _MOVES:
                c = np.cos(sign * delta)[:, None]
                s = np.sin(sign * delta)[:, None]
                bp, bq = bases[:, :, p], bases[:, :, q]
                new_p = c * bp + phase * s * bq
                new_q = -np.conj(phase) * s * bp + c * bq
                cp = _vector_costs(root, new_p, n)
                cq = _vector_costs(root, new_q, n)
                better = cp + cq < costs[:, p] + costs[:, q] - 1e-16
                if better.any():
                    bases[better, :, p] = new_p[better]
                    bases[better, :, q] = new_q[better]
                    costs[better, p] = cp[better]
                    costs[better, q] = cq[better]
                    moved |= better
        delta = np.where(moved, delta, 0.5 * delta)
        if np.all(delta < min_step):
            break
    return costs.sum(axis=1), bases


def _qubit_bases(theta, phi):
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    e = np.exp(1j * phi)
    basis = np.empty(theta.shape + (2, 2), dtype=complex)
    basis[..., 0, 0] = c
    basis[..., 1, 0] = e * s
    basis[..., 0, 1] = -np.conj(e) * s
    basis[..., 1, 1] = c
    return basis


def brute_force_q(rho: DensityMatrix, budget: OracleBudget | None = None) -> float:
    """Minimize the summed skew information over bases of A by direct search.

    For ``m == 2`` the Bloch sphere is scanned on a ``(theta, phi)`` grid and
    the best grid points are polished by local search. For ``m >= 3`` the
    search starts from Haar-random bases. Either way the result is the
    objective at an explicit basis, hence an upper bound on the true minimum.
    """
    budget = budget or OracleBudget()
    m, n = rho.m, rho.n
    if m * n > 12:
        raise ValueError("brute force is limited to m*n <= 12")
    root = psd_sqrt(rho)
    if m == 1:
        return 0.0
    if m == 2:
        side = max(2, int(round(math.sqrt(budget.grid_points))))
        theta, phi = np.meshgrid(
            np.linspace(0, np.pi, side), np.linspace(0, 2 * np.pi, side, endpoint=False)
        )
        grid = _qubit_bases(theta.ravel(), phi.ravel())
        totals = _vector_costs(root, np.swapaxes(grid, 1, 2), n).sum(axis=1)
        keep = np.argsort(totals, kind="stable")[: min(8, totals.size)]
        starts = grid[keep]
        delta = np.pi / side
    else:
        rng = np.random.default_rng(budget.seed)
        starts = np.stack([haar_unitary(m, rng) for _ in range(budget.restarts)])
        delta = 0.3
    totals, _ = _hill_climb(root, starts, n, delta, budget.refine_iters)
    return float(totals.min())
