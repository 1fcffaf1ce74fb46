"""Unitary joint approximate diagonalization by complex Jacobi rotations.

The criterion maximized is the weighted sum of squared diagonal moduli

    J(U) = sum_A w_A * sum_k |(U A U^dag)_kk|^2

over unitaries ``U``. Every sweep visits the ``m(m-1)/2`` coordinate planes in
row-cyclic order and applies the plane rotation that maximizes ``J`` within
that plane, found in closed form from a 3x3 real symmetric eigenproblem
(Cardoso & Souloumiac, SIAM J. Matrix Anal. Appl. 17, 161 (1996)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import dagger, haar_unitary

TIE_TOL = 1e-14
# relative width of the top eigenvalue cluster treated as degenerate
_DEGENERATE = 1e-12


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """Square matrices of one size, each with a positive weight.

    Parameters
    ----------
    matrices : array_like, shape (K, m, m)
    weights : array_like, shape (K,), optional
        Defaults to all ones.
    """

    matrices: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=complex)
        if mats.ndim == 2:
            mats = mats[None]
        if mats.ndim != 3 or mats.shape[0] == 0:
            raise ValueError("matrix set must be a non-empty stack of matrices")
        if mats.shape[1] != mats.shape[2]:
            raise ValueError("matrices must be square")
        if not np.all(np.isfinite(mats)):
            raise ValueError("matrix set has non-finite entries")
        if self.weights is None:
            w = np.ones(mats.shape[0])
        else:
            w = np.asarray(self.weights, dtype=float).ravel()
        if w.shape != (mats.shape[0],) or np.any(w <= 0):
            raise ValueError("need one positive weight per matrix")
        mats.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __len__(self):
        return self.matrices.shape[0]

    def total_mass(self) -> float:
        """``sum_A w_A ||A||_F^2``, the upper bound of the criterion."""
        return float(np.sum(self.weights * np.sum(np.abs(self.matrices) ** 2, axis=(1, 2))))


@dataclass(frozen=True)
class JadOptions:
    rotation_tolerance: float = 1e-12
    max_sweeps: int = 100
    restarts: int = 5
    seed: int = 0

    def __post_init__(self):
        if not self.rotation_tolerance > 0:
            raise ValueError("rotation_tolerance must be positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")
        if self.restarts < 0:
            raise ValueError("restarts must be non-negative")


@dataclass(eq=False)
class JadResult:
    """Outcome of :func:`jad`.

    ``joint_diagonals[a, k]`` is ``(U A_a U^dag)_kk`` for the a-th matrix of
    the set. ``restart_objectives`` lists the final criterion of every run,
    the identity start first.
    """

    unitary: np.ndarray
    joint_diagonals: np.ndarray
    objective: float
    sweeps_used: int
    rotations_used: int
    converged: bool
    restart_index: int
    restart_objectives: list = field(default_factory=list)
    history: list | None = None


def block_set(blocks: np.ndarray) -> MatrixSet:
    """Reduce the ``n x n`` grid of blocks of a Hermitian operator.

    Because ``A_ji = A_ij^dag`` and the diagonal of ``U A^dag U^dag`` is the
    conjugate of that of ``U A U^dag``, only ``i <= j`` is kept: weight 1 on
    the diagonal blocks, 2 off it. The criterion is unchanged.
    """
    n = blocks.shape[0]
    iu, ju = np.triu_indices(n)
    weights = np.where(iu == ju, 1.0, 2.0)
    return MatrixSet(blocks[iu, ju], weights)


def _as_set(mset) -> MatrixSet:
    return mset if isinstance(mset, MatrixSet) else MatrixSet(mset)


def _diag_objective(mats: np.ndarray, weights: np.ndarray) -> float:
    diag = np.diagonal(mats, axis1=1, axis2=2)
    return float(np.sum(weights * np.sum(np.abs(diag) ** 2, axis=1)))


def objective(unitary, mset) -> float:
    """Weighted squared-diagonal criterion of ``mset`` rotated by ``unitary``."""
    mset = _as_set(mset)
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (mset.dim, mset.dim):
        raise ValueError("unitary and matrices differ in size")
    if np.linalg.norm(dagger(u) @ u - np.eye(mset.dim)) > 1e-8:
        raise ValueError("matrix is not unitary")
    return _diag_objective(u @ mset.matrices @ dagger(u), mset.weights)


def _rotation(mats: np.ndarray, weights: np.ndarray, p: int, q: int):
    h = np.stack(
        [
            mats[:, p, p] - mats[:, q, q],
            mats[:, p, q] + mats[:, q, p],
            1j * (mats[:, q, p] - mats[:, p, q]),
        ],
        axis=1,
    )
    g = np.real((weights[:, None] * h.conj()).T @ h)
    scale = np.trace(g)
    if scale <= 0.0:
        return 1.0, 0j
    evals, evecs = np.linalg.eigh(g)
    top = evals >= evals[-1] - _DEGENERATE * scale
    if top.sum() > 1:
        # flat directions: take the maximizer closest to the identity
        sub = evecs[:, top]
        v = sub @ sub[0]
        norm = np.linalg.norm(v)
        v = v / norm if norm > 1e-8 else evecs[:, -1]
    else:
        v = evecs[:, -1]
    if v[0] < 0:
        v = -v
    x = min(1.0, max(-1.0, v[0]))
    c = np.sqrt(0.5 * (1.0 + x))
    s = (-v[1] + 1j * v[2]) / (2.0 * c)
    return float(c), complex(s)


def best_rotation(mset, p: int, q: int) -> tuple[float, complex]:
    """Optimal plane rotation of ``mset`` in coordinates ``(p, q)``.

    Returns ``(c, s)`` with ``c`` real and ``c**2 + |s|**2 == 1``, describing
    the unitary that is the identity outside the plane and
    ``[[c, -conj(s)], [s, c]]`` on it; matrices transform as ``G A G^dag``.
    When the in-plane criterion is flat, the maximizer nearest the identity is
    returned, so an already-diagonal plane gives ``(1, 0)``.
    """
    mset = _as_set(mset)
    m = mset.dim
    if not (0 <= p < m and 0 <= q < m):
        raise IndexError("plane index out of range")
    if p == q:
        raise ValueError("plane needs two distinct indices")
    if p > q:
        p, q = q, p
    return _rotation(mset.matrices, mset.weights, p, q)


def _apply(mats: np.ndarray, u: np.ndarray, p: int, q: int, c: float, s: complex):
    sc = np.conj(s)
    rp = mats[:, p, :].copy()
    mats[:, p, :] = c * rp - sc * mats[:, q, :]
    mats[:, q, :] = s * rp + c * mats[:, q, :]
    cp = mats[:, :, p].copy()
    mats[:, :, p] = c * cp - s * mats[:, :, q]
    mats[:, :, q] = sc * cp + c * mats[:, :, q]
    up = u[p, :].copy()
    u[p, :] = c * up - sc * u[q, :]
    u[q, :] = s * up + c * u[q, :]


def _run(mset: MatrixSet, u0: np.ndarray, opts: JadOptions, record: bool):
    w = mset.weights
    u = u0.astype(complex, copy=True)
    mats = u @ mset.matrices @ dagger(u)
    m = mset.dim
    planes = [(p, q) for p in range(m) for q in range(p + 1, m)]
    history = [_diag_objective(mats, w)] if record else None
    sweeps = rotations = 0
    converged = not planes
    while not converged and sweeps < opts.max_sweeps:
        sweeps += 1
        largest = 0.0
        for p, q in planes:
            c, s = _rotation(mats, w, p, q)
            rotations += 1
            if s != 0:
                _apply(mats, u, p, q, c, s)
                largest = max(largest, abs(s))
            if record:
                history.append(_diag_objective(mats, w))
        converged = largest < opts.rotation_tolerance
    return u, mats, sweeps, rotations, converged, history


def jad(mset, opts: JadOptions | None = None, *, record: bool = False) -> JadResult:
    """Jointly diagonalize a matrix set by a unitary congruence.

    One run starts from the identity; ``opts.restarts`` more start from
    Haar-random unitaries drawn from ``numpy.random.default_rng(opts.seed)``.
    The run with the largest criterion wins, earlier runs winning ties within
    ``1e-14`` (relative, once the criterion exceeds one).

    Parameters
    ----------
    mset : MatrixSet or array_like, shape (K, m, m)
    opts : JadOptions, optional
    record : bool
        Keep the criterion after every visited plane of the winning run in
        ``JadResult.history``.

    Returns
    -------
    JadResult
    """
    mset = _as_set(mset)
    opts = opts or JadOptions()
    rng = np.random.default_rng(opts.seed)
    m = mset.dim
    starts = [np.eye(m, dtype=complex)]
    starts += [haar_unitary(m, rng) for _ in range(opts.restarts)]

    best = None
    objectives = []
    for index, u0 in enumerate(starts):
        u, mats, sweeps, rotations, converged, history = _run(mset, u0, opts, record)
        obj = _diag_objective(mats, mset.weights)
        objectives.append(obj)
        if best is None or obj > best[0] + TIE_TOL * max(1.0, abs(best[0])):
            best = (obj, index, u, mats, sweeps, rotations, converged, history)

    obj, index, u, mats, sweeps, rotations, converged, history = best
    return JadResult(
        unitary=u,
        joint_diagonals=np.diagonal(mats, axis1=1, axis2=2).copy(),
        objective=obj,
        sweeps_used=sweeps,
        rotations_used=rotations,
        converged=converged,
        restart_index=index,
        restart_objectives=objectives,
        history=history,
    )


def rotation_work(m: int, n_matrices: int) -> tuple[int, int]:
    """Planes per sweep and matrix updates per sweep.

    For the ``n**2`` unreduced blocks of an ``m x n`` state the second number
    is ``m(m-1)n^2/2``.
    """
    planes = m * (m - 1) // 2
    return planes, planes * n_matrices
