"""Skew-information quantum correlation of bipartite states.

For an ``m x n`` state the correlation is

    Q(rho) = min_S sum_k I(rho, |k><k| (x) 1_n),
    I(rho, O) = -1/2 Tr [sqrt(rho), O]^2,

minimized over orthonormal bases ``S = {|k>}`` of subsystem A. Writing
``A_ij`` for the ``m x m`` blocks of ``sqrt(rho)`` over a basis of B, the
minimum equals ``1 - max_U sum_ij sum_k |(U A_ij U^dag)_kk|^2``, which is a
joint diagonalization problem handled by :mod:`skewcorr.jad`. Qubit-qudit and
pure states have closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jad import JadOptions, JadResult, block_set, jad
from .linalg import (
    DensityMatrix,
    dagger,
    extract_blocks,
    hermitian_eig,
    psd_sqrt,
)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
PURITY_THRESHOLD = 1 - 1e-12
CLIP_TOL = 1e-12
METHODS = ("general_jad", "qubit_qudit", "pure")


class MethodError(ValueError):
    """Requested evaluation path does not apply to the state's dimensions."""


@dataclass(eq=False)
class CorrelationResult:
    """Value of the correlation together with the basis attaining it.

    ``optimal_basis[:, k]`` is the k-th vector ``|k>`` of subsystem A.
    """

    q: float
    method: str
    optimal_basis: np.ndarray
    diagnostics: JadResult | None = None


def _clip(q: float) -> float:
    if q < -CLIP_TOL or q > 1 + CLIP_TOL:
        raise ArithmeticError(f"correlation {q!r} outside [0, 1]")
    return min(1.0, max(0.0, q))


def local_projectors(basis, n: int) -> np.ndarray:
    """Stack of ``|k><k| (x) 1_n`` for the columns of ``basis``."""
    basis = np.asarray(basis, dtype=complex)
    eye = np.eye(n)
    return np.stack([np.kron(np.outer(v, v.conj()), eye) for v in basis.T])


def _commutator_norms(root: np.ndarray, ops: np.ndarray) -> np.ndarray:
    comm = root @ ops - ops @ root
    return np.sum(np.abs(comm) ** 2, axis=(-2, -1))


def skew_information(rho: DensityMatrix, observable) -> float:
    """Wigner-Yanase skew information ``-1/2 Tr [sqrt(rho), O]^2``.

    For Hermitian ``O`` the commutator is anti-Hermitian, so this equals
    ``||[sqrt(rho), O]||_F^2 / 2``, which is how it is evaluated.
    """
    obs = np.asarray(observable, dtype=complex)
    if obs.shape != rho.mat.shape:
        raise ValueError("observable and state differ in size")
    if np.linalg.norm(obs - dagger(obs)) > 1e-10 * max(1.0, np.linalg.norm(obs)):
        raise ValueError("observable is not Hermitian")
    return 0.5 * float(_commutator_norms(psd_sqrt(rho), obs))


def _check_basis(basis, m: int) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (m, m):
        raise ValueError(f"basis must be an {m}x{m} matrix of column vectors")
    if np.linalg.norm(dagger(basis) @ basis - np.eye(m)) > 1e-10:
        raise ValueError("basis is not orthonormal")
    return basis


def fisher_per_phase(rho: DensityMatrix, basis) -> np.ndarray:
    """Quantum Fisher information of each phase imprinted by ``|k><k| (x) 1``.

    Returns ``F_k = -Tr [sqrt(rho), K_k]^2``, twice the skew information of
    each projector. Summed over an optimal basis this is ``2 Q``, which bounds
    ``sum_k 1 / (N var(phi_k))`` through the Cramer-Rao inequality.
    """
    basis = _check_basis(basis, rho.m)
    ops = local_projectors(basis, rho.n)
    return _commutator_norms(psd_sqrt(rho), ops)


def correlation_at_basis(rho: DensityMatrix, basis) -> float:
    """``sum_k I(rho, |k><k| (x) 1)`` evaluated straight from commutators."""
    return 0.5 * float(np.sum(fisher_per_phase(rho, basis)))


def q_general(rho: DensityMatrix, opts: JadOptions | None = None) -> CorrelationResult:
    """Correlation by joint diagonalization of the blocks of ``sqrt(rho)``."""
    blocks = extract_blocks(psd_sqrt(rho), rho.m, rho.n)
    res = jad(block_set(blocks), opts)
    basis = dagger(res.unitary)
    return CorrelationResult(_clip(1.0 - res.objective), "general_jad", basis, res)


def _require_qubit(rho: DensityMatrix):
    if rho.m != 2:
        raise MethodError(f"qubit-qudit path needs m == 2, got m = {rho.m}")


def correlation_matrix_T(rho: DensityMatrix) -> np.ndarray:
    """Real symmetric ``3 x 3`` matrix ``Tr sqrt(rho) s_i sqrt(rho) s_j``.

    ``s_i = sigma_i (x) 1_n`` with Pauli order x, y, z. The exact trace is
    Hermitian in ``(i, j)``; its antisymmetric imaginary part never enters
    ``n^T T n`` for real ``n`` and is dropped.
    """
    _require_qubit(rho)
    root = psd_sqrt(rho)
    eye = np.eye(rho.n)
    sig = [root @ np.kron(p, eye) for p in PAULI]
    t = np.array([[np.trace(a @ b).real for b in sig] for a in sig])
    return 0.5 * (t + t.T)


def q_qubit_qudit(rho: DensityMatrix) -> CorrelationResult:
    """Closed form ``(1 - v_max) / 2`` for ``2 x n`` states."""
    t = correlation_matrix_T(rho)
    evals, evecs = np.linalg.eigh(t)
    top = np.flatnonzero(evals >= evals[-1] - 1e-12)[0]
    direction = evecs[:, top]
    bloch = sum(c * p for c, p in zip(direction, PAULI))
    # eigh orders -1 before +1; the +1 eigenvector is the projector |k0>
    _, vecs = hermitian_eig(bloch)
    basis = vecs[:, ::-1]
    return CorrelationResult(_clip(0.5 * (1.0 - evals[-1])), "qubit_qudit", basis)


def q_pure(psi, m: int, n: int) -> CorrelationResult:
    """Closed form ``1 - Tr rho_A^2`` for a pure state vector.

    The optimal basis is the Schmidt basis of A (eigenvectors of the reduced
    state), ordered by decreasing Schmidt weight.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != m * n:
        raise ValueError(f"state vector of length {psi.size} does not match m*n = {m * n}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("state vector is not normalized")
    coeff = psi.reshape(m, n)
    reduced = coeff @ dagger(coeff)
    evals, evecs = hermitian_eig(reduced)
    purity = float(np.sum(evals**2))
    return CorrelationResult(_clip(1.0 - purity), "pure", evecs[:, ::-1])


def dominant_vector(rho: DensityMatrix) -> np.ndarray:
    evals, evecs = np.linalg.eigh(rho.mat)
    return evecs[:, -1]


def quantum_correlation(
    rho: DensityMatrix, opts: JadOptions | None = None, method: str = "auto"
) -> CorrelationResult:
    """Compute the correlation, choosing the cheapest exact path.

    Parameters
    ----------
    rho : DensityMatrix
    opts : JadOptions, optional
        Used by the joint-diagonalization path.
    method : {"auto", "jad", "qubit", "pure"}
        ``auto`` takes the pure-state formula when ``Tr rho^2 > 1 - 1e-12``,
        the qubit-qudit formula when ``m == 2`` and joint diagonalization
        otherwise.

    Raises
    ------
    MethodError
        If a forced path does not apply to ``rho``.
    """
    if method == "auto":
        if rho.purity() > PURITY_THRESHOLD:
            method = "pure"
        elif rho.m == 2:
            method = "qubit"
        else:
            method = "jad"
    if method == "pure":
        if rho.purity() <= PURITY_THRESHOLD:
            raise MethodError("pure-state path needs a pure state")
        return q_pure(dominant_vector(rho), rho.m, rho.n)
    if method == "qubit":
        return q_qubit_qudit(rho)
    if method == "jad":
        return q_general(rho, opts)
    raise MethodError(f"unknown method {method!r}")


def is_classical_quantum(
    rho: DensityMatrix, tol: float = 1e-9, opts: JadOptions | None = None
) -> bool:
    """True when ``rho`` is classical on A, i.e. its correlation is below ``tol``."""
    return quantum_correlation(rho, opts).q < tol
