"""Dense complex linear algebra for bipartite density matrices.

Composite indices follow the Kronecker ordering ``k = a * n + b`` for
``|a>_A |b>_B``, so ``kron(op_A, op_B)`` acts on a state with A as the major
index. Every other module relies on this single convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_CLAMP = 1e-12


class StateValidationError(ValueError):
    """Raised when a matrix is not an admissible density matrix."""


def _as_square(mat) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix has non-finite entries")
    return mat


def dagger(mat: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(mat, -1, -2))


def hermitian_residual(mat: np.ndarray) -> float:
    """Relative Frobenius distance of ``mat`` from its adjoint."""
    return float(np.linalg.norm(mat - dagger(mat)) / max(1.0, np.linalg.norm(mat)))


def hermitian_eig(mat) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as ``(M + M^dag) / 2`` before calling LAPACK.

    Parameters
    ----------
    mat : array_like, shape (d, d)
        Hermitian matrix.

    Returns
    -------
    evals : ndarray, shape (d,)
        Real eigenvalues in ascending order.
    evecs : ndarray, shape (d, d)
        Unitary matrix whose columns are the eigenvectors. Column phases are
        left as LAPACK returns them.
    """
    mat = _as_square(mat)
    if hermitian_residual(mat) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigh(0.5 * (mat + dagger(mat)))


def kron(a, b) -> np.ndarray:
    """Tensor product with ``out[i*rB + k, j*cB + l] = a[i, j] * b[k, l]``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size * b.size > 2**31:
        raise OverflowError("tensor product too large")
    return np.kron(a, b)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated state of an ``m x n`` bipartite system.

    Construction symmetrizes inputs that are Hermitian up to rounding noise,
    rejects matrices with eigenvalues below ``-1e-12`` and rejects traces
    further than ``1e-8`` from one (the trace is then normalized exactly).

    Parameters
    ----------
    mat : array_like, shape (m*n, m*n)
        The matrix, indexed with ``a * n + b``.
    m, n : int
        Dimensions of subsystems A and B.
    """

    mat: np.ndarray
    m: int
    n: int

    def __post_init__(self):
        m, n = int(self.m), int(self.n)
        if m < 1 or n < 1:
            raise ValueError("subsystem dimensions must be positive")
        try:
            mat = _as_square(self.mat)
        except ValueError as exc:
            raise StateValidationError(str(exc)) from exc
        if mat.shape[0] != m * n:
            raise StateValidationError(
                f"matrix of size {mat.shape[0]} does not match m*n = {m * n}"
            )
        if hermitian_residual(mat) > HERMITIAN_TOL:
            raise StateValidationError("matrix is not Hermitian")
        mat = 0.5 * (mat + dagger(mat))
        tr = np.trace(mat).real
        if abs(tr - 1.0) > 1e-8:
            raise StateValidationError(f"trace is {tr!r}, expected 1")
        mat = mat / tr
        evals = np.linalg.eigvalsh(mat)
        if evals[0] < -EIG_CLAMP:
            raise StateValidationError(
                f"matrix has negative eigenvalue {evals[0]:.3e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @property
    def dim(self) -> int:
        return self.m * self.n

    def purity(self) -> float:
        return float(np.real(np.vdot(self.mat, self.mat)))

    def __repr__(self):
        return f"DensityMatrix(m={self.m}, n={self.n})"


def pure_density(psi, m: int, n: int) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    return DensityMatrix(np.outer(psi, psi.conj()), m, n)


def psd_sqrt(rho: DensityMatrix) -> np.ndarray:
    """Positive square root of a density matrix.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero first. Positive
    eigenvalues below the eigensolver's noise floor ``d * eps * max(lambda)``
    are zeroed as well: their square roots (~1e-8) would otherwise leak into
    every quantity built from the root.
    """
    evals, evecs = np.linalg.eigh(rho.mat)
    if evals[0] < -EIG_CLAMP:
        raise StateValidationError(f"matrix has negative eigenvalue {evals[0]:.3e}")
    floor = evals.size * np.finfo(float).eps * max(evals[-1], 0.0)
    root = np.sqrt(np.where(evals > floor, evals, 0.0))
    out = (evecs * root) @ dagger(evecs)
    return 0.5 * (out + dagger(out))


def _as_matrix(rho) -> tuple[np.ndarray, int, int]:
    if isinstance(rho, DensityMatrix):
        return rho.mat, rho.m, rho.n
    raise TypeError("expected a DensityMatrix")


def partial_trace_B(rho: DensityMatrix) -> np.ndarray:
    """Reduced state on A, an ``m x m`` matrix."""
    mat, m, n = _as_matrix(rho)
    return np.einsum("aibi->ab", mat.reshape(m, n, m, n))


def partial_trace_A(rho: DensityMatrix) -> np.ndarray:
    """Reduced state on B, an ``n x n`` matrix."""
    mat, m, n = _as_matrix(rho)
    return np.einsum("aiaj->ij", mat.reshape(m, n, m, n))


def extract_blocks(root, m: int, n: int) -> np.ndarray:
    """Slice a bipartite operator into its ``m x m`` blocks over B.

    Parameters
    ----------
    root : array_like, shape (m*n, m*n)
        Usually the square root of the state.
    m, n : int
        Subsystem dimensions.

    Returns
    -------
    blocks : ndarray, shape (n, n, m, m)
        ``blocks[i, j][a, b] = root[a*n + i, b*n + j]``, i.e. the operator
        ``(1_m x <i|) root (1_m x |j>)``. For Hermitian ``root`` the pairing
        ``blocks[j, i] == blocks[i, j]^dag`` holds exactly.
    """
    root = np.asarray(root, dtype=complex)
    if root.shape != (m * n, m * n):
        raise ValueError(f"expected shape {(m * n, m * n)}, got {root.shape}")
    return root.reshape(m, n, m, n).transpose(1, 3, 0, 2).copy()


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``d x d`` unitary drawn from ``rng``.

    QR of a complex Ginibre matrix with the phases of ``diag(R)`` moved
    into ``Q`` (Mezzadri's fix), which makes the distribution exactly Haar.
    """
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.where(np.abs(diag) > 0, np.abs(diag), 1.0)
    return q * phases
