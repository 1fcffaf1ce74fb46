"""Local operations on bipartite states: Kraus channels on B, local unitaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, dagger, haar_unitary


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map on an ``n``-dimensional system, ``sum_i E_i^dag E_i = 1``."""

    kraus: np.ndarray

    def __post_init__(self):
        ks = np.asarray(self.kraus, dtype=complex)
        if ks.ndim == 2:
            ks = ks[None]
        if ks.ndim != 3 or ks.shape[1] != ks.shape[2]:
            raise ValueError("Kraus operators must be a stack of square matrices")
        resid = completeness_residual(ks)
        if resid > 1e-10:
            raise ValueError(f"Kraus operators are not trace preserving (residual {resid:.2e})")
        ks.setflags(write=False)
        object.__setattr__(self, "kraus", ks)

    @property
    def dim(self) -> int:
        return self.kraus.shape[1]


def completeness_residual(kraus) -> float:
    ks = np.asarray(kraus, dtype=complex)
    total = np.einsum("kji,kjl->il", ks.conj(), ks)
    return float(np.linalg.norm(total - np.eye(ks.shape[1])))


def apply_on_B(rho: DensityMatrix, channel: KrausChannel) -> DensityMatrix:
    """``sum_i (1 (x) E_i) rho (1 (x) E_i)^dag``."""
    if channel.dim != rho.n:
        raise ValueError(f"channel acts on dimension {channel.dim}, B has {rho.n}")
    m, n = rho.m, rho.n
    r = rho.mat.reshape(m, n, m, n)
    out = np.einsum("kij,ajbl,kml->aibm", channel.kraus, r, channel.kraus.conj())
    return DensityMatrix(out.reshape(m * n, m * n), m, n)


def random_channel(n: int, num_kraus: int, seed=None) -> KrausChannel:
    """Channel from the first ``n`` columns of a Haar unitary on ``n * num_kraus``.

    The columns form an isometry ``W``; cutting it into ``num_kraus`` row
    blocks gives Kraus operators with ``sum E^dag E = W^dag W = 1``.
    """
    if num_kraus < 1:
        raise ValueError("need at least one Kraus operator")
    w = haar_unitary(n * num_kraus, np.random.default_rng(seed))[:, :n]
    return KrausChannel(w.reshape(num_kraus, n, n))


def identity_channel(n: int) -> KrausChannel:
    return KrausChannel(np.eye(n)[None])


def unitary_channel(u) -> KrausChannel:
    return KrausChannel(np.asarray(u, dtype=complex)[None])


def depolarizing_channel(n: int) -> KrausChannel:
    """Complete depolarization ``sigma -> Tr(sigma) 1/n`` via ``|i><j| / sqrt(n)``."""
    ks = np.zeros((n * n, n, n))
    for i in range(n):
        for j in range(n):
            ks[i * n + j, i, j] = 1.0 / np.sqrt(n)
    return KrausChannel(ks)


def dephasing_channel(n: int) -> KrausChannel:
    """Projective dephasing in the computational basis, ``E_i = |i><i|``."""
    return KrausChannel(np.stack([np.diag(np.eye(n)[i]) for i in range(n)]))


def local_unitary(rho: DensityMatrix, u_a, u_b) -> DensityMatrix:
    """``(U_A (x) U_B) rho (U_A (x) U_B)^dag``."""
    u_a = np.asarray(u_a, dtype=complex)
    u_b = np.asarray(u_b, dtype=complex)
    for u, d, name in ((u_a, rho.m, "U_A"), (u_b, rho.n, "U_B")):
        if u.shape != (d, d):
            raise ValueError(f"{name} must be {d}x{d}")
        if np.linalg.norm(dagger(u) @ u - np.eye(d)) > 1e-8:
            raise ValueError(f"{name} is not unitary")
    u = np.kron(u_a, u_b)
    return DensityMatrix(u @ rho.mat @ dagger(u), rho.m, rho.n)
