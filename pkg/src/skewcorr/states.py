"""Generators for the state families used throughout the package.

All outputs are :class:`~skewcorr.linalg.DensityMatrix` instances (or
normalized state vectors) in the ``a * n + b`` composite ordering. Random
generators draw from ``numpy.random.default_rng(seed)`` and are bit-stable
for a fixed seed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .linalg import DensityMatrix, haar_unitary, pure_density

FAMILIES = (
    "werner",
    "isotropic",
    "ppt",
    "max_entangled",
    "pure_schmidt",
    "classical_quantum",
    "random_mixed",
)


def _check_range(name, value, lo, hi):
    if not (lo <= value <= hi):
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


def swap_operator(m: int) -> np.ndarray:
    """``V = sum_kl |kl><lk|`` on ``m x m``."""
    v = np.zeros((m * m, m * m))
    for k in range(m):
        for l in range(m):
            v[k * m + l, l * m + k] = 1.0
    return v


def max_entangled(m: int) -> np.ndarray:
    """``(1/sqrt(m)) sum_k |kk>`` as a vector of length ``m**2``."""
    psi = np.zeros(m * m, dtype=complex)
    psi[np.arange(m) * (m + 1)] = 1.0 / np.sqrt(m)
    return psi


def pure_from_schmidt(mu) -> np.ndarray:
    """``sum_i mu_i |ii>`` on ``r x r`` with ``r = len(mu)``."""
    mu = np.asarray(mu, dtype=float).ravel()
    if mu.size == 0 or np.any(mu < 0):
        raise ValueError("Schmidt coefficients must be non-negative")
    if abs(np.sum(mu**2) - 1.0) > 1e-10:
        raise ValueError("Schmidt coefficients must satisfy sum(mu**2) == 1")
    r = mu.size
    psi = np.zeros(r * r, dtype=complex)
    psi[np.arange(r) * (r + 1)] = mu
    return psi


def werner(m: int, x: float) -> DensityMatrix:
    """Werner state with swap expectation ``Tr(rho V) = x``."""
    if m < 2:
        raise ValueError("Werner states need m >= 2")
    _check_range("x", x, -1.0, 1.0)
    denom = m**3 - m
    mat = (m - x) / denom * np.eye(m * m) + (m * x - 1) / denom * swap_operator(m)
    return DensityMatrix(mat, m, m)


def isotropic(m: int, x: float) -> DensityMatrix:
    """Isotropic state with fidelity ``<Phi|rho|Phi> = x``."""
    if m < 2:
        raise ValueError("isotropic states need m >= 2")
    _check_range("x", x, 0.0, 1.0)
    phi = max_entangled(m)
    denom = m * m - 1
    mat = (1 - x) / denom * np.eye(m * m) + (m * m * x - 1) / denom * np.outer(phi, phi.conj())
    return DensityMatrix(mat, m, m)


def ppt_family(alpha: float) -> DensityMatrix:
    """Horodecki-type ``3 x 3`` family, ``alpha`` in ``[2, 5]``.

    Separable for ``alpha <= 3``, bound entangled on ``(3, 4]`` and NPT
    entangled on ``(4, 5]``.
    """
    _check_range("alpha", alpha, 2.0, 5.0)
    phi = max_entangled(3)
    plus = np.zeros((9, 9))
    minus = np.zeros((9, 9))
    for k in range(3):
        i = k * 3 + (k + 1) % 3
        plus[i, i] = 1.0 / 3
        j = ((k + 1) % 3) * 3 + k
        minus[j, j] = 1.0 / 3
    mat = 2 / 7 * np.outer(phi, phi.conj()) + alpha / 7 * plus + (5 - alpha) / 7 * minus
    return DensityMatrix(mat, 3, 3)


def ppt_regime(alpha: float) -> str:
    _check_range("alpha", alpha, 2.0, 5.0)
    if alpha <= 3:
        return "separable"
    return "bound_entangled" if alpha <= 4 else "free_entangled"


def classical_quantum(weights, basis, b_states) -> DensityMatrix:
    """``sum_k p_k |e_k><e_k| (x) sigma_k``.

    Parameters
    ----------
    weights : array_like, shape (r,)
        Probabilities.
    basis : array_like, shape (m, r)
        Orthonormal columns ``|e_k>`` of subsystem A; ``r <= m``.
    b_states : sequence of array_like, each (n, n)
        Density matrices of subsystem B.
    """
    p = np.asarray(weights, dtype=float).ravel()
    e = np.asarray(basis, dtype=complex)
    if e.ndim == 1:
        e = e[:, None]
    if np.any(p < 0) or abs(p.sum() - 1) > 1e-10:
        raise ValueError("weights must form a probability vector")
    if e.shape[1] != p.size or len(b_states) != p.size:
        raise ValueError("need one basis vector and one B-state per weight")
    if np.linalg.norm(e.conj().T @ e - np.eye(p.size)) > 1e-10:
        raise ValueError("basis vectors are not orthonormal")
    m = e.shape[0]
    sigmas = [np.asarray(s, dtype=complex) for s in b_states]
    n = sigmas[0].shape[0]
    for s in sigmas:
        DensityMatrix(s, 1, n)
    mat = sum(pk * np.kron(np.outer(ek, ek.conj()), s) for pk, ek, s in zip(p, e.T, sigmas))
    return DensityMatrix(mat, m, n)


def _ginibre(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random ``d x d`` unitary."""
    return haar_unitary(d, np.random.default_rng(seed))


def random_mixed(m: int, n: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """Ginibre-induced random state ``G G^dag / Tr(G G^dag)`` of given rank."""
    d = m * n
    rank = d if rank is None else rank
    if not (1 <= rank <= d):
        raise ValueError(f"rank must be in [1, {d}]")
    g = _ginibre(np.random.default_rng(seed), d, rank)
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real, m, n)


def random_pure(m: int, n: int, seed=None) -> np.ndarray:
    """Haar-random normalized vector of length ``m * n``."""
    psi = _ginibre(np.random.default_rng(seed), m * n, 1).ravel()
    return psi / np.linalg.norm(psi)


def random_classical_quantum(m: int, n: int, seed=None, rotate: bool = True) -> DensityMatrix:
    """Random CQ state, in a Haar-random basis of A when ``rotate``."""
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(m))
    basis = haar_unitary(m, rng) if rotate else np.eye(m)
    sigmas = []
    for _ in range(m):
        g = _ginibre(rng, n, n)
        s = g @ g.conj().T
        sigmas.append(s / np.trace(s).real)
    return classical_quantum(p, basis, sigmas)


@dataclass
class FamilySpec:
    """Serializable description of one state.

    ``param`` is ``x`` for Werner/isotropic and ``alpha`` for the PPT family;
    ``extras`` carries Schmidt coefficients for ``pure_schmidt`` and the rank
    for ``random_mixed``.
    """

    family: str
    m: int = 2
    n: int | None = None
    param: float | None = None
    extras: list = field(default_factory=list)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        return cls(**data)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"name:key=val,key=val"``.

        Keys: ``m``, ``n``, ``x`` / ``alpha`` / ``param``, ``seed``, ``rank``
        and ``mu`` (Schmidt coefficients separated by ``;``).
        """
        name, _, rest = text.strip().partition(":")
        kwargs = {"family": name.strip()}
        extras = []
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, sep, val = item.partition("=")
            if not sep:
                raise ValueError(f"malformed family option {item!r}")
            key = key.strip()
            if key in ("m", "n", "seed"):
                kwargs[key] = int(val)
            elif key in ("x", "alpha", "param"):
                kwargs["param"] = float(val)
            elif key == "rank":
                extras = [int(val)]
            elif key == "mu":
                extras = [float(v) for v in val.split(";")]
            else:
                raise ValueError(f"unknown family option {key!r}")
        kwargs["extras"] = extras
        return cls(**kwargs)

    def build(self):
        """Return the state as a DensityMatrix (pure families as projectors)."""
        f = self.family
        if f == "werner":
            return werner(self.m, self._param())
        if f == "isotropic":
            return isotropic(self.m, self._param())
        if f == "ppt":
            return ppt_family(self._param())
        if f == "max_entangled":
            return pure_density(max_entangled(self.m), self.m, self.m)
        if f == "pure_schmidt":
            r = len(self.extras)
            return pure_density(pure_from_schmidt(self.extras), r, r)
        n = self.n if self.n is not None else self.m
        if f == "classical_quantum":
            return random_classical_quantum(self.m, n, self.seed)
        rank = int(self.extras[0]) if self.extras else None
        return random_mixed(self.m, n, rank, self.seed)

    def _param(self) -> float:
        if self.param is None:
            raise ValueError(f"family {self.family!r} needs a parameter")
        return float(self.param)
