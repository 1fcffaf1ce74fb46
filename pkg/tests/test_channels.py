import numpy as np
import pytest
from numpy.testing import assert_allclose

from skewcorr.channels import (
    KrausChannel,
    apply_on_B,
    completeness_residual,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
    local_unitary,
    random_channel,
    unitary_channel,
)
from skewcorr.linalg import partial_trace_B
from skewcorr.measure import q_general
from skewcorr.states import random_mixed, random_unitary, werner
from skewcorr.oracle import analytic_werner


def test_identity_channel():
    rho = random_mixed(2, 3, seed=1)
    assert_allclose(apply_on_B(rho, identity_channel(3)).mat, rho.mat, atol=1e-15)


def test_full_depolarization():
    rho = random_mixed(3, 2, seed=2)
    out = apply_on_B(rho, depolarizing_channel(2))
    assert_allclose(out.mat, np.kron(partial_trace_B(rho), np.eye(2) / 2), atol=1e-14)
    assert q_general(out).q < 1e-12


def test_unitary_channel_keeps_q():
    rho = random_mixed(3, 3, seed=3)
    out = apply_on_B(rho, unitary_channel(random_unitary(3, 4)))
    assert abs(q_general(out).q - q_general(rho).q) < 1e-8


def test_matches_explicit_sum():
    rho = random_mixed(2, 2, seed=5)
    ch = random_channel(2, 3, seed=6)
    want = sum(np.kron(np.eye(2), e) @ rho.mat @ np.kron(np.eye(2), e).conj().T for e in ch.kraus)
    assert_allclose(apply_on_B(rho, ch).mat, want, atol=1e-14)


def test_random_channel_completeness():
    assert random_channel(3, 1, seed=0).kraus.shape == (1, 3, 3)
    u = random_channel(3, 1, seed=0).kraus[0]
    assert np.linalg.norm(u.conj().T @ u - np.eye(3)) < 1e-12
    for seed in range(1, 101):
        assert completeness_residual(random_channel(3, 1 + seed % 4, seed).kraus) < 1e-12


def test_dephasing_regression():
    rho = random_mixed(2, 3, seed=7)
    out = apply_on_B(rho, dephasing_channel(3))
    assert q_general(out).q <= q_general(rho).q + 1e-8
    assert_allclose(np.trace(out.mat), 1, atol=1e-12)


def test_bad_channel():
    with pytest.raises(ValueError):
        KrausChannel(np.ones((1, 2, 2)))
    with pytest.raises(ValueError):
        apply_on_B(random_mixed(2, 3, seed=0), identity_channel(2))
    with pytest.raises(ValueError):
        random_channel(2, 0)


def test_local_unitary_identity():
    rho = random_mixed(2, 3, seed=8)
    assert_allclose(local_unitary(rho, np.eye(2), np.eye(3)).mat, rho.mat, atol=1e-15)


def test_local_swap_of_A():
    rho = random_mixed(3, 2, seed=9)
    perm = np.eye(3)[[1, 0, 2]]
    assert abs(q_general(local_unitary(rho, perm, np.eye(2))).q - q_general(rho).q) < 1e-8


def test_werner_random_local_unitaries():
    rho = werner(3, 0.7)
    moved = local_unitary(rho, random_unitary(3, 1), random_unitary(3, 2))
    assert abs(q_general(moved).q - analytic_werner(3, 0.7)) < 1e-8


def test_local_unitary_rejects():
    with pytest.raises(ValueError):
        local_unitary(random_mixed(2, 2, seed=0), 2 * np.eye(2), np.eye(2))
