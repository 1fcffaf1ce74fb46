"""Seeded consistency suites shared by the CLI and the test-suite.

Each suite runs a batch of generated cases and returns a :class:`SuiteReport`
with the number of passing cases and the worst residual seen, where a
residual is the amount by which a case overshoots (positive) or undershoots
(negative) its tolerance-free target.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import apply_on_B, local_unitary, random_channel
from .jad import JadOptions
from .linalg import DensityMatrix
from .measure import (
    correlation_at_basis,
    fisher_per_phase,
    q_general,
    q_pure,
    q_qubit_qudit,
)
from .oracle import OracleBudget, brute_force_q
from .states import random_classical_quantum, random_mixed, random_pure, random_unitary

PROPERTY_DIMS = ((2, 2), (2, 3), (3, 3))


@dataclass
class SuiteReport:
    name: str
    tolerance: float
    residuals: list = field(default_factory=list)
    passed: int = 0

    @property
    def total(self) -> int:
        return len(self.residuals)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def worst(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    def add(self, residual: float, passed: bool):
        self.residuals.append(float(residual))
        self.passed += bool(passed)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} {self.name}: {self.passed}/{self.total} "
            f"worst={self.worst:.3e} tol={self.tolerance:.0e}"
        )


def _case_seeds(seed: int, count: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1)[0]) for s in ss.spawn(count)]


def _random_state(m, n, seed) -> DensityMatrix:
    rng = np.random.default_rng(seed)
    rank = int(rng.integers(1, m * n + 1))
    return random_mixed(m, n, rank, seed)


def invariance_suite(seed=7, cases=50, opts=None, extra=()) -> SuiteReport:
    """``|q(rho) - q((U_A x U_B) rho (U_A x U_B)^dag)| < 1e-8``."""
    rep = SuiteReport("local-unitary invariance", 1e-8)
    states = [(s, extra_seed) for extra_seed, s in enumerate(extra)]
    for i, s in enumerate(_case_seeds(seed, cases)):
        m, n = PROPERTY_DIMS[i % len(PROPERTY_DIMS)]
        states.append((_random_state(m, n, s), s))
    for rho, s in states:
        moved = local_unitary(rho, random_unitary(rho.m, s + 1), random_unitary(rho.n, s + 2))
        gap = abs(q_general(rho, opts).q - q_general(moved, opts).q)
        rep.add(gap, gap < rep.tolerance)
    return rep


def contractivity_suite(seed=7, cases=50, opts=None, extra=()) -> SuiteReport:
    """``q((1 x Phi) rho) <= q(rho) + 1e-8`` for random channels on B."""
    rep = SuiteReport("CPTP-on-B contractivity", 1e-8)
    states = [(s, k) for k, s in enumerate(extra)]
    for i, s in enumerate(_case_seeds(seed + 1, cases)):
        m, n = PROPERTY_DIMS[i % len(PROPERTY_DIMS)]
        states.append((_random_state(m, n, s), s))
    for rho, s in states:
        kraus = 1 + s % 3
        out = apply_on_B(rho, random_channel(rho.n, kraus, s + 3))
        excess = q_general(out, opts).q - q_general(rho, opts).q
        rep.add(excess, excess <= rep.tolerance)
    return rep


def pure_cases(seed=7, cases=100) -> list:
    """``(psi, m, n)`` triples with ``2 <= m, n <= 4``."""
    out = []
    for s in _case_seeds(seed + 2, cases):
        rng = np.random.default_rng(s)
        m, n = (int(v) for v in rng.integers(2, 5, size=2))
        out.append((random_pure(m, n, s), m, n))
    return out


def qubit_cases(seed=7, cases=100) -> list:
    """Random mixed states alternating between ``2 x 2`` and ``2 x 3``."""
    return [_random_state(2, 2 + i % 2, s) for i, s in enumerate(_case_seeds(seed + 3, cases))]


def pure_suite(seed=7, cases=100, opts=None) -> SuiteReport:
    """Joint diagonalization reproduces ``1 - Tr rho_A^2`` on pure states."""
    rep = SuiteReport("pure-state reduction", 1e-8)
    for psi, m, n in pure_cases(seed, cases):
        rho = DensityMatrix(np.outer(psi, psi.conj()), m, n)
        gap = abs(q_general(rho, opts).q - q_pure(psi, m, n).q)
        rep.add(gap, gap < rep.tolerance)
    return rep


def qubit_suite(seed=7, cases=100, opts=None) -> SuiteReport:
    """Closed-form qubit-qudit value agrees with joint diagonalization."""
    rep = SuiteReport("qubit-qudit cross-path", 1e-8)
    for rho in qubit_cases(seed, cases):
        gap = abs(q_qubit_qudit(rho).q - q_general(rho, opts).q)
        rep.add(gap, gap < rep.tolerance)
    return rep


def zero_suite(seed=7, cases=50, opts=None) -> SuiteReport:
    """CQ states give ``q < 1e-9``; entangled pure states give ``q > 1e-4``."""
    rep = SuiteReport("zero iff classical-quantum", 1e-9)
    for i, s in enumerate(_case_seeds(seed + 4, cases)):
        m, n = PROPERTY_DIMS[i % len(PROPERTY_DIMS)]
        rho = random_classical_quantum(m, n, s, rotate=i % 5 != 0)
        q = q_general(rho, opts).q
        rep.add(q, q < 1e-9)
    for i, s in enumerate(_case_seeds(seed + 5, cases)):
        m, n = PROPERTY_DIMS[i % len(PROPERTY_DIMS)]
        psi = random_pure(m, n, s)
        q = q_general(DensityMatrix(np.outer(psi, psi.conj()), m, n), opts).q
        # report as an overshoot of the floor so that "worst" stays meaningful
        rep.add(1e-4 - q, q > 1e-4)
    return rep


def certificate_suite(states, opts=None) -> SuiteReport:
    """Basis certificate and the Fisher-information identity ``sum F = 2 q``."""
    rep = SuiteReport("basis certificate / metrology identity", 1e-9)
    for rho in states:
        res = q_general(rho, opts)
        gap = max(
            abs(correlation_at_basis(rho, res.optimal_basis) - res.q),
            abs(float(np.sum(fisher_per_phase(rho, res.optimal_basis))) - 2 * res.q),
        )
        rep.add(gap, gap < rep.tolerance)
    return rep


def sandwich_suite(seed=7, cases=30, opts=None, budget=None, extra=()) -> SuiteReport:
    """``q - 1e-6 <= brute_force_q <= q + 1e-4`` for states with ``mn <= 9``.

    The residual reported is the larger of the two one-sided violations.
    """
    rep = SuiteReport("oracle sandwich", 1e-6)
    dims = ((2, 2), (2, 3), (3, 2), (2, 4), (3, 3))
    states = [rho for rho in extra if rho.m * rho.n <= 12]
    for i, s in enumerate(_case_seeds(seed + 6, cases)):
        m, n = dims[i % len(dims)]
        states.append(_random_state(m, n, s))
    budget = budget or OracleBudget(seed=seed)
    for rho in states:
        q = q_general(rho, opts).q
        brute = brute_force_q(rho, budget)
        below = (q - 1e-6) - brute
        above = brute - (q + 1e-4)
        rep.add(max(below, above), below <= 0 and above <= 0)
    return rep


def run_suites(which: str, seed: int = 7, cases: int = 50, opts: JadOptions | None = None,
               extra=()) -> list[SuiteReport]:
    """Run ``"properties"``, ``"oracle"`` or ``"all"``."""
    reports = []
    if which in ("properties", "all"):
        reports += [
            invariance_suite(seed, cases, opts, extra),
            contractivity_suite(seed, cases, opts, extra),
            pure_suite(seed, cases, opts),
            qubit_suite(seed, cases, opts),
            zero_suite(seed, cases, opts),
            certificate_suite(
                [_random_state(*PROPERTY_DIMS[i % 3], s)
                 for i, s in enumerate(_case_seeds(seed + 7, cases))],
                opts,
            ),
        ]
    if which in ("oracle", "all"):
        reports.append(sandwich_suite(seed, min(cases, 30), opts, extra=extra))
    return reports
