"""Exit criteria of the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see ``conftest.py``), whatever the verbosity.
"""

import numpy as np
import pytest

from skewcorr.jad import JadOptions, MatrixSet, jad
from skewcorr.linalg import DensityMatrix
from skewcorr.measure import fisher_per_phase, q_general, q_pure, q_qubit_qudit
from skewcorr.oracle import (
    PLATEAU,
    analytic_isotropic,
    analytic_ppt,
    analytic_werner,
    locate_plateau_onset,
)
from skewcorr.states import isotropic, ppt_family, random_unitary, werner
from skewcorr.validation import (
    contractivity_suite,
    invariance_suite,
    pure_cases,
    qubit_cases,
    sandwich_suite,
    zero_suite,
)

SEED = 7
RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})"
    print(RESULTS[number])
    assert ok, RESULTS[number]


@pytest.fixture(scope="module")
def family_runs():
    """q_general on every grid point of the three analytic families."""
    runs = {"werner": [], "isotropic": [], "ppt": []}
    for m in range(2, 11):
        for x in np.linspace(-1, 1, 101):
            rho = werner(m, x)
            runs["werner"].append((m, x, rho, q_general(rho)))
        for x in np.linspace(0, 1, 101):
            rho = isotropic(m, x)
            runs["isotropic"].append((m, x, rho, q_general(rho)))
    for a in np.linspace(2, 5, 301):
        rho = ppt_family(a)
        runs["ppt"].append((3, a, rho, q_general(rho)))
    return runs


@pytest.fixture(scope="module")
def pure_runs():
    out = []
    for psi, m, n in pure_cases(SEED, 100):
        rho = DensityMatrix(np.outer(psi, psi.conj()), m, n)
        out.append((rho, q_general(rho), q_pure(psi, m, n)))
    return out


@pytest.fixture(scope="module")
def qubit_runs():
    return [(rho, q_qubit_qudit(rho), q_general(rho)) for rho in qubit_cases(SEED, 100)]


def test_criterion_01_werner(family_runs):
    gaps = [abs(res.q - analytic_werner(m, x)) for m, x, _, res in family_runs["werner"]]
    zeros = [q_general(werner(m, 1 / m)).q for m in range(2, 11)]
    ok = max(gaps) < 1e-6 and max(zeros) < 1e-9
    record(1, "Werner m=2..10 vs closed form", ok,
           f"max gap {max(gaps):.2e} < 1e-6, max q(x=1/m) {max(zeros):.2e} < 1e-9")


def test_criterion_02_isotropic(family_runs):
    gaps = [abs(res.q - analytic_isotropic(m, x)) for m, x, _, res in family_runs["isotropic"]]
    zeros = [q_general(isotropic(m, 1 / m**2)).q for m in range(2, 11)]
    ends = [abs(q_general(isotropic(m, 1.0)).q - (m - 1) / m) for m in range(2, 11)]
    ok = max(gaps) < 1e-6 and max(zeros) < 1e-9 and max(ends) < 1e-9
    record(2, "isotropic m=2..10 vs closed form", ok,
           f"max gap {max(gaps):.2e}, max q(1/m^2) {max(zeros):.2e}, max |q(1)-(m-1)/m| {max(ends):.2e}")


def test_criterion_03_ppt(family_runs):
    runs = family_runs["ppt"]
    alphas = np.array([a for _, a, _, _ in runs])
    qs = np.array([res.q for *_, res in runs])
    gap = max(abs(q - analytic_ppt(a)) for a, q in zip(alphas, qs))
    onset = locate_plateau_onset(lambda a: q_general(ppt_family(a)).q, alphas, qs)
    plateau = np.max(np.abs(qs[alphas >= 3.2] - PLATEAU))
    ok = gap < 1e-6 and abs(onset - 3.066885) < 1e-3 and plateau < 1e-8
    record(3, "PPT family alpha in [2,5]", ok,
           f"max gap {gap:.2e}, kink at {onset:.6f}, plateau dev {plateau:.2e}")


def test_criterion_04_pure(pure_runs):
    gaps = [abs(gen.q - exact.q) for _, gen, exact in pure_runs]
    record(4, "pure states up to 4x4, JAD vs 1 - Tr rho_A^2", max(gaps) < 1e-8,
           f"{len(gaps)} states, max gap {max(gaps):.2e} < 1e-8")


def test_criterion_05_qubit(qubit_runs):
    gaps = [abs(closed.q - gen.q) for _, closed, gen in qubit_runs]
    record(5, "qubit-qudit closed form vs JAD", max(gaps) < 1e-8,
           f"{len(gaps)} states, max gap {max(gaps):.2e} < 1e-8")


def test_criterion_06_zero_characterization():
    rep = zero_suite(SEED, 50)
    record(6, "q = 0 exactly on classical-quantum states", rep.ok,
           f"{rep.passed}/{rep.total} cases")


def test_criterion_07_properties():
    inv = invariance_suite(SEED, 50)
    con = contractivity_suite(SEED, 50)
    record(7, "local-unitary invariance and CPTP-on-B contractivity", inv.ok and con.ok,
           f"invariance worst {inv.worst:.2e}, contractivity worst {con.worst:.2e}, tol 1e-8")


def test_criterion_08_oracle_sandwich():
    rep = sandwich_suite(SEED, 30)
    record(8, "brute-force oracle sandwich on mn <= 9", rep.ok,
           f"{rep.passed}/{rep.total} cases, worst violation {rep.worst:.2e}")


def test_criterion_09_metrology(family_runs, pure_runs, qubit_runs):
    results = [(rho, res) for runs in family_runs.values() for *_, rho, res in runs]
    results += [(rho, r) for rho, *rs in pure_runs for r in rs]
    results += [(rho, r) for rho, *rs in qubit_runs for r in rs]
    gaps = [abs(np.sum(fisher_per_phase(rho, r.optimal_basis)) - 2 * r.q) for rho, r in results]
    record(9, "sum of per-phase Fisher information equals 2q", max(gaps) < 1e-9,
           f"{len(gaps)} results, max gap {max(gaps):.2e} < 1e-9")


def _random_sets():
    rng = np.random.default_rng(SEED)
    for k, m in [(3, 3), (6, 4), (10, 5), (4, 6)]:
        yield MatrixSet(rng.standard_normal((k, m, m)) + 1j * rng.standard_normal((k, m, m)))


def _commuting_sets():
    rng = np.random.default_rng(SEED + 1)
    for i, (k, m) in enumerate([(3, 3), (5, 4), (8, 6)]):
        u = random_unitary(m, i)
        yield MatrixSet([u @ np.diag(rng.standard_normal(m)) @ u.conj().T for _ in range(k)])


def test_criterion_10_jad_unit_suite():
    worst_drop = worst_norm = worst_off = 0.0
    deterministic = True
    for mset in _random_sets():
        res = jad(mset, JadOptions(seed=SEED), record=True)
        worst_drop = max(worst_drop, -np.min(np.diff(res.history)))
        rotated = res.unitary @ mset.matrices @ res.unitary.conj().T
        norms = np.linalg.norm(rotated, axis=(1, 2)) - np.linalg.norm(mset.matrices, axis=(1, 2))
        worst_norm = max(worst_norm, np.max(np.abs(norms)))
        again = jad(mset, JadOptions(seed=SEED), record=True)
        deterministic &= np.array_equal(res.unitary, again.unitary) and res.history == again.history
    for mset in _commuting_sets():
        res = jad(mset, JadOptions(seed=SEED))
        rotated = res.unitary @ mset.matrices @ res.unitary.conj().T
        mask = ~np.eye(mset.dim, dtype=bool)
        worst_off = max(worst_off, np.sum(np.abs(rotated[:, mask]) ** 2) / mset.total_mass())
    ok = worst_drop <= 1e-13 and worst_norm <= 1e-10 and worst_off < 1e-18 and deterministic
    record(10, "JAD monotonicity, norm conservation, exactness, determinism", ok,
           f"drop {worst_drop:.1e} <= 1e-13, norm {worst_norm:.1e} <= 1e-10, "
           f"off-diag {worst_off:.1e} < 1e-18, bit-identical {deterministic}")
