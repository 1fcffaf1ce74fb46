import numpy as np
import pytest

from skewcorr.linalg import DensityMatrix
from skewcorr.states import max_entangled


@pytest.fixture
def bell():
    psi = max_entangled(2)
    return DensityMatrix(np.outer(psi, psi.conj()), 2, 2)


def pure(psi, m, n):
    psi = np.asarray(psi, dtype=complex)
    return DensityMatrix(np.outer(psi, psi.conj()), m, n)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
