import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from skewcorr.measure import q_general, q_pure
from skewcorr.oracle import (
    PLATEAU,
    OracleBudget,
    analytic_isotropic,
    analytic_ppt,
    analytic_werner,
    brute_force_q,
    locate_plateau_onset,
    sudden_change_closed_form,
    sudden_change_point,
)
from skewcorr.states import max_entangled, ppt_family, random_classical_quantum, random_mixed, werner

from conftest import pure


class TestWernerFormula:
    @pytest.mark.parametrize("m", range(2, 11))
    def test_zero(self, m):
        assert abs(analytic_werner(m, 1 / m)) < 1e-14

    def test_values(self):
        assert_allclose(analytic_werner(2, -1.0), 0.5)
        assert_allclose(analytic_werner(2, 0.0), (2 - math.sqrt(3)) / 6)
        assert abs(analytic_werner(2, 0.0) - 0.0446582) < 1e-7

    def test_domain(self):
        with pytest.raises(ValueError):
            analytic_werner(2, 1.1)


class TestIsotropicFormula:
    @pytest.mark.parametrize("m", range(2, 11))
    def test_zero_and_pure_end(self, m):
        assert abs(analytic_isotropic(m, 1 / m**2)) < 1e-14
        assert_allclose(analytic_isotropic(m, 1.0), q_pure(max_entangled(m), m, m).q)

    def test_qubit_end(self):
        assert_allclose(analytic_isotropic(2, 1.0), 0.5)

    def test_domain(self):
        with pytest.raises(ValueError):
            analytic_isotropic(3, -0.01)


@pytest.mark.parametrize("m", range(2, 11))
def test_formulas_nonnegative(m):
    assert min(analytic_werner(m, x) for x in np.linspace(-1, 1, 1000)) > -1e-15
    assert min(analytic_isotropic(m, x) for x in np.linspace(0, 1, 1000)) > -1e-15


class TestPPTFormula:
    def test_values(self):
        assert abs(analytic_ppt(2.0) - 0.188723) < 1e-6
        assert_allclose(analytic_ppt(4.0), 4 / 21)

    def test_continuity(self):
        nt = sudden_change_closed_form()
        assert abs(analytic_ppt(nt) - analytic_ppt(nt + 1e-12)) < 1e-9

    def test_kink(self):
        assert abs(sudden_change_closed_form() - 3.066885) < 1e-6
        assert abs(sudden_change_point() - 3.066885) < 1e-5
        assert abs(sudden_change_point() - sudden_change_closed_form()) < 1e-9

    def test_branch_sign(self):
        # below the kink the curved branch sits under the plateau
        assert analytic_ppt(2.5) < PLATEAU

    def test_pipeline_kink(self):
        alphas = np.linspace(3.0, 3.2, 21)
        qs = [q_general(ppt_family(a)).q for a in alphas]
        onset = locate_plateau_onset(lambda a: q_general(ppt_family(a)).q, alphas, qs)
        assert abs(onset - sudden_change_closed_form()) < 1e-3


class TestBruteForce:
    def test_bell(self):
        bell = pure(max_entangled(2), 2, 2)
        assert abs(brute_force_q(bell) - 0.5) < 1e-8

    def test_werner(self):
        assert abs(brute_force_q(werner(3, 0.8), OracleBudget(restarts=8)) - analytic_werner(3, 0.8)) < 1e-4

    def test_classical_quantum(self):
        assert brute_force_q(random_classical_quantum(2, 3, seed=1)) < 1e-6
        assert brute_force_q(random_classical_quantum(3, 2, seed=2), OracleBudget(restarts=8)) < 1e-6

    @pytest.mark.parametrize("dims,seed", [((2, 2), 0), ((2, 3), 1), ((3, 2), 2), ((3, 3), 3)])
    def test_sandwich(self, dims, seed):
        rho = random_mixed(*dims, seed=seed)
        q = q_general(rho).q
        brute = brute_force_q(rho, OracleBudget(restarts=16))
        assert q - 1e-6 <= brute <= q + 1e-4

    def test_guard(self):
        with pytest.raises(ValueError):
            brute_force_q(random_mixed(4, 4, seed=0))
        with pytest.raises(ValueError):
            OracleBudget(restarts=0)
