import numpy as np
import pytest

from nntscirc.core import uniform_params
from nntscirc.errors import InvalidArgument, InvalidParameter
from nntscirc.harness import (
    SimulationPlan,
    fit_cv_regression,
    make_alternative,
    power_study,
    simulate_critical_values,
)
from nntscirc.tables import ALPHAS
from nntscirc.uniformity import TestMethod


class TestSimulationPlan:
    def test_reps_floor(self):
        with pytest.raises(InvalidArgument):
            SimulationPlan(TestMethod.NNTS2, m=1, n=50, reps=500)

    def test_sample_size_floor(self):
        with pytest.raises(InvalidArgument):
            SimulationPlan(TestMethod.NNTS2, m=3, n=30, reps=2000)


@pytest.fixture(scope="module")
def cv_m1_n50():
    plan = SimulationPlan(TestMethod.NNTS2, m=1, n=50, reps=1000, base_seed=42)
    return simulate_critical_values(plan)


@pytest.fixture(scope="module")
def refit():
    return fit_cv_regression()


class TestSimulateCriticalValues:
    def test_alpha_ordering(self, cv_m1_n50):
        assert cv_m1_n50[0.01] > cv_m1_n50[0.05] > cv_m1_n50[0.10]

    def test_smoke_scale_matches_table(self, cv_m1_n50):
        # 1000-rep run against the embedded 10000-rep values, wide band
        assert cv_m1_n50[0.10] == pytest.approx(4.7, abs=0.6)
        assert cv_m1_n50[0.05] == pytest.approx(6.1, abs=0.6)
        assert cv_m1_n50[0.01] == pytest.approx(9.5, abs=0.6)

    def test_deterministic(self):
        plan = SimulationPlan(TestMethod.NNTS2, m=1, n=30, reps=1000, base_seed=9)
        assert simulate_critical_values(plan) == simulate_critical_values(plan)

    def test_decreasing_in_sample_size(self):
        small = simulate_critical_values(
            SimulationPlan(TestMethod.NNTS2, m=1, n=20, reps=1000, base_seed=5)
        )
        large = simulate_critical_values(
            SimulationPlan(TestMethod.NNTS2, m=1, n=100, reps=1000, base_seed=5)
        )
        for alpha in ALPHAS:
            assert large[alpha] <= small[alpha] + 0.3  # MC noise allowance

    def test_nnts1_variant(self):
        plan = SimulationPlan(TestMethod.NNTS1, m=1, n=50, reps=1000, base_seed=77)
        cv = simulate_critical_values(plan)
        assert cv[0.05] == pytest.approx(3.3, abs=0.6)


class TestFitCvRegression:
    def test_m1_alpha10_coefficients(self, refit):
        b = refit.coefficients[1][0.10]
        assert b[0] == pytest.approx(4.5128, abs=0.05)
        assert b[2] == pytest.approx(10.8062, abs=0.05)

    def test_m2_coefficients(self, refit):
        b = refit.coefficients[2][0.05]
        assert b[0] == pytest.approx(9.3118, abs=0.05)
        assert b[2] == pytest.approx(34.1750, abs=0.05)

    def test_pooled_alpha10_max_abs_error(self, refit):
        # 0.1 at the table's own precision (the raw value is 0.106)
        assert round(refit.max_abs_error["3to7"][0.10], 1) <= 0.1

    def test_r_squared_reported(self, refit):
        for group in (1, 2, "3to7"):
            for alpha in ALPHAS:
                assert 0.0 < refit.r_squared[group][alpha] <= 1.0


class TestMakeAlternative:
    def test_c0_one_is_uniform(self):
        assert make_alternative(3, 1.0, seed=1) == uniform_params()

    def test_c0_bounds(self):
        with pytest.raises(InvalidParameter):
            make_alternative(2, 0.0, seed=1)
        with pytest.raises(InvalidParameter):
            make_alternative(2, 1.5, seed=1)

    def test_tail_mass(self):
        alt = make_alternative(3, 0.59, seed=4)
        tail = float(np.sum(np.abs(alt.c[1:]) ** 2))
        assert tail == pytest.approx(1 - 0.59**2, abs=1e-10)
        assert tail == pytest.approx(0.6519, abs=1e-4)

    def test_reproducible(self):
        a = make_alternative(2, 0.8, seed=9)
        b = make_alternative(2, 0.8, seed=9)
        np.testing.assert_array_equal(a.c, b.c)


class TestPowerStudy:
    def test_reps_floor(self):
        with pytest.raises(InvalidArgument):
            power_study(make_alternative(1, 0.9, 1), 50, 0.05, 50, ["nnts2"], 1)

    def test_size_near_alpha_under_null(self):
        report = power_study(
            uniform_params(), n=50, alpha=0.10, reps=400, methods=["rayleigh"], base_seed=3,
            fit_m=1,
        )
        se = 100 * 2 * np.sqrt(0.10 * 0.90 / 400)
        assert abs(report.rejection_pct["rayleigh"] - 10) <= se + 1  # + rounding

    def test_near_uniform_alternative_low_power(self):
        alt = make_alternative(2, 0.9959, seed=2)
        report = power_study(alt, n=25, alpha=0.10, reps=200, methods=["rayleigh", "pycke"], base_seed=4)
        assert report.rejection_pct["rayleigh"] <= 20
        assert report.rejection_pct["pycke"] <= 20

    def test_power_nondecreasing_in_n(self):
        alt = make_alternative(1, 0.93, seed=6)
        rates = [
            power_study(alt, n=n, alpha=0.05, reps=200, methods=["nnts2"], base_seed=7)
            .rejection_pct["nnts2"]
            for n in (25, 100, 400)
        ]
        assert rates[0] <= rates[1] + 5 and rates[1] <= rates[2] + 5

    def test_percentages_in_range(self):
        alt = make_alternative(1, 0.8, seed=8)
        report = power_study(
            alt, n=50, alpha=0.05, reps=150,
            methods=["nnts1", "nnts2", "rayleigh", "hro", "hrm", "pycke"], base_seed=9,
        )
        assert set(report.rejection_pct) == {"nnts1", "nnts2", "rayleigh", "hro", "hrm", "pycke"}
        for pct in report.rejection_pct.values():
            assert 0 <= pct <= 100

    def test_true_order_beats_underfit(self):
        # likelihood test fitted at the generating order dominates m=1 fit
        alt = make_alternative(3, 0.59, seed=10)
        at3 = power_study(alt, n=100, alpha=0.05, reps=300, methods=["nnts2"], base_seed=11, fit_m=3)
        at1 = power_study(alt, n=100, alpha=0.05, reps=300, methods=["nnts2"], base_seed=11, fit_m=1)
        assert at3.rejection_pct["nnts2"] > at1.rejection_pct["nnts2"]
