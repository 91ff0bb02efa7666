import math

import numpy as np
import pytest

from nntscirc.core import TWO_PI, AngleSample, canonicalize, sample, uniform_params
from nntscirc.errors import InsufficientData
from nntscirc.fixtures import load_fixture
from nntscirc.mle import fit, fit_batch, log_likelihood, observed_information

C_HALF = canonicalize(np.array([1.0, 1.0]) / math.sqrt(2.0))


def random_params(m: int, seed: int):
    rng = np.random.default_rng(seed)
    return canonicalize(rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1))


class TestLogLikelihood:
    def test_uniform_value(self):
        s = AngleSample(np.linspace(0.1, 6.0, 20))
        assert log_likelihood(uniform_params(), s) == pytest.approx(-20 * math.log(TWO_PI))

    def test_single_point_cardioid(self):
        s = AngleSample(np.array([0.0]))
        assert log_likelihood(C_HALF, s) == pytest.approx(math.log(1.0 / math.pi), abs=1e-12)

    def test_minus_inf_at_density_zero(self):
        p = canonicalize([1.0, -1.0])  # density has an exact zero at theta = 0
        s = AngleSample(np.array([0.0]))
        assert log_likelihood(p, s) == -math.inf

    def test_phase_invariance(self):
        rng = np.random.default_rng(0)
        raw = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        s = AngleSample(rng.uniform(0, TWO_PI, 50))
        a = log_likelihood(canonicalize(raw), s)
        b = log_likelihood(canonicalize(raw * np.exp(0.7j)), s)
        assert a == pytest.approx(b, abs=1e-9)


class TestGradient:
    @pytest.mark.parametrize("m", (1, 2, 3))
    def test_matches_finite_differences(self, m):
        # embed the sphere constraint by renormalizing inside the probe
        rng = np.random.default_rng(m)
        angles = AngleSample(rng.uniform(0, TWO_PI, 40))
        c = random_params(m, seed=10 + m).c.copy()

        def ll_of(x):
            return log_likelihood(canonicalize(x), angles)

        basis = np.exp(1j * np.outer(angles.angles, np.arange(m + 1)))
        v = basis @ c
        g = np.conj(basis).T @ (1.0 / np.conj(v))
        tangent = g - angles.n * c  # radial part of g is exactly n

        h = 1e-6
        for k in range(m + 1):
            for direction in (1.0, 1.0j):
                e = np.zeros(m + 1, dtype=complex)
                e[k] = direction
                num = (ll_of(c + h * e) - ll_of(c - h * e)) / (2 * h)
                # chain rule through the normalization: d/dt ll(c + t e) at 0
                ana = 2 * np.real(np.conj(e) @ tangent) / 1.0
                assert num == pytest.approx(ana, rel=1e-5, abs=1e-4)


class TestFit:
    def test_m0_short_circuit(self):
        s = AngleSample(np.array([0.1, 2.0, 4.0]))
        fr = fit(s, 0)
        assert fr.converged
        assert fr.log_lik == pytest.approx(-3 * math.log(TWO_PI))
        assert fr.params.m == 0

    def test_rejects_tiny_sample(self):
        with pytest.raises(InsufficientData):
            fit(AngleSample(np.array([1.0])), 1)

    def test_uniform_point_feasible(self):
        s = sample(uniform_params(), 50, seed=4)
        fr = fit(s, 2, seed=0)
        assert fr.log_lik >= -s.n * math.log(TWO_PI) - 1e-9

    def test_deterministic(self):
        s = load_fixture("pigeon-reduced-on")
        a = fit(s, 2, seed=9)
        b = fit(s, 2, seed=9)
        assert a.log_lik == b.log_lik
        np.testing.assert_array_equal(a.params.c, b.params.c)

    def test_reduced_c_m1_statistic(self):
        s = load_fixture("pigeon-reduced-c")
        fr = fit(s, 1, seed=0)
        stat = 2 * fr.log_lik + 2 * s.n * math.log(TWO_PI)
        assert stat == pytest.approx(11.26, abs=0.05)

    def test_converged_and_unit_norm(self):
        s = sample(random_params(2, 3), 100, seed=5)
        fr = fit(s, 2, seed=1)
        assert fr.converged
        assert fr.grad_norm < 1e-8
        assert np.sum(np.abs(fr.params.c) ** 2) == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("m", (1, 2, 3))
    def test_nesting_in_m(self, m):
        s = sample(random_params(2, 17), 80, seed=6)
        lo = fit(s, m, seed=0).log_lik
        hi = fit(s, m + 1, seed=0).log_lik
        assert hi >= lo - 1e-6

    def test_recovers_generator(self):
        truth = C_HALF
        s = sample(truth, 20000, seed=11)
        fr = fit(s, 1, seed=0)
        assert abs(fr.params.c[0].real - truth.c[0].real) < 0.02
        assert abs(abs(fr.params.c[1]) - abs(truth.c[1])) < 0.02

    def test_rotation_invariant_likelihood(self):
        s = load_fixture("pigeon-reduced-on")
        rotated = AngleSample(np.mod(s.angles + 1.2345, TWO_PI))
        a = fit(s, 1, seed=0).log_lik
        b = fit(rotated, 1, seed=0).log_lik
        assert a == pytest.approx(b, abs=1e-6)


class TestFitBatch:
    def test_matches_single_fit(self):
        s = load_fixture("pigeon-reduced-c")
        fr = fit(s, 1, seed=3)
        c, ll, _, conv, _ = fit_batch(s.angles[None, :], 1, seed=3)
        assert ll[0] == pytest.approx(fr.log_lik, abs=1e-12)
        assert conv[0]

    def test_rows_independent(self):
        rng = np.random.default_rng(2)
        block = rng.uniform(0, TWO_PI, (6, 40))
        c_all, ll_all, _, _, _ = fit_batch(block, 1, seed=5)
        c_one, ll_one, _, _, _ = fit_batch(block[2:3], 1, seed=5)
        assert ll_all[2] == pytest.approx(ll_one[0], abs=1e-9)

    def test_m0(self):
        block = np.random.default_rng(3).uniform(0, TWO_PI, (4, 30))
        c, ll, iters, conv, g = fit_batch(block, 0)
        assert np.all(conv)
        np.testing.assert_allclose(ll, -30 * math.log(TWO_PI))


class TestObservedInformation:
    def test_uniform_point(self):
        fr = fit(AngleSample(np.array([0.1, 1.0, 2.0])), 0)
        info = observed_information(fr, n=10)
        np.testing.assert_allclose(info.matrix, np.diag([0.0]) * 10, atol=1e-12)

    def test_projection_identities(self):
        s = load_fixture("pigeon-reduced-c")
        fr = fit(s, 2, seed=0)
        j = observed_information(fr, s.n).matrix
        c = fr.params.c
        # annihilates the estimate, Hermitian, idempotent after / n, rank m
        np.testing.assert_allclose(j @ c, np.zeros(3), atol=1e-10)
        np.testing.assert_allclose(j, np.conj(j.T), atol=1e-12)
        p = j / s.n
        np.testing.assert_allclose(p @ p, p, atol=1e-12)
        assert np.trace(j).real == pytest.approx(s.n * 2, abs=1e-9)
