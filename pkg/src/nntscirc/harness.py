"""Reproducible Monte-Carlo engine: critical values, interpolation refits,
and size/power studies.

Determinism contract: replicate r always draws from the stream derived
from (base_seed, r), so results are independent of batching and of how
many workers execute the replicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import classical
from .core import TWO_PI, NntsParams, canonicalize, sample, uniform_params
from .errors import HarnessError, InvalidArgument, InvalidParameter, RegressionError
from .mle import fit_batch
from .tables import ALPHAS, DEFAULT_MODEL, MIN_SAMPLE_SIZE
from .uniformity import TestMethod, critical_value as lookup_critical_value, CvSource


@dataclass(frozen=True)
class SimulationPlan:
    test: TestMethod
    m: int
    n: int
    alphas: tuple = ALPHAS
    reps: int = 10000
    base_seed: int = 0

    def __post_init__(self):
        if self.reps < 1000:
            raise InvalidArgument("critical values need at least 1000 replicates")
        if self.n < MIN_SAMPLE_SIZE.get(self.m, 2):
            raise InvalidArgument(f"n={self.n} below minimum sample size for m={self.m}")


@dataclass(frozen=True)
class PowerReport:
    alternative: NntsParams
    n: int
    alpha: float
    rejection_pct: dict  # method label -> rounded percentage
    reps: int


def _null_angles(n: int, reps: int, base_seed: int) -> np.ndarray:
    angles = np.empty((reps, n))
    for r in range(reps):
        rng = np.random.default_rng(np.random.SeedSequence((base_seed, r)))
        angles[r] = rng.uniform(0.0, TWO_PI, size=n)
    return angles


def simulate_critical_values(plan: SimulationPlan, restarts: int = 2) -> dict:
    """Upper-alpha quantiles of the null statistic, at 0.1 precision.

    Fits that do not reach a finite likelihood are excluded and counted;
    more than 1% of them invalidates the run.
    """
    angles = _null_angles(plan.n, plan.reps, plan.base_seed)
    c, ll, _, _, _ = fit_batch(angles, plan.m, restarts=restarts, seed=plan.base_seed)
    ok = np.isfinite(ll)
    failures = int(np.sum(~ok))
    if failures > 0.01 * plan.reps:
        raise HarnessError(f"{failures} fit failures out of {plan.reps} replicates")
    if plan.test is TestMethod.NNTS2:
        stats = 2.0 * ll[ok] + 2.0 * plan.n * math.log(TWO_PI)
    else:
        c0 = c[ok, 0].real
        stats = plan.n * (1.0 - c0 * c0)
    out = {}
    for alpha in plan.alphas:
        q = float(np.quantile(stats, 1.0 - alpha, method="linear"))
        out[alpha] = round(q, 1)
    return out


@dataclass(frozen=True)
class RegressionFit:
    coefficients: dict  # group -> {alpha: (intercept, coef_m, coef_1/ss, coef_m/ss, coef_1/ss2)}
    r_squared: dict
    max_abs_error: dict
    max_rel_error: dict


def fit_cv_regression(table2: dict | None = None) -> RegressionFit:
    """Refit the critical-value interpolation models from a table grid.

    Per alpha: ordinary least squares of the critical value on 1/SS for
    m = 1 and m = 2 separately, and on {m, 1/SS, m/SS, 1/SS^2} pooled over
    m = 3..7, using every finite tabulated sample size.
    """
    table2 = DEFAULT_MODEL.table2 if table2 is None else table2
    coefs, r2s, abse, rele = {}, {}, {}, {}
    for group in (1, 2, "3to7"):
        ms = [group] if group in (1, 2) else [3, 4, 5, 6, 7]
        coefs[group], r2s[group], abse[group], rele[group] = {}, {}, {}, {}
        for alpha in ALPHAS:
            rows_x, rows_y = [], []
            for m in ms:
                cells = table2[m][alpha]
                ns = sorted(n for n in cells if math.isfinite(n))
                for n, v in zip(ns, (cells[n] for n in ns)):
                    if group in (1, 2):
                        rows_x.append([1.0, 1.0 / n])
                    else:
                        rows_x.append([1.0, m, 1.0 / n, m / n, 1.0 / n**2])
                    rows_y.append(v)
            x = np.array(rows_x)
            y = np.array(rows_y)
            beta, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
            if rank < x.shape[1]:
                raise RegressionError(f"singular design for group {group}, alpha {alpha}")
            pred = x @ beta
            ss_res = float(np.sum((y - pred) ** 2))
            ss_tot = float(np.sum((y - np.mean(y)) ** 2))
            if group in (1, 2):
                full = (beta[0], 0.0, beta[1], 0.0, 0.0)
            else:
                full = tuple(beta)
            coefs[group][alpha] = full
            r2s[group][alpha] = 1.0 - ss_res / ss_tot
            abse[group][alpha] = float(np.max(np.abs(y - pred)))
            rele[group][alpha] = float(np.max(np.abs(y - pred) / y))
    return RegressionFit(coefs, r2s, abse, rele)


def make_alternative(m: int, c0: float, seed: int) -> NntsParams:
    """Density at controlled distance from uniformity: fixes the leading
    coefficient, draws the rest from a seeded complex Gaussian."""
    if not 0.0 < c0 <= 1.0:
        raise InvalidParameter("c0 must lie in (0, 1]")
    if c0 == 1.0 or m == 0:
        return uniform_params()
    rng = np.random.default_rng(seed)
    tail = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    tail *= math.sqrt(1.0 - c0 * c0) / np.linalg.norm(tail)
    return canonicalize(np.concatenate([[c0], tail]))


# labels accepted by power_study
NNTS_METHODS = {
    "nnts1": TestMethod.NNTS1,
    "nnts2": TestMethod.NNTS2,
}
CLASSICAL_METHODS = {
    "rayleigh": classical.ClassicalMethod.RAYLEIGH,
    "hro": classical.ClassicalMethod.HR_ORIGINAL,
    "hrm": classical.ClassicalMethod.HR_MODIFIED,
    "pycke": classical.ClassicalMethod.PYCKE,
}


def power_study(
    alt: NntsParams,
    n: int,
    alpha: float,
    reps: int,
    methods,
    base_seed: int,
    fit_m: int | None = None,
    null_reps: int = 2000,
) -> PowerReport:
    """Rejection percentages of the requested tests on samples from ``alt``.

    Tests from the likelihood family use the embedded table/regression
    critical values (fit order ``fit_m``, default the order of ``alt``);
    classical tests use Monte-Carlo critical values simulated once from
    ``null_reps`` uniform samples.
    """
    if reps < 100:
        raise InvalidArgument("need at least 100 replicates")
    methods = list(methods)
    m_fit = alt.m if fit_m is None else fit_m
    draws = np.empty((reps, n))
    for r in range(reps):
        draws[r] = sample(alt, n, seed=np.random.SeedSequence((base_seed, r))).angles

    rates = {}
    nnts_wanted = [lab for lab in methods if lab in NNTS_METHODS]
    if nnts_wanted:
        c, ll, _, _, _ = fit_batch(draws, m_fit, restarts=2, seed=base_seed)
        for lab in nnts_wanted:
            test = NNTS_METHODS[lab]
            if test is TestMethod.NNTS2:
                stats = 2.0 * ll + 2.0 * n * math.log(TWO_PI)
            else:
                stats = n * (1.0 - c[:, 0].real ** 2)
            cv = lookup_critical_value(DEFAULT_MODEL, test, m_fit, alpha, n, CvSource.AUTO)
            rates[lab] = round(100.0 * float(np.mean(stats > cv)))
    for lab in methods:
        if lab in NNTS_METHODS:
            continue
        method = CLASSICAL_METHODS[lab]
        null = classical.simulate_null_statistics(method, n, null_reps, base_seed + 1)
        cv = float(np.quantile(null, 1.0 - alpha, method="linear"))
        from .core import AngleSample

        stats = np.array(
            [classical.classical_statistic(method, AngleSample(row)).value for row in draws]
        )
        rates[lab] = round(100.0 * float(np.mean(stats > cv)))
    return PowerReport(alternative=alt, n=n, alpha=alpha, rejection_pct=rates, reps=reps)
