"""Maximum-likelihood circular-uniformity tests.

Two statistics, both increasing with distance from uniformity:

* ``nnts1_statistic`` -- n (1 - c0_hat^2), the standardised-estimator form.
* ``nnts2_statistic`` -- 2 log_lik + 2 n log 2pi, the generalised
  likelihood ratio against the uniform null.

Neither statistic has a chi-squared limit (the null sits on the boundary
of the parameter space), so inference uses simulated critical values:
embedded tables, regression interpolation, or fresh Monte-Carlo p-values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, AngleSample
from .errors import SampleTooSmall, TableLookupError, UnsupportedAlpha
from .mle import FitResult, fit, fit_batch
from .tables import ALPHAS, DEFAULT_MODEL, CriticalValueModel, evaluate_regression

#: observed statistics closer than this to a regression-interpolated
#: critical value cannot be called either way
INCONCLUSIVE_BAND = 0.1

MC_RESTARTS = 2  # restarts for each null-replicate refit


class TestMethod(enum.Enum):
    NNTS1 = "nnts1"
    NNTS2 = "nnts2"


class CvSource(enum.Enum):
    TABLE = "table"
    REGRESSION = "regression"
    AUTO = "auto"


class Decision(enum.Enum):
    REJECT = "reject"
    FAIL_TO_REJECT = "fail_to_reject"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TestOutcome:
    method: str
    statistic: float
    m: int
    n: int
    alpha: float
    decision: Decision
    critical_value: float | None = None
    p_value: float | None = None
    seed: int | None = None

    def to_dict(self):
        return {
            "method": self.method,
            "statistic": self.statistic,
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "critical_value": self.critical_value,
            "p_value": self.p_value,
            "decision": self.decision.value,
            "seed": self.seed,
        }


def nnts1_statistic(fit_result: FitResult, n: int) -> float:
    """n (1 - c0_hat^2); ranges over [0, n]."""
    c0 = fit_result.params.c[0].real
    return n * (1.0 - c0 * c0)


def nnts2_statistic(fit_result: FitResult, n: int) -> float:
    """Generalised likelihood ratio: 2 log_lik + 2 n log 2pi >= 0."""
    return 2.0 * fit_result.log_lik + 2.0 * n * math.log(TWO_PI)


def critical_value(
    model: CriticalValueModel,
    test: TestMethod,
    m: int,
    alpha: float,
    n: int,
    source: CvSource = CvSource.AUTO,
) -> float:
    """Upper-alpha critical value from the embedded tables or regression."""
    if alpha not in ALPHAS:
        raise UnsupportedAlpha(f"alpha must be one of {ALPHAS}, got {alpha}")
    if m not in model.min_ss:
        raise TableLookupError(f"no critical values for m={m}")
    if n < model.min_ss[m]:
        raise SampleTooSmall(f"n={n} below minimum sample size {model.min_ss[m]} for m={m}")
    if source is CvSource.AUTO:
        source = CvSource.REGRESSION if test is TestMethod.NNTS2 else CvSource.TABLE
    if source is CvSource.TABLE:
        table = model.table2 if test is TestMethod.NNTS2 else model.table1
        try:
            return table[m][alpha][n]
        except KeyError:
            raise TableLookupError(
                f"n={n} not tabulated for {test.value} m={m}; "
                "use regression (nnts2) or simulated critical values"
            ) from None
    if test is not TestMethod.NNTS2:
        raise TableLookupError("regression interpolation exists only for the likelihood-ratio test")
    if n >= model.asy_ss[m]:
        return model.table2[m][alpha][math.inf]
    return round(evaluate_regression(m, alpha, n), 1)


def simulate_null_statistics(
    method: TestMethod, m: int, n: int, reps: int, seed: int, restarts: int = MC_RESTARTS
) -> np.ndarray:
    """Statistics of ``reps`` uniform null samples of size n, refitted at m.

    Replicate r draws its angles from a stream derived from (seed, r), so
    the result does not depend on batching or worker layout.
    """
    angles = np.empty((reps, n))
    for r in range(reps):
        rng = np.random.default_rng(np.random.SeedSequence((seed, r)))
        angles[r] = rng.uniform(0.0, TWO_PI, size=n)
    c, ll, _, _, _ = fit_batch(angles, m, restarts=restarts, seed=seed)
    if method is TestMethod.NNTS2:
        return 2.0 * ll + 2.0 * n * math.log(TWO_PI)
    c0 = c[:, 0].real
    return n * (1.0 - c0 * c0)


def monte_carlo_p_value(observed: float, null_stats: np.ndarray) -> float:
    """(1 + #{null >= observed}) / (reps + 1); never exactly zero."""
    return (1 + int(np.sum(null_stats >= observed))) / (len(null_stats) + 1)


def run_uniformity_test(
    sample: AngleSample,
    m: int,
    alpha: float,
    method: TestMethod = TestMethod.NNTS2,
    p_value_reps: int | None = None,
    seed: int | None = None,
    model: CriticalValueModel = DEFAULT_MODEL,
) -> TestOutcome:
    """Fit the alternative, compare against the null of uniformity."""
    fit_seed = 0 if seed is None else seed
    fr = fit(sample, m, seed=fit_seed)
    n = sample.n
    stat = (nnts2_statistic if method is TestMethod.NNTS2 else nnts1_statistic)(fr, n)
    cv = critical_value(model, method, m, alpha, n, CvSource.AUTO)
    regression_sourced = method is TestMethod.NNTS2 and n < model.asy_ss.get(m, 0)
    if regression_sourced and abs(stat - cv) < INCONCLUSIVE_BAND:
        decision = Decision.INCONCLUSIVE
    elif stat > cv:
        decision = Decision.REJECT
    else:
        decision = Decision.FAIL_TO_REJECT
    p_value = None
    if p_value_reps is not None:
        null_stats = simulate_null_statistics(method, m, n, p_value_reps, fit_seed)
        p_value = monte_carlo_p_value(stat, null_stats)
    return TestOutcome(
        method=method.value,
        statistic=float(stat),
        m=m,
        n=n,
        alpha=alpha,
        critical_value=float(cv),
        p_value=p_value,
        decision=decision,
        seed=seed,
    )
