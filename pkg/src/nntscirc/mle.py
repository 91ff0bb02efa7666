"""Maximum-likelihood estimation on the complex unit hypersphere.

The log-likelihood of a unit-norm coefficient vector c given angles
theta_1..theta_n is sum_j log |e(theta_j)^T c|^2 - n log 2pi with
e(theta) = (1, e^{i theta}, ..., e^{im theta}). Ascent uses the Wirtinger
gradient g with g_k = sum_j e^{-ik theta_j} / conj(e(theta_j)^T c); its
radial component is always c^H g = n, so the tangent direction is simply
g - n c and the natural step 1/n turns one ascent step into the fixed
point c <- g / ||g||. Backtracking keeps the iteration monotone.

``fit_batch`` runs the same iteration for many samples (and several random
restarts per sample) at once; the Monte-Carlo machinery is built on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, AngleSample, NntsParams, canonicalize, uniform_params
from .errors import FitFailure, InsufficientData, InvalidArgument

LOG_TWO_PI = math.log(TWO_PI)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 500
DEFAULT_RESTARTS = 5


@dataclass(frozen=True)
class FitResult:
    params: NntsParams
    log_lik: float
    iterations: int
    converged: bool
    grad_norm: float
    restarts_used: int


@dataclass(frozen=True)
class ObservedInformation:
    """n (I - c c^H): the (singular) curvature of the log-likelihood at the MLE."""

    matrix: np.ndarray


def log_likelihood(params: NntsParams, sample: AngleSample) -> float:
    """Sum of log densities; -inf when any density underflows to ~0."""
    if sample.n < 1:
        raise InvalidArgument("empty sample")
    k = np.arange(params.m + 1)
    v = np.exp(1j * np.outer(sample.angles, k)) @ params.c
    dens2 = np.abs(v) ** 2
    if np.any(dens2 <= 1e-300 * TWO_PI):
        return -math.inf
    return float(np.sum(np.log(dens2))) - sample.n * LOG_TWO_PI


def _random_starts(n_vec: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n_vec, dim)) + 1j * rng.standard_normal((n_vec, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def fit_batch(
    angles: np.ndarray,
    m: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
):
    """Fit one model per row of ``angles`` (shape (R, n)), sharing all work.

    Each replicate gets one start at the uniform point plus ``restarts``
    random unit starts drawn from ``seed``. Returns arrays
    (c_hat (R, m+1), log_lik (R,), iterations (R,), converged (R,),
    grad_norm (R,)) with the best start per replicate, phase-canonicalized
    so c_0 is real >= 0.
    """
    angles = np.atleast_2d(np.asarray(angles, dtype=float))
    reps, n = angles.shape
    if n < 2:
        raise InsufficientData("need at least two observations")
    if m == 0:
        c = np.ones((reps, 1), dtype=complex)
        ll = np.full(reps, -n * LOG_TWO_PI)
        return c, ll, np.zeros(reps, int), np.ones(reps, bool), np.zeros(reps)

    starts = restarts + 1
    dim = m + 1
    # basis matrix e(theta): shared across starts of the same replicate
    basis = np.exp(1j * angles[:, :, None] * np.arange(dim))  # (R, n, dim)

    rng = np.random.default_rng(seed)
    items = reps * starts
    rep_of = np.repeat(np.arange(reps), starts)
    c = np.empty((items, dim), dtype=complex)
    c[::starts, :] = 0.0
    c[::starts, 0] = 1.0
    if restarts:
        mask = np.ones(items, dtype=bool)
        mask[::starts] = False
        c[mask] = _random_starts(reps * restarts, dim, rng)

    def loglik(cv, b):
        v = np.einsum("ank,ak->an", b, cv)
        d2 = np.abs(v) ** 2
        with np.errstate(divide="ignore"):
            ll = np.sum(np.log(np.maximum(d2, 1e-300)), axis=-1)
        ll[np.any(d2 <= 1e-300, axis=-1)] = -np.inf
        return ll - n * LOG_TWO_PI, v

    ll = np.empty(items)
    grad_norm = np.full(items, np.inf)
    iters = np.zeros(items, dtype=int)

    # active working set; retired items are written back into c / ll
    idx = np.arange(items)
    sub_basis = basis[rep_of]
    c_a = c.copy()
    ll_a, v_a = loglik(c_a, sub_basis)

    for it in range(max_iter):
        if idx.size == 0:
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / np.conj(v_a)
        inv[~np.isfinite(inv)] = 0.0
        g = np.einsum("ank,an->ak", np.conj(sub_basis), inv)
        d = g - n * c_a  # tangent projection: c^H g == n identically
        dn = np.linalg.norm(d, axis=-1)
        grad_norm[idx] = dn
        iters[idx] = it + 1
        live = dn >= tol

        # backtracking from the natural step 1/n, then greedy doubling;
        # items that cannot strictly improve are at a numerical optimum
        alpha = np.full(idx.size, 1.0 / n)
        accepted = np.zeros(idx.size, dtype=bool)
        trial = live.copy()
        for bt in range(45):
            if not trial.any():
                break
            t = np.flatnonzero(trial)
            cand = c_a[t] + alpha[t, None] * d[t]
            cand /= np.linalg.norm(cand, axis=-1, keepdims=True)
            ll_new, v_new = loglik(cand, sub_basis[t])
            ok = ll_new > ll_a[t]
            hit = t[ok]
            c_a[hit], ll_a[hit], v_a[hit] = cand[ok], ll_new[ok], v_new[ok]
            accepted[hit] = True
            trial[hit] = False
            alpha[t[~ok]] *= 0.5
        # near the optimum the likelihood gain per step drops below machine
        # noise before the gradient reaches tol; the fixed-point step is
        # still contractive there, so coast on it without an ascent check
        stalled = live & ~accepted & (dn < 1e-4 * math.sqrt(n))
        if stalled.any():
            t = np.flatnonzero(stalled)
            cand = c_a[t] + d[t] / n
            cand /= np.linalg.norm(cand, axis=-1, keepdims=True)
            ll_new, v_new = loglik(cand, sub_basis[t])
            ok = np.isfinite(ll_new)
            hit = t[ok]
            c_a[hit], ll_a[hit], v_a[hit] = cand[ok], ll_new[ok], v_new[ok]
            accepted[hit] = True

        grow = accepted.copy()
        for _ in range(8):
            if not grow.any():
                break
            t = np.flatnonzero(grow)
            alpha[t] *= 2.0
            cand = c_a[t] + alpha[t, None] * d[t]
            cand /= np.linalg.norm(cand, axis=-1, keepdims=True)
            ll_new, v_new = loglik(cand, sub_basis[t])
            ok = ll_new > ll_a[t]
            hit = t[ok]
            c_a[hit], ll_a[hit], v_a[hit] = cand[ok], ll_new[ok], v_new[ok]
            grow[t[~ok]] = False

        keep = live & accepted
        if not keep.all():
            retired = ~keep
            c[idx[retired]] = c_a[retired]
            ll[idx[retired]] = ll_a[retired]
            idx = idx[keep]
            c_a, ll_a, v_a = c_a[keep], ll_a[keep], v_a[keep]
            sub_basis = sub_basis[keep]

    if idx.size:  # iteration budget exhausted
        c[idx] = c_a
        ll[idx] = ll_a

    converged = grad_norm < tol
    ll2 = ll.reshape(reps, starts)
    best = np.argmax(ll2, axis=1)
    rows = np.arange(reps)
    flat_best = rows * starts + best
    c_best = c[flat_best]
    iters = iters.reshape(reps, starts)
    converged = converged.reshape(reps, starts)
    grad_norm = grad_norm.reshape(reps, starts)
    # the density is invariant under c_k -> conj(c_{m-k}); keep the
    # identifiable representative with |c_0| >= |c_m|
    flip = np.abs(c_best[:, 0]) < np.abs(c_best[:, -1])
    c_best[flip] = np.conj(c_best[flip, ::-1])
    phase = np.exp(-1j * np.angle(c_best[:, 0]))
    phase[c_best[:, 0] == 0] = 1.0
    c_best = c_best * phase[:, None]
    c_best[:, 0] = np.abs(c_best[:, 0])
    return (
        c_best,
        ll2[rows, best],
        iters[rows, best],
        converged[rows, best],
        grad_norm[rows, best],
    )


def fit(
    sample: AngleSample,
    m: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> FitResult:
    """Maximize the log-likelihood over the unit hypersphere for fixed m."""
    if sample.n < 2:
        raise InsufficientData("need at least two observations")
    if m < 0:
        raise InvalidArgument("m must be nonnegative")
    if m == 0:
        return FitResult(
            params=uniform_params(),
            log_lik=-sample.n * LOG_TWO_PI,
            iterations=0,
            converged=True,
            grad_norm=0.0,
            restarts_used=0,
        )
    c, ll, iters, conv, gnorm = fit_batch(
        sample.angles[None, :], m, tol=tol, max_iter=max_iter, restarts=restarts, seed=seed
    )
    if not np.isfinite(ll[0]):
        raise FitFailure("all starts diverged")
    return FitResult(
        params=canonicalize(c[0]),
        log_lik=float(ll[0]),
        iterations=int(iters[0]),
        converged=bool(conv[0]),
        grad_norm=float(gnorm[0]),
        restarts_used=restarts,
    )


def observed_information(fit_result: FitResult, n: int) -> ObservedInformation:
    """n (I - c c^H) at the fitted coefficients."""
    c = fit_result.params.c
    eye = np.eye(len(c), dtype=complex)
    return ObservedInformation(matrix=n * (eye - np.outer(c, np.conj(c))))
