"""Distribution of sums (mod 2pi) of independent variables from the family.

Three routes are provided and cross-checked:

* ``spectrum_product`` -- the exact characteristic function of the sum,
  a plain pointwise product.
* ``sum_params_closed_form`` / ``sum_params_solver`` -- the coefficient
  system c_0^sum c_k^sum = prod_s c_k^(s) conj(c_0^(s)) together with the
  unit-norm equation, solved in closed form (biquadratic) or by damped
  Newton iteration from the uniform starting point.
* ``spectrum_to_params`` -- exact recovery of coefficients from a spectrum
  by spectral factorization of the nonnegative trigonometric polynomial.

For summands with m >= 2 the coefficient system is not guaranteed to
reproduce the exact product spectrum; the gap is reported in
``SumResult.spectrum_gap`` rather than hidden.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import NntsParams, Spectrum, canonicalize, char_fn, density_from_spectrum, uniform_params
from .errors import (
    FactorizationUnstable,
    InvalidArgument,
    NoRealSolution,
    NotADensity,
    SolverDivergence,
)


class SumMethod(enum.Enum):
    COEFFICIENT_SYSTEM = "system"
    CLOSED_FORM = "closed_form"
    SPECTRAL_FACTORIZATION = "spectral_factorization"


@dataclass(frozen=True)
class SumResult:
    params: NntsParams
    m_sum: int
    method: SumMethod
    residual: float
    #: max |char_fn(params)(t) - product spectrum(t)|; nonzero gaps are
    #: expected for m >= 2 because the coefficient system is only an
    #: approximation of the exact convolution there.
    spectrum_gap: float


def spectrum_product(specs) -> Spectrum:
    """Characteristic function of the sum: phi_out(t) = prod_s phi_s(t)."""
    specs = list(specs)
    if not specs:
        raise InvalidArgument("need at least one spectrum")
    m_out = min(s.m for s in specs)
    pos = np.ones(m_out + 1, dtype=complex)
    for s in specs:
        pos *= s.phi_nonneg[: m_out + 1]
    pos[0] = 1.0
    return Spectrum(m=m_out, phi_nonneg=pos)


def _cross_products(params_list, m_sum: int) -> np.ndarray:
    """p_k = prod_s c_k^(s) conj(c_0^(s)) for k = 1..m_sum."""
    p = np.ones(m_sum, dtype=complex)
    for par in params_list:
        p *= par.c[1 : m_sum + 1] * np.conj(par.c[0])
    return p


def _make_result(params_list, c0, ck, method, residual) -> SumResult:
    params = canonicalize(np.concatenate([[complex(c0)], np.asarray(ck, dtype=complex)]))
    product = spectrum_product([char_fn(p) for p in params_list])
    gap = float(np.max(np.abs(char_fn(params).phi_nonneg - product.phi_nonneg)))
    return SumResult(
        params=params,
        m_sum=params.m,
        method=method,
        residual=float(residual),
        spectrum_gap=gap,
    )


def sum_params_closed_form(params_list) -> SumResult:
    """Coefficients of the sum via the biquadratic closed form.

    c_0^sum is the largest positive root of x^4 - x^2 + sum ||p_k||^2 = 0
    and c_k^sum = p_k / c_0^sum. Raises NoRealSolution when the biquadratic
    has no real root (4 sum ||p_k||^2 > 1), in which case the caller should
    fall back to the numerical solver.
    """
    params_list = list(params_list)
    if len(params_list) < 2:
        raise InvalidArgument("need at least two summands")
    m_sum = min(p.m for p in params_list)
    if m_sum == 0:
        return _make_result(params_list, 1.0, np.empty(0), SumMethod.CLOSED_FORM, 0.0)
    p = _cross_products(params_list, m_sum)
    s = float(np.sum(np.abs(p) ** 2))
    if 4.0 * s > 1.0:
        raise NoRealSolution("biquadratic discriminant is negative")
    c0 = math.sqrt((1.0 + math.sqrt(1.0 - 4.0 * s)) / 2.0)
    ck = p / c0
    residual = abs(c0**2 + float(np.sum(np.abs(ck) ** 2)) - 1.0)
    return _make_result(params_list, c0, ck, SumMethod.CLOSED_FORM, residual)


def _system_residual(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Stacked real residuals of the coefficient system at x = (c0, re, im)."""
    m = len(p)
    c0 = x[0]
    ck = x[1 : m + 1] + 1j * x[m + 1 :]
    eq = c0 * ck - p
    norm_eq = c0**2 + np.sum(np.abs(ck) ** 2) - 1.0
    return np.concatenate([eq.real, eq.imag, [norm_eq]])


def _system_jacobian(x: np.ndarray, p: np.ndarray) -> np.ndarray:
    m = len(p)
    c0 = x[0]
    re = x[1 : m + 1]
    im = x[m + 1 :]
    jac = np.zeros((2 * m + 1, 2 * m + 1))
    # real parts of c0*ck - pk
    jac[:m, 0] = re
    jac[:m, 1 : m + 1] = np.eye(m) * c0
    # imaginary parts
    jac[m : 2 * m, 0] = im
    jac[m : 2 * m, m + 1 :] = np.eye(m) * c0
    # norm equation
    jac[2 * m, 0] = 2.0 * c0
    jac[2 * m, 1 : m + 1] = 2.0 * re
    jac[2 * m, m + 1 :] = 2.0 * im
    return jac


def _solve_pair(p: np.ndarray, tol: float, max_iter: int = 200):
    """Damped Newton on the 2m+1 real equations, from the uniform point."""
    m = len(p)
    x = np.zeros(2 * m + 1)
    x[0] = 1.0
    f = _system_residual(x, p)
    res = float(np.max(np.abs(f)))
    for _ in range(max_iter):
        if res < tol:
            return x, res
        step = np.linalg.solve(_system_jacobian(x, p), -f)
        lam = 1.0
        while lam > 1e-12:
            x_new = x + lam * step
            f_new = _system_residual(x_new, p)
            res_new = float(np.max(np.abs(f_new)))
            if res_new < res:
                break
            lam *= 0.5
        else:
            raise SolverDivergence("line search stalled", residual=res)
        x, f, res = x_new, f_new, res_new
    if res < tol:
        return x, res
    raise SolverDivergence("no convergence within iteration budget", residual=res)


def sum_params_solver(params_list, tol: float = 1e-12) -> SumResult:
    """Coefficients of the sum via damped Newton on the nonlinear system.

    Summands are combined pairwise-recursively; each pairwise solve starts
    from the uniform point (1, 0, ..., 0) and halves the Newton step
    whenever the residual would increase.
    """
    params_list = list(params_list)
    if len(params_list) < 2:
        raise InvalidArgument("need at least two summands")
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    acc = params_list[0]
    worst = 0.0
    for nxt in params_list[1:]:
        m_sum = min(acc.m, nxt.m)
        if m_sum == 0:
            acc = uniform_params()
            continue
        p = _cross_products([acc, nxt], m_sum)
        x, res = _solve_pair(p, tol)
        worst = max(worst, res)
        acc = canonicalize(np.concatenate([[x[0]], x[1 : m_sum + 1] + 1j * x[m_sum + 1 :]]))
    return _make_result(params_list, acc.c[0].real, acc.c[1:], SumMethod.COEFFICIENT_SYSTEM, worst)


def _pair_roots(roots: np.ndarray, m: int):
    """Split roots of the Laurent polynomial into conjugate-reciprocal pairs.

    Returns the kept representatives (modulus <= 1, one per pair) and the
    worst pairing defect |  |r| * |mate| - 1 |.
    """
    order = np.argsort(np.abs(roots))
    kept = roots[order[:m]]
    others = list(roots[order[m:]])
    defect = 0.0
    for r in kept:
        target = 1.0 / np.conj(r)
        dists = [abs(o - target) for o in others]
        j = int(np.argmin(dists))
        mate = others.pop(j)
        defect = max(defect, abs(abs(r) * abs(mate) - 1.0))
    return kept, defect


def spectrum_to_params(spec: Spectrum, grid_points: int = 4096) -> NntsParams:
    """Recover unit-norm coefficients whose characteristic function is ``spec``.

    Roots the degree-2m Laurent polynomial sum_t phi(t) z^{m-t} via the
    companion matrix, keeps one root of each conjugate-reciprocal pair
    (modulus <= 1), and rebuilds the monic factor. This is the rigorous
    route for sums: feed it the product spectrum.
    """
    grid = np.linspace(0.0, 2.0 * math.pi, grid_points, endpoint=False)
    dens = density_from_spectrum(spec, grid)
    if np.min(dens) < -1e-10:
        raise NotADensity(f"spectrum inverts to a negative function (min {np.min(dens):.3e})")
    # trim trailing zero coefficients: they lower the true degree
    pos = spec.phi_nonneg
    m = spec.m
    while m > 0 and abs(pos[m]) < 1e-14:
        m -= 1
    if m == 0:
        return uniform_params()
    full = np.concatenate([pos[m:0:-1], np.conj(pos[: m + 1])])  # z^{2m} .. z^0
    roots = np.roots(full)
    kept, defect = _pair_roots(roots, m)
    if defect > 1e-6:
        raise FactorizationUnstable(f"root pairing defect {defect:.3e}")
    c = np.poly(kept)[::-1]  # coefficients of prod (z - r) in ascending powers
    if abs(c[0]) < abs(c[-1]):
        # reversal c_k -> conj(c_{m-k}) leaves the density unchanged; keep the
        # representative whose first coefficient dominates the last
        c = np.conj(c[::-1])
    return canonicalize(c)
