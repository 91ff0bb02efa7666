"""Core types for circular densities built from nonnegative trigonometric sums.

A density in this family is f(theta) = (1/2pi) * || sum_k c_k e^{ik theta} ||^2
for a complex coefficient vector c = (c_0, ..., c_M) of unit Euclidean norm.
Nonnegativity is automatic, and the characteristic function is supported on
the integers -M..M, which makes convolution exact and finite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, InvalidParameter, InvalidSpectrum

TWO_PI = 2.0 * math.pi

NORM_TOL = 1e-10


@dataclass(frozen=True)
class NntsParams:
    """Unit-norm complex coefficient vector defining one circular density.

    Attributes
    ----------
    m : int
        Number of trigonometric terms beyond the constant.
    c : np.ndarray
        Complex vector of length m + 1 with sum ||c_k||^2 == 1 and c_0
        real and nonnegative.
    phase_warning : bool
        True when the canonical phase had to be taken from a later entry
        because c_0 was exactly zero.
    """

    m: int
    c: np.ndarray
    phase_warning: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        if self.m != len(c) - 1:
            raise InvalidParameter(f"m={self.m} inconsistent with {len(c)} coefficients")
        if abs(np.sum(np.abs(c) ** 2) - 1.0) > NORM_TOL:
            raise InvalidParameter("coefficient vector is not unit-norm")
        if c[0].imag != 0.0 or c[0].real < 0.0:
            raise InvalidParameter("c_0 must be real and nonnegative; canonicalize first")

    def to_dict(self):
        return {"m": self.m, "c": [[z.real, z.imag] for z in self.c]}

    @classmethod
    def from_dict(cls, d) -> "NntsParams":
        c = np.array([complex(re, im) for re, im in d["c"]])
        if len(c) != int(d["m"]) + 1:
            raise InvalidParameter("'m' inconsistent with coefficient count")
        try:
            # bit-exact round-trip for vectors that are already canonical
            return cls(m=len(c) - 1, c=c)
        except InvalidParameter:
            return canonicalize(c)


@dataclass(frozen=True)
class Spectrum:
    """Characteristic-function values phi(t) on the integers t in [-m, m].

    Stored as the nonnegative half phi(0..m); phi(-t) is the complex
    conjugate of phi(t) by Hermitian symmetry.
    """

    m: int
    phi_nonneg: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi_nonneg, dtype=complex)
        phi.setflags(write=False)
        object.__setattr__(self, "phi_nonneg", phi)
        if len(phi) != self.m + 1:
            raise InvalidSpectrum("phi must cover t = 0..m")
        if phi[0] != 1.0:
            raise InvalidSpectrum("phi(0) must equal 1")
        if np.any(np.abs(phi) > 1.0 + 1e-9):
            raise InvalidSpectrum("characteristic values must have modulus <= 1")

    def phi(self, t: int) -> complex:
        """phi(t) for any integer t; zero outside [-m, m]."""
        if abs(t) > self.m:
            return 0.0 + 0.0j
        return complex(self.phi_nonneg[t]) if t >= 0 else complex(np.conj(self.phi_nonneg[-t]))

    def full(self) -> np.ndarray:
        """Values for t = -m..m as one array."""
        pos = self.phi_nonneg
        return np.concatenate([np.conj(pos[:0:-1]), pos])

    @classmethod
    def from_map(cls, m: int, values) -> "Spectrum":
        """Build from a {t: value} mapping, checking Hermitian symmetry."""
        pos = np.zeros(m + 1, dtype=complex)
        for t in range(m + 1):
            pos[t] = values.get(t, 0.0)
        for t in range(1, m + 1):
            neg = values.get(-t, np.conj(pos[t]))
            if abs(neg - np.conj(pos[t])) > 1e-12:
                raise InvalidSpectrum(f"phi(-{t}) != conj(phi({t}))")
        return cls(m=m, phi_nonneg=pos)


@dataclass(frozen=True)
class AngleSample:
    """Ordered collection of angles in radians on [0, 2pi)."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float)
        if a.ndim != 1 or a.size == 0:
            raise InvalidArgument("sample must be a non-empty 1-d collection of angles")
        a = np.mod(a, TWO_PI)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)

    @property
    def n(self) -> int:
        return len(self.angles)


def canonicalize(raw_c) -> NntsParams:
    """Scale a raw coefficient vector to unit norm with c_0 real >= 0.

    The vector is divided by its Euclidean norm and rotated by the unit
    phase e^{-i arg(c_0)}. When c_0 is exactly zero the phase is taken from
    the first nonzero entry and ``phase_warning`` is set on the result.
    """
    c = np.asarray(raw_c, dtype=complex).ravel()
    if c.size == 0:
        raise InvalidParameter("empty coefficient vector")
    norm = math.sqrt(float(np.sum(np.abs(c) ** 2)))
    if norm == 0.0:
        raise InvalidParameter("all-zero coefficient vector")
    c = c / norm
    warning = False
    pivot = c[0]
    if pivot == 0.0:
        pivot = c[np.flatnonzero(c)[0]]
        warning = True
    c = c * cmath.exp(-1j * cmath.phase(pivot))
    # kill the rounding residue so c_0 is exactly real
    c[0] = complex(abs(c[0]), 0.0)
    return NntsParams(m=len(c) - 1, c=c, phase_warning=warning)


def uniform_params() -> NntsParams:
    """The M = 0 member: the circular uniform distribution."""
    return NntsParams(m=0, c=np.array([1.0 + 0.0j]))


def density(params: NntsParams, theta) -> np.ndarray | float:
    """Density (1/2pi) || sum_k c_k e^{ik theta} ||^2 at theta (scalar or array)."""
    th = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    k = np.arange(params.m + 1)
    s = np.exp(1j * np.multiply.outer(th, k)) @ params.c
    out = (np.abs(s) ** 2) / TWO_PI
    return float(out) if np.isscalar(theta) or np.ndim(theta) == 0 else out


def char_fn(params: NntsParams) -> Spectrum:
    """Characteristic function phi(t) = sum_j c_{j+t} conj(c_j), t = 0..m."""
    c = params.c
    m = params.m
    pos = np.empty(m + 1, dtype=complex)
    pos[0] = 1.0
    for t in range(1, m + 1):
        pos[t] = np.sum(c[t:] * np.conj(c[: m + 1 - t]))
    return Spectrum(m=m, phi_nonneg=pos)


def density_from_spectrum(spec: Spectrum, theta) -> np.ndarray | float:
    """Invert a finite spectrum: (1/2pi) sum_t phi(t) e^{it theta}.

    phi(t) is the coefficient of e^{it theta} in 2pi times the density (see
    ``char_fn``), so this is the matching Fourier pairing. The imaginary
    part must vanish (it does for any Hermitian spectrum); the real part is
    returned.
    """
    th = np.asarray(theta, dtype=float)
    t = np.arange(-spec.m, spec.m + 1)
    vals = np.exp(1j * np.multiply.outer(th, t)) @ spec.full() / TWO_PI
    if np.max(np.abs(vals.imag)) > 1e-12:
        raise InvalidSpectrum("inversion produced a non-real density")
    out = vals.real
    return float(out) if np.isscalar(theta) or np.ndim(theta) == 0 else out


def sample(params: NntsParams, n: int, seed: int) -> AngleSample:
    """Draw n i.i.d. angles by rejection from a uniform envelope.

    By Cauchy-Schwarz the density is bounded by (M+1)/(2pi), so uniform
    candidates are accepted with probability exactly 1/(M+1). Deterministic
    for a fixed seed.
    """
    if n < 1:
        raise InvalidArgument("need at least one draw")
    rng = np.random.default_rng(seed)
    if params.m == 0:
        return AngleSample(rng.uniform(0.0, TWO_PI, size=n))
    bound = (params.m + 1) / TWO_PI
    out = np.empty(n)
    filled = 0
    while filled < n:
        chunk = max(2 * (n - filled) * (params.m + 1), 64)
        cand = rng.uniform(0.0, TWO_PI, size=chunk)
        u = rng.uniform(0.0, 1.0, size=chunk)
        accepted = cand[u * bound <= density(params, cand)]
        take = min(len(accepted), n - filled)
        out[filled : filled + take] = accepted[:take]
        filled += take
    return AngleSample(out)
