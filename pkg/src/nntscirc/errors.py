"""Exception hierarchy shared across the package."""


class NntsError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameter(NntsError):
    """Parameter vector violates its constraints (all-zero, c0 > 1, ...)."""


class InvalidSpectrum(NntsError):
    """Characteristic-function values violate Hermitian symmetry or phi(0) != 1."""


class InvalidArgument(NntsError):
    """Malformed call argument (empty sample, zero draws, ...)."""


class NoRealSolution(NntsError):
    """Biquadratic closed form for the sum has no real root; use the solver."""


class SolverDivergence(NntsError):
    """Newton iteration failed to converge. Carries the last residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotADensity(NntsError):
    """Spectrum corresponds to a function that is negative on the circle."""


class FactorizationUnstable(NntsError):
    """Root pairing of the spectral factorization is ill-conditioned."""


class InsufficientData(NntsError):
    """Sample too small for estimation."""


class FitFailure(NntsError):
    """All optimizer starts diverged."""


class SampleTooSmall(NntsError):
    """Sample size below the minimum required for the requested test."""


class UnsupportedAlpha(NntsError):
    """Significance level outside {0.10, 0.05, 0.01}."""


class TableLookupError(NntsError):
    """Requested (m, alpha, n) cell is not tabulated."""


class HarnessError(NntsError):
    """Simulation harness failed (too many fit failures, bad plan)."""


class RegressionError(NntsError):
    """Critical-value regression could not be fitted (singular design)."""


class ParseError(NntsError):
    """Non-numeric or malformed row in an angle file."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row
