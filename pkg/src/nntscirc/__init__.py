"""Circular distributions from nonnegative trigonometric sums.

Densities, characteristic functions, exact sampling, convolution of
independent variables, constrained maximum-likelihood fitting, and
maximum-likelihood tests of circular uniformity with simulated critical
values, plus classical competitor tests and a reproducible simulation
harness.
"""

from .classical import (
    ClassicalMethod,
    ClassicalStatistic,
    classical_statistic,
    hermans_rasson_modified,
    hermans_rasson_original,
    pycke,
    rayleigh,
)
from .core import (
    AngleSample,
    NntsParams,
    Spectrum,
    canonicalize,
    char_fn,
    density,
    density_from_spectrum,
    sample,
    uniform_params,
)
from .errors import NntsError
from .fixtures import fixture_names, load_fixture
from .harness import (
    PowerReport,
    SimulationPlan,
    fit_cv_regression,
    make_alternative,
    power_study,
    simulate_critical_values,
)
from .io import AngleUnit, parse_angles, read_angles
from .mle import FitResult, fit, fit_batch, log_likelihood, observed_information
from .sums import (
    SumMethod,
    SumResult,
    spectrum_product,
    spectrum_to_params,
    sum_params_closed_form,
    sum_params_solver,
)
from .tables import CriticalValueModel, DEFAULT_MODEL
from .uniformity import (
    CvSource,
    Decision,
    TestMethod,
    TestOutcome,
    critical_value,
    monte_carlo_p_value,
    nnts1_statistic,
    nnts2_statistic,
    run_uniformity_test,
    simulate_null_statistics,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSample",
    "AngleUnit",
    "ClassicalMethod",
    "ClassicalStatistic",
    "CriticalValueModel",
    "CvSource",
    "DEFAULT_MODEL",
    "Decision",
    "FitResult",
    "NntsError",
    "NntsParams",
    "PowerReport",
    "SimulationPlan",
    "Spectrum",
    "SumMethod",
    "SumResult",
    "TestMethod",
    "TestOutcome",
    "canonicalize",
    "char_fn",
    "classical_statistic",
    "critical_value",
    "density",
    "density_from_spectrum",
    "fit",
    "fit_batch",
    "fit_cv_regression",
    "fixture_names",
    "hermans_rasson_modified",
    "hermans_rasson_original",
    "load_fixture",
    "log_likelihood",
    "make_alternative",
    "monte_carlo_p_value",
    "nnts1_statistic",
    "nnts2_statistic",
    "observed_information",
    "parse_angles",
    "power_study",
    "pycke",
    "rayleigh",
    "read_angles",
    "run_uniformity_test",
    "sample",
    "simulate_critical_values",
    "simulate_null_statistics",
    "spectrum_product",
    "spectrum_to_params",
    "sum_params_closed_form",
    "sum_params_solver",
    "uniform_params",
]
