"""Embedded critical-value tables and interpolation coefficients.

All values come from 10000-replicate null simulations and are reported at
0.1 precision. ``INF`` marks the large-sample (asymptotic) column.
Regression models interpolate the likelihood-ratio test's critical values
to arbitrary sample sizes: separate 1/SS models for m = 1 and m = 2, and
one pooled model in {m, 1/SS, m/SS, 1/SS^2} for m = 3..7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INF = math.inf

ALPHAS = (0.10, 0.05, 0.01)

# standardised-estimator test: {m: {alpha: {n: value}}}
_NNTS1_GRID = (25, 50, 100, 200, 500)
NNTS1_TABLE = {
    1: {
        0.10: (2.7, 2.5, 2.4, 2.3, 2.3),
        0.05: (3.7, 3.3, 3.1, 3.1, 3.1),
        0.01: (8.0, 5.3, 4.8, 4.8, 4.7),
    },
    2: {
        0.10: (8.6, 4.6, 4.3, 4.1, 3.9),
        0.05: (9.2, 5.9, 5.2, 5.0, 4.9),
        0.01: (10.7, 10.1, 7.6, 7.2, 6.8),
    },
    3: {
        0.10: (None, 7.9, 6.1, 5.6, 5.4),
        0.05: (None, 13.1, 7.3, 6.7, 6.4),
        0.01: (None, 15.4, 10.1, 9.0, 8.7),
    },
    4: {
        0.10: (None, 12.5, 7.9, 7.3, 6.8),
        0.05: (None, 13.9, 9.6, 8.4, 7.9),
        0.01: (None, 18.1, 15.0, 11.3, 10.4),
    },
    5: {
        0.10: (None, None, 10.1, 8.6, 8.2),
        0.05: (None, None, 13.0, 10.0, 9.4),
        0.01: (None, None, 20.9, 13.4, 12.1),
    },
}
NNTS1_TABLE = {
    m: {a: {n: v for n, v in zip(_NNTS1_GRID, row) if v is not None} for a, row in d.items()}
    for m, d in NNTS1_TABLE.items()
}

# likelihood-ratio test: per m, the tabulated sample sizes and rows per alpha
_NNTS2_RAW = {
    1: (
        (20, 30, 40, 50, 60, 70, 80, 90, 100, INF),
        {
            0.10: (5.0, 4.9, 4.9, 4.7, 4.7, 4.7, 4.6, 4.6, 4.6, 4.6),
            0.05: (6.6, 6.3, 6.3, 6.1, 6.1, 6.1, 6.1, 6.1, 6.1, 6.1),
            0.01: (10.3, 9.8, 9.8, 9.5, 9.5, 9.4, 9.4, 9.3, 9.3, 9.3),
        },
    ),
    2: (
        (30, 40, 50, 60, 70, 80, 90, 100, 110, INF),
        {
            0.10: (8.5, 8.3, 8.1, 8.1, 8.0, 8.0, 8.0, 7.9, 7.9, 7.9),
            0.05: (10.5, 10.2, 9.9, 9.8, 9.8, 9.7, 9.7, 9.7, 9.7, 9.7),
            0.01: (14.5, 14.3, 14.0, 13.8, 13.7, 13.7, 13.6, 13.5, 13.5, 13.5),
        },
    ),
    3: (
        (40, 50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150, 200, 300, INF),
        {
            0.10: (11.6, 11.3, 11.2, 11.1, 11.0, 11.0, 10.9, 10.9, 10.9, 10.8, 10.8, 10.8, 10.8, 10.8, 10.8),
            0.05: (13.7, 13.5, 13.2, 13.1, 13.1, 13.0, 12.9, 12.9, 12.9, 12.8, 12.8, 12.8, 12.8, 12.8, 12.8),
            0.01: (17.9, 17.9, 17.9, 17.6, 17.5, 17.4, 17.3, 17.3, 17.3, 17.2, 17.1, 17.1, 17.0, 17.0, 17.0),
        },
    ),
    4: (
        (50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150, 200, 300, 400, INF),
        {
            0.10: (14.5, 14.2, 14.1, 13.9, 13.9, 13.8, 13.7, 13.7, 13.7, 13.7, 13.6, 13.6, 13.5, 13.5, 13.5),
            0.05: (16.7, 16.6, 16.4, 16.3, 16.1, 16.0, 15.9, 15.9, 15.9, 15.8, 15.8, 15.8, 15.7, 15.7, 15.7),
            0.01: (21.4, 21.4, 21.3, 20.9, 20.9, 20.8, 20.8, 20.7, 20.6, 20.5, 20.5, 20.3, 20.3, 20.3, 20.3),
        },
    ),
    5: (
        (60, 70, 80, 90, 100, 110, 120, 130, 140, 150, 200, 300, 400, 500, INF),
        {
            0.10: (17.3, 17.1, 16.9, 16.8, 16.7, 16.6, 16.5, 16.5, 16.4, 16.3, 16.3, 16.2, 16.1, 16.1, 16.1),
            0.05: (19.7, 19.6, 19.5, 19.2, 19.1, 19.0, 18.9, 18.9, 18.8, 18.7, 18.6, 18.6, 18.5, 18.5, 18.5),
            0.01: (24.6, 24.6, 24.5, 24.4, 24.3, 24.2, 24.0, 24.0, 23.8, 23.6, 23.6, 23.5, 23.4, 23.4, 23.4),
        },
    ),
    6: (
        (70, 80, 90, 100, 110, 120, 130, 140, 150, 200, 300, 400, 500, 600, INF),
        {
            0.10: (20.0, 19.9, 19.7, 19.5, 19.4, 19.3, 19.2, 19.1, 19.1, 18.9, 18.8, 18.7, 18.7, 18.7, 18.7),
            0.05: (22.6, 22.4, 22.4, 22.1, 22.0, 21.9, 21.9, 21.8, 21.7, 21.5, 21.3, 21.2, 21.2, 21.2, 21.2),
            0.01: (27.9, 27.8, 27.8, 27.6, 27.6, 27.3, 27.3, 27.1, 27.1, 26.7, 26.6, 26.5, 26.5, 26.5, 26.5),
        },
    ),
    7: (
        (80, 90, 100, 110, 120, 130, 140, 150, 200, 300, 400, 500, 600, 700, INF),
        {
            0.10: (22.7, 22.6, 22.4, 22.2, 22.1, 22.0, 21.9, 21.9, 21.6, 21.4, 21.2, 21.2, 21.2, 21.2, 21.2),
            0.05: (25.4, 25.4, 25.1, 25.0, 24.9, 24.9, 24.7, 24.6, 24.3, 24.1, 24.0, 24.0, 23.9, 23.9, 23.9),
            0.01: (31.0, 31.0, 30.9, 30.8, 30.6, 30.6, 30.5, 30.5, 29.9, 29.8, 29.6, 29.6, 29.6, 29.6, 29.6),
        },
    ),
}
NNTS2_TABLE = {
    m: {a: dict(zip(grid, rows[a])) for a in ALPHAS} for m, (grid, rows) in _NNTS2_RAW.items()
}

# interpolation coefficients (intercept, coef_m, coef_1/SS, coef_m/SS, coef_1/SS^2)
REGRESSION = {
    1: {
        0.10: (4.5128, 0.0, 10.8062, 0.0, 0.0),
        0.05: (5.9269, 0.0, 12.7461, 0.0, 0.0),
        0.01: (9.0630, 0.0, 24.5377, 0.0, 0.0),
    },
    2: {
        0.10: (7.6807, 0.0, 24.1698, 0.0, 0.0),
        0.05: (9.3118, 0.0, 34.1750, 0.0, 0.0),
        0.01: (13.1063, 0.0, 43.7094, 0.0, 0.0),
    },
    "3to7": {
        0.10: (3.2703, 2.5317, -108.3235, 32.8331, 1618.5535),
        0.05: (4.6077, 2.7291, -91.8270, 31.8820, 1368.6187),
        0.01: (7.2135, 3.1555, 26.9335, 21.0319, -1549.4894),
    },
}

MIN_SAMPLE_SIZE = {1: 15, 2: 25, 3: 40, 4: 50, 5: 60, 6: 70, 7: 80}
ASYMPTOTIC_SAMPLE_SIZE = {1: 85, 2: 98, 3: 173, 4: 203, 5: 278, 6: 386, 7: 562}


def regression_coefficients(m: int, alpha: float):
    key = m if m in (1, 2) else "3to7"
    return REGRESSION[key][alpha]


def evaluate_regression(m: int, alpha: float, n: int) -> float:
    """Interpolated critical value before rounding to 0.1."""
    b0, bm, binv, bminv, binv2 = regression_coefficients(m, alpha)
    return b0 + bm * m + binv / n + bminv * m / n + binv2 / n**2


@dataclass(frozen=True)
class CriticalValueModel:
    """Lookup tables, interpolation coefficients, and sample-size metadata."""

    table1: dict = field(default_factory=lambda: NNTS1_TABLE)
    table2: dict = field(default_factory=lambda: NNTS2_TABLE)
    regression: dict = field(default_factory=lambda: REGRESSION)
    min_ss: dict = field(default_factory=lambda: MIN_SAMPLE_SIZE)
    asy_ss: dict = field(default_factory=lambda: ASYMPTOTIC_SAMPLE_SIZE)


DEFAULT_MODEL = CriticalValueModel()
