"""Embedded homing-pigeon vanishing bearings (azimuth, degrees).

Three treatment groups: unmanipulated controls (C), bilateral olfactory
nerve section (ON), and bilateral section of the ophthalmic branch of the
trigeminal nerve (V1). The "reduced" C and ON sets are the 25-bird subsets
used in the two-sample follow-up analysis of the same experiment.
"""

from __future__ import annotations

import numpy as np

from .core import AngleSample
from .errors import InvalidArgument

PIGEON_BEARINGS_DEG = {
    "pigeon-reduced-c": (
        5, 20, 45, 50, 145, 170, 205, 210, 210, 210, 215, 230, 230,
        240, 240, 270, 270, 300, 310, 310, 310, 320, 330, 340, 350,
    ),
    "pigeon-reduced-on": (
        20, 40, 45, 50, 60, 60, 60, 70, 80, 90, 90, 90, 110, 130,
        140, 170, 210, 210, 215, 230, 270, 270, 295, 320, 325,
    ),
    "pigeon-complete-c": (
        1, 2, 3, 8, 10, 10, 10, 12, 14, 18, 18, 19, 42, 46, 46, 48,
        52, 54, 58, 86, 92, 108, 131, 274, 306, 310, 320, 324, 327,
        328, 333, 334, 334, 336, 342, 346, 350, 350, 352, 354, 358,
    ),
    "pigeon-complete-on": (
        4, 11, 38, 47, 52, 79, 106, 106, 120, 126, 138, 142, 146, 154,
        158, 182, 194, 252, 268, 292, 292, 298, 308, 323, 324, 338, 344,
    ),
    "pigeon-complete-v1": (
        3, 4, 4, 4, 6, 6, 8, 16, 17, 21, 22, 24, 24, 40, 44, 46, 70,
        80, 81, 84, 88, 102, 124, 267, 294, 304, 322, 334, 336, 338,
        339, 342, 344, 349, 353, 354, 354, 356, 358, 358,
    ),
}

EXPECTED_COUNTS = {
    "pigeon-reduced-c": 25,
    "pigeon-reduced-on": 25,
    "pigeon-complete-c": 41,
    "pigeon-complete-on": 27,
    "pigeon-complete-v1": 40,
}


def fixture_names():
    return sorted(PIGEON_BEARINGS_DEG)


def load_fixture(name: str) -> AngleSample:
    """Bearings of one group, converted from degrees to radians."""
    try:
        deg = PIGEON_BEARINGS_DEG[name]
    except KeyError:
        raise InvalidArgument(f"unknown fixture {name!r}; choose from {fixture_names()}") from None
    return AngleSample(np.deg2rad(deg))
