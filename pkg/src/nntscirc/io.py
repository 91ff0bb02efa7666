"""Reading angle data and round-tripping fitted parameters.

Angle files are plain text: one observation per line, optionally preceded
by a single header line. Blank lines and ``#`` comments are skipped.
"""

from __future__ import annotations

import enum
import json
import math

import numpy as np

from .core import TWO_PI, AngleSample, NntsParams
from .errors import ParseError


class AngleUnit(enum.Enum):
    RADIANS = "radians"
    DEGREES = "degrees"
    YEAR_FRACTION = "year-fraction"  # fraction of a cycle in [0, 1)


def _to_radians(value: float, unit: AngleUnit) -> float:
    if unit is AngleUnit.DEGREES:
        return math.radians(value)
    if unit is AngleUnit.YEAR_FRACTION:
        return value * TWO_PI
    return value


def parse_angles(text: str, unit: AngleUnit = AngleUnit.RADIANS, header: bool = False) -> AngleSample:
    """Parse one angle per line; raises ParseError with the 1-based row.

    With ``header=True`` the first non-blank, non-comment line is skipped.
    """
    values = []
    skipped_header = not header
    for row, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not skipped_header:
            skipped_header = True
            continue
        try:
            value = float(stripped)
        except ValueError:
            raise ParseError(f"row {row}: not a number: {stripped!r}", row=row) from None
        if not math.isfinite(value):
            raise ParseError(f"row {row}: non-finite value", row=row)
        values.append(_to_radians(value, unit))
    if not values:
        raise ParseError("no observations found", row=0)
    return AngleSample(np.array(values))


def read_angles(path: str, unit: AngleUnit = AngleUnit.RADIANS, header: bool = False) -> AngleSample:
    with open(path, encoding="utf-8") as fh:
        return parse_angles(fh.read(), unit=unit, header=header)


def params_to_json(params: NntsParams, **extra) -> str:
    doc = params.to_dict()
    doc.update(extra)
    return json.dumps(doc, indent=2)


def params_from_json(text: str) -> NntsParams:
    return NntsParams.from_dict(json.loads(text))


def write_params(path: str, params: NntsParams, **extra) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(params_to_json(params, **extra))
        fh.write("\n")


def read_params(path: str) -> NntsParams:
    with open(path, encoding="utf-8") as fh:
        return params_from_json(fh.read())
