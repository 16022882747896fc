"""Profile CSV parsing and writing.

Schema: header `intensity,records` with an optional trailing `breakdowns`
column, one row per intensity level, levels strictly ascending. Floats
are written with shortest round-trip formatting so parse(write(x)) == x.
Validation failures raise ParseError with the offending line number.
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .generator import IntensityProfile

__all__ = ["ParseError", "read_profile_csv", "write_profile_csv"]

_HEADER_BARE = ["intensity", "records"]
_HEADER_FULL = ["intensity", "records", "breakdowns"]


class ParseError(ValueError):
    """CSV content violates the profile schema; message carries the line."""

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


def _parse_float(text: str, line: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line, f"column '{column}': not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(line, f"column '{column}': must be finite, got {text!r}")
    return value


def read_profile_csv(path) -> tuple[IntensityProfile, np.ndarray | None]:
    """Parse a profile CSV; returns the profile and breakdown counts if present."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, "empty file") from None
        header = [cell.strip() for cell in header]
        if header == _HEADER_BARE:
            has_breakdowns = False
        elif header == _HEADER_FULL:
            has_breakdowns = True
        else:
            raise ParseError(1, f"header must be {','.join(_HEADER_BARE)} or {','.join(_HEADER_FULL)}, got {','.join(header)!r}")

        levels, records, breakdowns = [], [], []
        expected_width = 3 if has_breakdowns else 2
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != expected_width:
                raise ParseError(line, f"expected {expected_width} columns, got {len(row)}")
            intensity = _parse_float(row[0], line, "intensity")
            if intensity <= 0.0:
                raise ParseError(line, f"column 'intensity': must be positive, got {intensity}")
            if levels and intensity <= levels[-1]:
                raise ParseError(line, f"column 'intensity': must be strictly ascending, got {intensity} after {levels[-1]}")
            weight = _parse_float(row[1], line, "records")
            if weight < 0.0:
                raise ParseError(line, f"column 'records': must be non-negative, got {weight}")
            levels.append(intensity)
            records.append(weight)
            if has_breakdowns:
                text = row[2].strip()
                try:
                    count = int(text)
                except ValueError:
                    raise ParseError(line, f"column 'breakdowns': not an integer: {text!r}") from None
                if count < 0:
                    raise ParseError(line, f"column 'breakdowns': must be non-negative, got {count}")
                if count > math.ceil(weight):
                    raise ParseError(line, f"column 'breakdowns': {count} exceeds ceil(records) = {math.ceil(weight)}")
                breakdowns.append(count)

    if not levels:
        raise ParseError(2, "no data rows")
    try:
        profile = IntensityProfile(levels=np.asarray(levels), records=np.asarray(records))
    except ValueError as error:
        raise ParseError(2, str(error)) from None
    return profile, (np.asarray(breakdowns, dtype=np.int64) if has_breakdowns else None)


def write_profile_csv(handle, profile: IntensityProfile, breakdowns=None) -> None:
    """Write a profile (optionally with breakdown counts) to an open text handle."""
    writer = csv.writer(handle, lineterminator="\n")
    if breakdowns is None:
        writer.writerow(_HEADER_BARE)
        for level, weight in zip(profile.levels, profile.records):
            writer.writerow([repr(float(level)), repr(float(weight))])
    else:
        breakdowns = np.asarray(breakdowns)
        if breakdowns.shape != profile.levels.shape:
            raise ValueError("breakdowns must align with the profile levels")
        writer.writerow(_HEADER_FULL)
        for level, weight, count in zip(profile.levels, profile.records, breakdowns):
            writer.writerow([repr(float(level)), repr(float(weight)), str(int(count))])
