"""Weibull capacity distribution and breakdown-probability primitives.

The capacity of a road section is modelled as a Weibull random variable;
its CDF evaluated at a traffic-flow intensity is the probability that a
breakdown occurs at that intensity. Intensities are expressed in vehicles
per aggregation interval and are treated as opaque throughout: no unit
conversion happens anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["WeibullCapacity", "log1mexp"]

_LN2 = math.log(2.0)


def log1mexp(t):
    """ln(1 - exp(-t)) for t > 0, stable at both ends.

    Near t = 0 the complement 1 - exp(-t) loses all precision, so the
    expm1 form is used there; for large t the log1p form avoids computing
    exp(-t) - 1 at full magnitude. Split point ln 2 per the usual rule.
    """
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(-t))
        large = np.log1p(-np.exp(-t))
    return np.where(t <= _LN2, small, large)


def _validated_intensity(intensity) -> np.ndarray:
    arr = np.asarray(intensity, dtype=float)
    if arr.size == 0:
        raise ValueError("intensity must be non-empty")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError("intensity must be positive and finite")
    return arr


def _like(reference, values: np.ndarray):
    if isinstance(reference, np.ndarray):
        return values
    return float(values)


@dataclass(frozen=True)
class WeibullCapacity:
    """Weibull capacity model with positive scale and shape.

    `scale` carries intensity units (vehicles per aggregation interval);
    `shape` is dimensionless. By construction cdf(scale) = 1 - 1/e.
    """

    scale: float
    shape: float

    def __post_init__(self) -> None:
        if not (isinstance(self.scale, (int, float)) and math.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError(f"scale must be a positive real, got {self.scale!r}")
        if not (isinstance(self.shape, (int, float)) and math.isfinite(self.shape) and self.shape > 0.0):
            raise ValueError(f"shape must be a positive real, got {self.shape!r}")

    def _exponent(self, arr: np.ndarray) -> np.ndarray:
        # t = (I / scale)^shape, evaluated in log space so extreme ratios
        # degrade to 0 / inf instead of producing spurious NaNs.
        with np.errstate(over="ignore"):
            return np.exp(self.shape * (np.log(arr) - math.log(self.scale)))

    def breakdown_probability(self, intensity):
        """CDF at the given intensity: 1 - exp(-(I/scale)^shape)."""
        arr = _validated_intensity(intensity)
        return _like(intensity, -np.expm1(-self._exponent(arr)))

    def log_survival(self, intensity):
        """ln(1 - F(I)) = -(I/scale)^shape, exact (no cancellation)."""
        arr = _validated_intensity(intensity)
        return _like(intensity, -self._exponent(arr))

    def log_breakdown_probability(self, intensity):
        """ln F(I), stable where F underflows at low intensities."""
        arr = _validated_intensity(intensity)
        return _like(intensity, log1mexp(self._exponent(arr)))

    def quantile(self, probability):
        """Intensity at which the breakdown probability equals `probability`."""
        arr = np.asarray(probability, dtype=float)
        if arr.size == 0:
            raise ValueError("probability must be non-empty")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
            raise ValueError("probability must lie strictly inside (0, 1)")
        t = -np.log1p(-arr)
        return _like(probability, self.scale * t ** (1.0 / self.shape))
