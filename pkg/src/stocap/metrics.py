"""Deviation metrics between estimated and ground-truth curves.

Curves are compared per intensity level: the capacity CDF directly, or
cumulative breakdown-frequency curves built from it. Relative errors are
taken with absolute values and weighted by the expected breakdown count
at each level, so levels where breakdowns actually occur dominate.
All relative errors are fractions; render as percentages only at the
presentation layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import WeibullCapacity
from .generator import IntensityProfile, PseudoEmpiricalDataset, expected_breakdowns

__all__ = [
    "CurvePair",
    "MetricReport",
    "are",
    "awre",
    "curve_pair_for_cdf",
    "curve_pair_for_cfb",
    "metric_report",
    "rmse",
]


@dataclass(frozen=True, eq=False)
class CurvePair:
    """Aligned estimated/truth values with per-level comparison weights."""

    levels: np.ndarray
    estimated: np.ndarray
    truth: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        arrays = {}
        for name in ("levels", "estimated", "truth", "weights"):
            arrays[name] = np.asarray(getattr(self, name), dtype=float)
        if arrays["levels"].size == 0:
            raise ValueError("empty comparison set")
        for name, arr in arrays.items():
            if arr.shape != arrays["levels"].shape:
                raise ValueError("curve arrays must have equal length")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, arr)
        if np.any(arrays["truth"] <= 0.0):
            raise ValueError("truth values must be positive on compared levels")
        if np.any(arrays["weights"] < 0.0) or arrays["weights"].sum() <= 0.0:
            raise ValueError("weights must be non-negative with a positive sum")


@dataclass(frozen=True)
class MetricReport:
    rmse: float
    are: float
    awre: float
    levels_compared: int

    def to_dict(self) -> dict:
        return {
            "rmse": self.rmse,
            "are": self.are,
            "awre": self.awre,
            "levels_compared": self.levels_compared,
        }


def rmse(pair: CurvePair) -> float:
    """Root mean squared error over the compared levels."""
    difference = pair.estimated - pair.truth
    return math.sqrt(float(np.mean(difference * difference)))


def are(pair: CurvePair) -> float:
    """Average relative error, |estimated - truth| / truth, unweighted."""
    return float(np.mean(np.abs(pair.estimated - pair.truth) / pair.truth))


def awre(pair: CurvePair) -> float:
    """Average weighted relative error with expected-breakdown weights."""
    relative = np.abs(pair.estimated - pair.truth) / pair.truth
    return float(np.dot(pair.weights, relative) / pair.weights.sum())


def metric_report(pair: CurvePair) -> MetricReport:
    return MetricReport(rmse=rmse(pair), are=are(pair), awre=awre(pair), levels_compared=pair.levels.size)


def curve_pair_for_cdf(fitted: WeibullCapacity, truth: WeibullCapacity, profile: IntensityProfile) -> CurvePair:
    """Pair the fitted and true capacity CDFs over the profile's levels.

    Levels with zero record weight, or where the true CDF underflows to
    zero, are excluded so relative errors stay well defined.
    """
    truth_values = truth.breakdown_probability(profile.levels)
    mask = (profile.records > 0.0) & (truth_values > 0.0)
    if not mask.any():
        raise ValueError("empty comparison set: no usable levels")
    return CurvePair(
        levels=profile.levels[mask],
        estimated=fitted.breakdown_probability(profile.levels[mask]),
        truth=truth_values[mask],
        weights=profile.records[mask] * truth_values[mask],
    )


def curve_pair_for_cfb(
    fitted: WeibullCapacity,
    truth: WeibullCapacity,
    profile: IntensityProfile,
    flavor: str = "theoretical",
    dataset: PseudoEmpiricalDataset | np.ndarray | None = None,
) -> CurvePair:
    """Pair cumulative breakdown-frequency curves.

    The estimated curve accumulates r_j * F_fitted(I_j). Ground truth is
    the theoretical curve from the true distribution, or the realised
    empirical curve when flavor is 'empirical' (`dataset` may be a
    generated dataset or a plain per-level count array). Comparison is
    restricted to levels where the truth curve is already positive.
    """
    expected_true = expected_breakdowns(profile, truth)
    estimated_curve = np.cumsum(profile.records * fitted.breakdown_probability(profile.levels))
    if flavor == "theoretical":
        truth_curve = np.cumsum(expected_true)
    elif flavor == "empirical":
        if dataset is None:
            raise ValueError("empirical flavor requires realised breakdown counts")
        counts = dataset.breakdowns if isinstance(dataset, PseudoEmpiricalDataset) else np.asarray(dataset)
        if counts.shape != profile.levels.shape:
            raise ValueError("breakdown counts must align with the profile levels")
        truth_curve = np.cumsum(counts.astype(float))
    else:
        raise ValueError(f"flavor must be 'theoretical' or 'empirical', got {flavor!r}")
    mask = truth_curve > 0.0
    if not mask.any():
        raise ValueError("empty comparison set: truth curve never becomes positive")
    return CurvePair(
        levels=profile.levels[mask],
        estimated=estimated_curve[mask],
        truth=truth_curve[mask],
        weights=expected_true[mask],
    )
