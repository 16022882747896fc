"""Synthetic pseudo-empirical breakdown datasets from a demand profile.

Given a histogram of traffic-flow records per intensity level and a
pre-defined capacity distribution, the expected breakdown count at each
level is r_j * F(I_j). Realised counts are drawn as sums of Bernoulli
trials: a single trial against the expectation when it is below one,
otherwise the expectation is split into n components below one so the
realised count can also exceed it.

Randomness is counter-based (Philox) with one substream per (seed,
level index), so per-level draws are order-independent and the same
(profile, distribution, seed) triple always regenerates the same data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import WeibullCapacity

__all__ = [
    "CalibrationSpec",
    "CfbCurve",
    "IntensityProfile",
    "PseudoEmpiricalDataset",
    "calibrate_base_profile",
    "cumulative_frequency",
    "expected_breakdowns",
    "generate_dataset",
    "rescale_profile",
    "sample_breakdowns",
]


@dataclass(frozen=True, eq=False)
class IntensityProfile:
    """Demand histogram: record weight per strictly increasing intensity level."""

    levels: np.ndarray
    records: np.ndarray

    def __post_init__(self) -> None:
        levels = np.asarray(self.levels, dtype=float)
        records = np.asarray(self.records, dtype=float)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("levels must be a non-empty 1-d sequence")
        if records.shape != levels.shape:
            raise ValueError("levels and records must have equal length")
        if not np.all(np.isfinite(levels)) or np.any(levels <= 0.0):
            raise ValueError("levels must be positive and finite")
        if np.any(np.diff(levels) <= 0.0):
            raise ValueError("levels must be strictly increasing")
        if not np.all(np.isfinite(records)) or np.any(records < 0.0):
            raise ValueError("records must be non-negative and finite")
        if records.sum() <= 0.0:
            raise ValueError("total record weight must be positive")
        levels.flags.writeable = False
        records.flags.writeable = False
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "records", records)

    @property
    def total_records(self) -> float:
        return float(self.records.sum())


@dataclass(frozen=True, eq=False)
class PseudoEmpiricalDataset:
    """Realised breakdown counts per level plus the seed that produced them."""

    profile: IntensityProfile
    breakdowns: np.ndarray
    generator_seed: int
    clamp_events: int = 0

    def __post_init__(self) -> None:
        breakdowns = np.asarray(self.breakdowns)
        if breakdowns.shape != self.profile.levels.shape:
            raise ValueError("breakdowns must align with the profile levels")
        if np.any(breakdowns < 0) or np.any(breakdowns != np.floor(breakdowns)):
            raise ValueError("breakdowns must be non-negative integers")
        breakdowns = breakdowns.astype(np.int64)
        if np.any(breakdowns > np.ceil(self.profile.records)):
            raise ValueError("breakdowns cannot exceed ceil(records) at any level")
        breakdowns.flags.writeable = False
        object.__setattr__(self, "breakdowns", breakdowns)

    @property
    def total_breakdowns(self) -> int:
        return int(self.breakdowns.sum())


@dataclass(frozen=True, eq=False)
class CfbCurve:
    """Cumulative breakdown frequency over intensity, theoretical or empirical."""

    levels: np.ndarray
    values: np.ndarray
    flavor: str

    def __post_init__(self) -> None:
        if self.flavor not in ("theoretical", "empirical"):
            raise ValueError(f"flavor must be 'theoretical' or 'empirical', got {self.flavor!r}")
        values = np.asarray(self.values, dtype=float)
        if values.shape != np.asarray(self.levels).shape:
            raise ValueError("values must align with levels")
        if np.any(np.diff(values) < 0.0) or (values.size and values[0] < 0.0):
            raise ValueError("cumulative values must be non-decreasing from zero or above")
        object.__setattr__(self, "values", values)

    @property
    def total(self) -> float:
        return float(self.values[-1])


def expected_breakdowns(profile: IntensityProfile, dist: WeibullCapacity) -> np.ndarray:
    """Per-level expected breakdown counts r_j * F(I_j)."""
    return profile.records * dist.breakdown_probability(profile.levels)


def cumulative_frequency(levels, counts, flavor: str = "empirical") -> CfbCurve:
    """Prefix-sum the per-level counts into a cumulative breakdown curve."""
    counts = np.asarray(counts, dtype=float)
    levels = np.asarray(levels, dtype=float)
    if counts.shape != levels.shape:
        raise ValueError("counts must align with levels")
    if np.any(counts < 0.0):
        raise ValueError("counts must be non-negative")
    return CfbCurve(levels=levels, values=np.cumsum(counts), flavor=flavor)


def _component_count(expected: float) -> int:
    # Single trial below one (threshold rule against the expectation
    # itself); otherwise split wide enough that each component stays
    # below one with headroom to realise more than the expectation.
    if expected < 1.0:
        return 1
    return max(math.ceil(expected) + 1, math.ceil(2.0 * expected))


def _draw_raw(expected: float, rng, component_count: int | None) -> int:
    n = _component_count(expected) if component_count is None else component_count
    if component_count is not None and (n < 1 or n <= expected):
        raise ValueError("component_count must exceed the expected count")
    threshold = expected / n
    draws = np.asarray(rng.random(n), dtype=float)
    return int(np.count_nonzero(draws <= threshold))


def sample_breakdowns(expected: float, records: float, rng, component_count: int | None = None) -> int:
    """Draw a realised breakdown count with mean `expected`.

    `rng` must expose `random(n)` returning n uniforms on [0, 1). The
    result is clamped to ceil(records) so censored record weights never
    go negative downstream.
    """
    if not (0.0 <= expected < records):
        raise ValueError(f"expected breakdowns must satisfy 0 <= expected < records, got {expected} vs {records}")
    if expected == 0.0:
        return 0
    return min(_draw_raw(expected, rng, component_count), math.ceil(records))


def _level_rng(seed: int, level_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, level_index))))


def generate_dataset(profile: IntensityProfile, dist: WeibullCapacity, seed: int) -> PseudoEmpiricalDataset:
    """Generate one pseudo-empirical dataset, deterministically from `seed`."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    expectations = expected_breakdowns(profile, dist)
    breakdowns = np.zeros(profile.levels.size, dtype=np.int64)
    clamp_events = 0
    for index, (expected, records) in enumerate(zip(expectations, profile.records)):
        if records <= 0.0 or expected <= 0.0:
            continue
        raw = _draw_raw(float(expected), _level_rng(seed, index), None)
        ceiling = math.ceil(records)
        if raw > ceiling:
            clamp_events += 1
            raw = ceiling
        breakdowns[index] = raw
    return PseudoEmpiricalDataset(
        profile=profile, breakdowns=breakdowns, generator_seed=seed, clamp_events=clamp_events
    )


def rescale_profile(profile: IntensityProfile, dist: WeibullCapacity, target_expected_breakdowns: float) -> IntensityProfile:
    """Multiply every record weight so the expected breakdown total hits the target.

    The level set is untouched, so the censoring rate (expected breakdowns
    per record) is preserved exactly.
    """
    if not (target_expected_breakdowns > 0.0 and math.isfinite(target_expected_breakdowns)):
        raise ValueError("target_expected_breakdowns must be positive and finite")
    current = float(expected_breakdowns(profile, dist).sum())
    if current <= 0.0:
        raise ValueError("profile has zero expected breakdowns under this distribution")
    multiplier = target_expected_breakdowns / current
    return IntensityProfile(levels=profile.levels, records=profile.records * multiplier)


@dataclass(frozen=True)
class CalibrationSpec:
    """Recipe for a synthetic base demand profile on a regular level grid.

    The base histogram is truncated-normal shaped with its mode near the
    low quantile of the capacity distribution (demand mostly well below
    capacity); `width` defaults to a sixth of the grid span.
    """

    level_min: float
    level_max: float
    level_step: float
    total_records: float
    dist: WeibullCapacity
    target_expected_breakdowns: float
    mode_quantile: float = 0.02
    width: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.level_min < self.level_max):
            raise ValueError("require 0 < level_min < level_max")
        if self.level_step <= 0.0 or self.level_step > (self.level_max - self.level_min):
            raise ValueError("level_step must be positive and fit inside the level range")
        if self.total_records <= 0.0:
            raise ValueError("total_records must be positive")
        if self.target_expected_breakdowns <= 0.0:
            raise ValueError("target_expected_breakdowns must be positive")
        if not (0.0 < self.mode_quantile < 1.0):
            raise ValueError("mode_quantile must lie in (0, 1)")
        if self.width is not None and self.width <= 0.0:
            raise ValueError("width must be positive when given")


def calibrate_base_profile(spec: CalibrationSpec) -> IntensityProfile:
    """Build a demand profile with an exact expected-breakdown total.

    A truncated-normal base shape is tilted by a single multiplicative
    tail parameter tau (each level weighted by tau to the power of its
    normalised distance from the lowest level), then scaled to the record
    total. The tilt preserves the normal shape while moving mass between
    the tails; the expected breakdown total is monotone in tau, so the
    target is found by bisection. Fully deterministic.
    """
    levels = np.arange(spec.level_min, spec.level_max + 0.5 * spec.level_step, spec.level_step)
    mode = spec.dist.quantile(spec.mode_quantile)
    sigma = spec.width if spec.width is not None else (spec.level_max - spec.level_min) / 6.0
    log_base = -0.5 * ((levels - mode) / sigma) ** 2
    tail_distance = (levels - levels[0]) / (levels[-1] - levels[0])
    probabilities = spec.dist.breakdown_probability(levels)

    def expected_total(log_tau: float) -> float:
        log_weights = log_base + log_tau * tail_distance
        weights = np.exp(log_weights - log_weights.max())
        records = spec.total_records * weights / weights.sum()
        return float(np.dot(records, probabilities))

    low, high = -400.0, 400.0
    supremum = spec.total_records * float(probabilities[-1])
    if not (expected_total(low) < spec.target_expected_breakdowns < expected_total(high)):
        raise ValueError(
            f"target {spec.target_expected_breakdowns} is not attainable on this grid; "
            f"feasible totals lie below total_records * F(level_max) = {supremum:.6g} "
            f"(and above {expected_total(low):.6g})"
        )

    target = spec.target_expected_breakdowns
    for _ in range(300):
        mid = 0.5 * (low + high)
        value = expected_total(mid)
        if abs(value - target) <= 1e-12 * target:
            low = high = mid
            break
        if value < target:
            low = mid
        else:
            high = mid
    log_tau = 0.5 * (low + high)

    log_weights = log_base + log_tau * tail_distance
    weights = np.exp(log_weights - log_weights.max())
    records = spec.total_records * weights / weights.sum()
    return IntensityProfile(levels=levels, records=records)
