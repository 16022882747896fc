"""Censored maximum-likelihood estimation of the Weibull capacity model.

Observations arrive regrouped by intensity level: at level j there are
r_j records in total (fractional weights allowed, to support resampled
profiles) of which b_j ended in a breakdown. The log-likelihood is

    l(scale, shape) = sum_j [ b_j * ln F(I_j) + (r_j - b_j) * ln(1 - F(I_j)) ]

with F the Weibull capacity CDF. Breakdown terms use the stable ln F
formulation; survival terms are exact since ln(1 - F) = -(I/scale)^shape.

The optimiser is a derivative-free simplex search over (ln scale,
ln shape), which keeps positivity implicit and conditions the problem;
multiple jittered starts guard against bad seeds. A brute-force grid
search is provided as an independent oracle for testing the optimiser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .capacity import WeibullCapacity, log1mexp

__all__ = [
    "CensoredHistogram",
    "EstimateResult",
    "FitOptions",
    "NonIdentifiableError",
    "fit",
    "grid_search",
    "log_likelihood",
    "predicted_breakdowns",
]


class NonIdentifiableError(ValueError):
    """Raised when the data cannot pin down the capacity distribution."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        messages = {
            "no-breakdowns": "no breakdowns recorded: all observations are censored",
            "no-survivals": "no survivals recorded: every record ended in a breakdown",
        }
        super().__init__(messages.get(reason, reason))


@dataclass(frozen=True, eq=False)
class CensoredHistogram:
    """Per-level record weights and breakdown counts, levels ascending."""

    levels: np.ndarray
    records: np.ndarray
    breakdowns: np.ndarray

    def __post_init__(self) -> None:
        levels = np.asarray(self.levels, dtype=float)
        records = np.asarray(self.records, dtype=float)
        breakdowns = np.asarray(self.breakdowns)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("levels must be a non-empty 1-d sequence")
        if records.shape != levels.shape or breakdowns.shape != levels.shape:
            raise ValueError("levels, records and breakdowns must have equal length")
        if not np.all(np.isfinite(levels)) or np.any(levels <= 0.0):
            raise ValueError("levels must be positive and finite")
        if np.any(np.diff(levels) <= 0.0):
            raise ValueError("levels must be strictly increasing")
        if not np.all(np.isfinite(records)) or np.any(records < 0.0):
            raise ValueError("records must be non-negative and finite")
        if records.sum() <= 0.0:
            raise ValueError("total record weight must be positive")
        if np.any(breakdowns != np.floor(breakdowns)) or np.any(breakdowns < 0):
            raise ValueError("breakdowns must be non-negative integers")
        breakdowns = breakdowns.astype(np.int64)
        if np.any(breakdowns > np.ceil(records)):
            raise ValueError("breakdowns cannot exceed ceil(records) at any level")
        for name, arr in (("levels", levels), ("records", records), ("breakdowns", breakdowns)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def total_records(self) -> float:
        return float(self.records.sum())

    @property
    def total_breakdowns(self) -> int:
        return int(self.breakdowns.sum())


@dataclass(frozen=True)
class FitOptions:
    """Knobs for `fit`; defaults follow the documented convergence policy."""

    fixed_shape: float | None = None
    multistart_count: int = 5
    tolerance: float = 1e-8            # simplex diameter in log-parameter space
    likelihood_tolerance: float = 1e-10
    max_iterations: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.fixed_shape is not None and not (math.isfinite(self.fixed_shape) and self.fixed_shape > 0.0):
            raise ValueError("fixed_shape must be a positive real when given")
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be at least 1")
        if self.tolerance <= 0.0 or self.likelihood_tolerance <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class EstimateResult:
    fitted: WeibullCapacity
    log_likelihood: float
    converged: bool
    iterations: int
    fixed_shape: float | None = None


def _negative_log_likelihood_fn(data: CensoredHistogram) -> Callable[[float, float], float]:
    """Build a fast (scale, shape) -> -l evaluator with precomputed masks."""
    log_levels = np.log(data.levels)
    survivors = data.records - data.breakdowns
    survivor_mask = survivors > 0.0
    survivor_weights = survivors[survivor_mask]
    survivor_log_levels = log_levels[survivor_mask]
    breakdown_mask = data.breakdowns > 0
    breakdown_counts = data.breakdowns[breakdown_mask].astype(float)
    breakdown_log_levels = log_levels[breakdown_mask]
    has_breakdowns = bool(breakdown_mask.any())
    has_survivors = bool(survivor_mask.any())

    def negative(scale: float, shape: float) -> float:
        log_scale = math.log(scale)
        total = 0.0
        with np.errstate(over="ignore"):
            if has_survivors:
                t_surv = np.exp(shape * (survivor_log_levels - log_scale))
                total -= float(np.dot(survivor_weights, t_surv))
            if has_breakdowns:
                t_break = np.exp(shape * (breakdown_log_levels - log_scale))
                total += float(np.dot(breakdown_counts, log1mexp(t_break)))
        return -total

    return negative


def log_likelihood(data: CensoredHistogram, dist: WeibullCapacity) -> float:
    """Corrected censored log-likelihood; -inf only when a breakdown term
    sits at an intensity where F underflows to exactly zero."""
    return -_negative_log_likelihood_fn(data)(dist.scale, dist.shape)


def predicted_breakdowns(data: CensoredHistogram, dist: WeibullCapacity) -> float:
    """Expected breakdown total under `dist`: sum_j r_j * F(I_j)."""
    return float(np.dot(data.records, dist.breakdown_probability(data.levels)))


def _check_identifiable(data: CensoredHistogram) -> None:
    if data.total_breakdowns == 0:
        raise NonIdentifiableError("no-breakdowns")
    if data.total_records - data.total_breakdowns <= 0.0:
        raise NonIdentifiableError("no-survivals")


def _moment_start(data: CensoredHistogram) -> tuple[float, float]:
    # Scale seed: intensity where the cumulative breakdown fraction first
    # exceeds 0.63 of its total (F(scale) = 1 - 1/e ~ 0.632); shape seed 6.
    cumulative = np.cumsum(data.breakdowns, dtype=float)
    fraction = cumulative / cumulative[-1]
    index = int(np.argmax(fraction > 0.63))
    return float(data.levels[index]), 6.0


def fit(data: CensoredHistogram, options: FitOptions = FitOptions()) -> EstimateResult:
    """Maximise the censored log-likelihood over (scale, shape).

    Runs `multistart_count` simplex searches in log-parameter space and
    returns the best; with `fixed_shape` set only the scale is optimised.
    Raises NonIdentifiableError for all-censored or all-breakdown data;
    an exhausted iteration cap is reported through `converged=False`.
    """
    _check_identifiable(data)
    negative = _negative_log_likelihood_fn(data)
    scale0, shape0 = _moment_start(data)
    if options.fixed_shape is not None:
        shape0 = options.fixed_shape

    rng = np.random.default_rng(options.seed)
    starts = [(scale0, shape0)]
    for _ in range(options.multistart_count - 1):
        jitter_scale, jitter_shape = rng.uniform(0.7, 1.3, size=2)
        starts.append((scale0 * jitter_scale, shape0 * jitter_shape))

    simplex_options = {
        "xatol": options.tolerance,
        "fatol": options.likelihood_tolerance,
        "maxiter": options.max_iterations,
        "maxfev": options.max_iterations,
    }

    best = None
    for start_scale, start_shape in starts:
        if options.fixed_shape is not None:
            objective = lambda x: negative(math.exp(x[0]), options.fixed_shape)  # noqa: E731
            x0 = np.array([math.log(start_scale)])
        else:
            objective = lambda x: negative(math.exp(x[0]), math.exp(x[1]))  # noqa: E731
            x0 = np.array([math.log(start_scale), math.log(start_shape)])
        result = minimize(objective, x0, method="Nelder-Mead", options=simplex_options)
        if best is None or result.fun < best.fun:
            best = result

    fitted_scale = math.exp(best.x[0])
    fitted_shape = options.fixed_shape if options.fixed_shape is not None else math.exp(best.x[1])
    return EstimateResult(
        fitted=WeibullCapacity(scale=fitted_scale, shape=fitted_shape),
        log_likelihood=-float(best.fun),
        converged=bool(best.success),
        iterations=int(best.nit),
        fixed_shape=options.fixed_shape,
    )


def grid_search(
    data: CensoredHistogram,
    scale_range: tuple[float, float],
    shape_range: tuple[float, float],
    steps: int,
) -> tuple[WeibullCapacity, float]:
    """Exhaustive log-likelihood evaluation on a geometric parameter grid.

    Brute-force oracle used to verify `fit`; returns the best grid cell
    and its log-likelihood. `steps` applies to both axes.
    """
    for name, (low, high) in (("scale_range", scale_range), ("shape_range", shape_range)):
        if not (0.0 < low <= high) or not (math.isfinite(low) and math.isfinite(high)):
            raise ValueError(f"{name} must satisfy 0 < low <= high, got {(low, high)!r}")
    if steps < 2:
        raise ValueError("steps must be at least 2 per axis")

    scales = np.geomspace(scale_range[0], scale_range[1], steps)
    shapes = np.geomspace(shape_range[0], shape_range[1], steps)
    log_levels = np.log(data.levels)
    survivors = data.records - data.breakdowns
    survivor_mask = survivors > 0.0
    breakdown_mask = data.breakdowns > 0
    breakdown_counts = data.breakdowns[breakdown_mask].astype(float)

    best_value = -math.inf
    best_pair = (scales[0], shapes[0])
    log_scales = np.log(scales)
    for shape in shapes:
        with np.errstate(over="ignore"):
            # (cells, levels) exponent table for this shape value
            t = np.exp(shape * (log_levels[None, :] - log_scales[:, None]))
            values = -(t[:, survivor_mask] @ survivors[survivor_mask])
            if breakdown_counts.size:
                values = values + log1mexp(t[:, breakdown_mask]) @ breakdown_counts
        index = int(np.argmax(values))
        if values[index] > best_value:
            best_value = float(values[index])
            best_pair = (float(scales[index]), float(shape))

    return WeibullCapacity(scale=best_pair[0], shape=best_pair[1]), best_value
