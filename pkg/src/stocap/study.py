"""Reliability study harness: distributions x sample sizes x replications.

For every configured capacity distribution and target expected-breakdown
count, the base demand profile is rescaled to the target, `replications`
pseudo-empirical datasets are generated, each is fitted by censored MLE,
and curve-error metrics are computed against the known ground truth.
Run seeds derive from (master_seed, distribution, size, replication)
through a stable hash, so results are independent of execution order and
of the number of worker processes.
"""

from __future__ import annotations

import csv
import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import spearmanr

from .capacity import WeibullCapacity
from .estimator import CensoredHistogram, FitOptions, fit, predicted_breakdowns
from .generator import (
    CalibrationSpec,
    IntensityProfile,
    calibrate_base_profile,
    expected_breakdowns,
    generate_dataset,
    rescale_profile,
)
from .metrics import MetricReport, curve_pair_for_cdf, curve_pair_for_cfb, metric_report
from .regression import RegressionObservation

__all__ = [
    "BaseProfileSpec",
    "CellSummary",
    "ConfigError",
    "DistributionSpec",
    "RESULTS_CSV_COLUMNS",
    "RunRecord",
    "StudyConfig",
    "StudyResults",
    "StudySummary",
    "config_from_dict",
    "config_to_dict",
    "default_config",
    "read_results_csv",
    "run_study",
    "summarize",
    "summary_to_dict",
    "to_regression_observations",
    "write_results_csv",
]

SCHEMA_VERSION = 1

RESPONSE_CHOICES = ("cdf-awre", "cfb-awre")


class ConfigError(ValueError):
    """Invalid study configuration; the message names the offending field."""


@dataclass(frozen=True)
class DistributionSpec:
    capacity: WeibullCapacity
    profile_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.profile_scale <= 0.0:
            raise ConfigError("field 'profile_scale': must be positive")


@dataclass(frozen=True)
class BaseProfileSpec:
    """Grid and totals for the calibrated base demand profile."""

    level_min: float = 3.0
    level_max: float = 249.0
    level_step: float = 3.0
    total_records: float = 7447.0
    target_expected_breakdowns: float = 52.0
    mode_quantile: float = 0.02
    width: float | None = None


@dataclass(frozen=True)
class StudyConfig:
    distributions: tuple[DistributionSpec, ...] = (
        DistributionSpec(WeibullCapacity(scale=150.0, shape=6.5), profile_scale=1.0),
        DistributionSpec(WeibullCapacity(scale=160.0, shape=7.0), profile_scale=2.0),
        DistributionSpec(WeibullCapacity(scale=183.0, shape=7.5), profile_scale=8.0),
    )
    target_breakdowns: tuple[float, ...] = (13.0, 26.0, 52.0, 78.0, 104.0, 156.0, 208.0, 260.0)
    replications: int = 15
    master_seed: int = 20260809
    base_profile: BaseProfileSpec = field(default_factory=BaseProfileSpec)
    estimator: FitOptions = field(default_factory=FitOptions)

    def __post_init__(self) -> None:
        if not self.distributions:
            raise ConfigError("field 'distributions': must be non-empty")
        if not self.target_breakdowns:
            raise ConfigError("field 'target_breakdowns': must be non-empty")
        targets = tuple(float(t) for t in self.target_breakdowns)
        if any(t <= 0.0 for t in targets):
            raise ConfigError("field 'target_breakdowns': targets must be positive")
        if any(b <= a for a, b in zip(targets, targets[1:])):
            raise ConfigError("field 'target_breakdowns': targets must be strictly ascending")
        if self.replications < 1:
            raise ConfigError("field 'replications': must be at least 1")
        if self.master_seed < 0:
            raise ConfigError("field 'master_seed': must be a non-negative integer")
        object.__setattr__(self, "target_breakdowns", targets)
        object.__setattr__(self, "distributions", tuple(self.distributions))


def default_config() -> StudyConfig:
    return StudyConfig()


@dataclass(frozen=True)
class RunRecord:
    dist_index: int
    dist_scale: float
    dist_shape: float
    profile_scale: float
    target_breakdowns: float
    replication: int
    seed: int
    total_records: float
    theoretical_breakdowns: float
    recorded_breakdowns: int
    identifiable: bool
    converged: bool
    fitted_scale: float | None
    fitted_shape: float | None
    log_likelihood: float | None
    predicted_breakdowns: float | None
    clamp_events: int
    cdf: MetricReport | None
    cfb: MetricReport | None
    cfb_empirical: MetricReport | None


@dataclass(frozen=True)
class CellSummary:
    """Across-replication statistics for one (distribution, size) cell."""

    dist_index: int
    target_breakdowns: float
    runs_total: int
    runs_identifiable: int
    runs_converged: int
    means: dict
    stds: dict
    quantiles: dict  # relative-error metrics -> (min, q1, median, q3, max)


@dataclass(frozen=True)
class StudyResults:
    config: StudyConfig
    runs: tuple[RunRecord, ...]
    cells: tuple[CellSummary, ...]


def derive_seed(master_seed: int, *path: int) -> int:
    """Stable, order-insensitive seed for a run identified by its indices."""
    return int(np.random.SeedSequence((master_seed, *path)).generate_state(1, np.uint64)[0])


def build_cell_profiles(config: StudyConfig) -> dict:
    """Calibrate the base profile and rescale it for every study cell.

    The base shape is calibrated once against the first distribution;
    other distributions reuse it with their record multiplier, then every
    cell is rescaled so its expected breakdown total is exactly on target.
    """
    base_spec = config.base_profile
    base = calibrate_base_profile(
        CalibrationSpec(
            level_min=base_spec.level_min,
            level_max=base_spec.level_max,
            level_step=base_spec.level_step,
            total_records=base_spec.total_records,
            dist=config.distributions[0].capacity,
            target_expected_breakdowns=base_spec.target_expected_breakdowns,
            mode_quantile=base_spec.mode_quantile,
            width=base_spec.width,
        )
    )
    profiles = {}
    for dist_index, spec in enumerate(config.distributions):
        scaled = IntensityProfile(levels=base.levels, records=base.records * spec.profile_scale)
        for size_index, target in enumerate(config.target_breakdowns):
            profiles[(dist_index, size_index)] = rescale_profile(scaled, spec.capacity, target)
    return profiles


@dataclass(frozen=True)
class _RunTask:
    dist_index: int
    dist: WeibullCapacity
    profile_scale: float
    target: float
    replication: int
    profile: IntensityProfile
    seed: int
    fit_options: FitOptions


def _execute_run(task: _RunTask) -> RunRecord:
    dataset = generate_dataset(task.profile, task.dist, task.seed)
    recorded = dataset.total_breakdowns
    theoretical = float(expected_breakdowns(task.profile, task.dist).sum())
    common = dict(
        dist_index=task.dist_index,
        dist_scale=task.dist.scale,
        dist_shape=task.dist.shape,
        profile_scale=task.profile_scale,
        target_breakdowns=task.target,
        replication=task.replication,
        seed=task.seed,
        total_records=task.profile.total_records,
        theoretical_breakdowns=theoretical,
        recorded_breakdowns=recorded,
        clamp_events=dataset.clamp_events,
    )
    histogram_ok = recorded >= 1 and task.profile.total_records - recorded > 0.0
    if not histogram_ok:
        return RunRecord(
            identifiable=False,
            converged=False,
            fitted_scale=None,
            fitted_shape=None,
            log_likelihood=None,
            predicted_breakdowns=None,
            cdf=None,
            cfb=None,
            cfb_empirical=None,
            **common,
        )

    histogram = CensoredHistogram(
        levels=task.profile.levels, records=task.profile.records, breakdowns=dataset.breakdowns
    )
    estimate = fit(histogram, task.fit_options)
    fitted = estimate.fitted
    return RunRecord(
        identifiable=True,
        converged=estimate.converged,
        fitted_scale=fitted.scale,
        fitted_shape=fitted.shape,
        log_likelihood=estimate.log_likelihood,
        predicted_breakdowns=predicted_breakdowns(histogram, fitted),
        cdf=metric_report(curve_pair_for_cdf(fitted, task.dist, task.profile)),
        cfb=metric_report(curve_pair_for_cfb(fitted, task.dist, task.profile, "theoretical")),
        cfb_empirical=metric_report(
            curve_pair_for_cfb(fitted, task.dist, task.profile, "empirical", dataset=dataset)
        ),
        **common,
    )


_METRIC_FIELDS = ("rmse", "are", "awre")
_METRIC_GROUPS = (("cdf", "cdf"), ("cfb", "cfb"), ("cfb_empirical", "cfb_emp"))
_RELATIVE_METRICS = tuple(
    f"{name}_{suffix}" for _, suffix in _METRIC_GROUPS for name in ("are", "awre")
)


def _run_metric_values(run: RunRecord) -> dict:
    values = {
        "fitted_scale": run.fitted_scale,
        "fitted_shape": run.fitted_shape,
        "recorded_breakdowns": float(run.recorded_breakdowns),
        "predicted_breakdowns": run.predicted_breakdowns,
    }
    for attribute, suffix in _METRIC_GROUPS:
        report = getattr(run, attribute)
        for name in _METRIC_FIELDS:
            values[f"{name}_{suffix}"] = getattr(report, name)
    return values


def _summarize_cell(dist_index: int, target: float, runs: Sequence[RunRecord]) -> CellSummary:
    identifiable = [run for run in runs if run.identifiable]
    means, stds, quantiles = {}, {}, {}
    if identifiable:
        table = {key: [] for key in _run_metric_values(identifiable[0])}
        for run in identifiable:
            for key, value in _run_metric_values(run).items():
                table[key].append(value)
        for key, column in table.items():
            data = np.asarray(column, dtype=float)
            means[key] = float(data.mean())
            stds[key] = float(data.std(ddof=1)) if data.size > 1 else None
        for key in _RELATIVE_METRICS:
            data = np.asarray(table[key], dtype=float)
            quantiles[key] = tuple(
                float(v) for v in np.quantile(data, (0.0, 0.25, 0.5, 0.75, 1.0))
            )
    return CellSummary(
        dist_index=dist_index,
        target_breakdowns=target,
        runs_total=len(runs),
        runs_identifiable=len(identifiable),
        runs_converged=sum(1 for run in runs if run.converged),
        means=means,
        stds=stds,
        quantiles=quantiles,
    )


def run_study(config: StudyConfig, jobs: int = 1) -> StudyResults:
    """Execute the full study; `jobs` > 1 runs cells in worker processes.

    Results are deterministic and identical for any job count: each run
    is a pure function of its derived seed. Non-identifiable replications
    (no breakdowns realised) are kept as flagged records.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    profiles = build_cell_profiles(config)
    tasks = []
    for dist_index, spec in enumerate(config.distributions):
        for size_index, target in enumerate(config.target_breakdowns):
            profile = profiles[(dist_index, size_index)]
            for replication in range(config.replications):
                tasks.append(
                    _RunTask(
                        dist_index=dist_index,
                        dist=spec.capacity,
                        profile_scale=spec.profile_scale,
                        target=target,
                        replication=replication,
                        profile=profile,
                        seed=derive_seed(config.master_seed, dist_index, size_index, replication, 0),
                        fit_options=dataclasses.replace(
                            config.estimator,
                            seed=derive_seed(config.master_seed, dist_index, size_index, replication, 1),
                        ),
                    )
                )
    if jobs == 1:
        runs = [_execute_run(task) for task in tasks]
    else:
        chunksize = max(1, len(tasks) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_execute_run, tasks, chunksize=chunksize))
    runs.sort(key=lambda run: (run.dist_index, run.target_breakdowns, run.replication))

    cells = []
    for dist_index in range(len(config.distributions)):
        for target in config.target_breakdowns:
            cell_runs = [
                run for run in runs if run.dist_index == dist_index and run.target_breakdowns == target
            ]
            cells.append(_summarize_cell(dist_index, target, cell_runs))
    return StudyResults(config=config, runs=tuple(runs), cells=tuple(cells))


@dataclass(frozen=True)
class StudySummary:
    """Study-level aggregates: error vs sample size, pooled over distributions."""

    per_target: tuple[dict, ...]
    scatter: tuple[tuple[int, float], ...]  # (recorded breakdowns, AWRE-CDF)
    spearman_rho: float | None
    runs_total: int
    runs_identifiable: int


def summarize(results: StudyResults) -> StudySummary:
    """Aggregate AWRE-CDF against recorded breakdowns across all runs."""
    if not results.runs:
        raise ValueError("no runs to summarize")
    identifiable = [run for run in results.runs if run.identifiable]
    scatter = tuple((run.recorded_breakdowns, run.cdf.awre) for run in identifiable)
    per_target = []
    for target in results.config.target_breakdowns:
        rows = [run for run in identifiable if run.target_breakdowns == target]
        entry = {
            "target_breakdowns": target,
            "runs_identifiable": len(rows),
            "mean_recorded_breakdowns": float(np.mean([r.recorded_breakdowns for r in rows])) if rows else None,
        }
        if rows:
            awre_values = np.asarray([r.cdf.awre for r in rows])
            entry["awre_cdf_mean"] = float(awre_values.mean())
            minimum, q1, median, q3, maximum = np.quantile(awre_values, (0.0, 0.25, 0.5, 0.75, 1.0))
            entry["awre_cdf_quantiles"] = {
                "min": float(minimum), "q1": float(q1), "median": float(median),
                "q3": float(q3), "max": float(maximum),
            }
        else:
            entry["awre_cdf_mean"] = None
            entry["awre_cdf_quantiles"] = None
        per_target.append(entry)

    rho = None
    if len(scatter) >= 3:
        log_breakdowns = np.log([b for b, _ in scatter])
        awre_values = np.asarray([a for _, a in scatter])
        if np.ptp(log_breakdowns) > 0.0 and np.ptp(awre_values) > 0.0:
            rho = float(spearmanr(log_breakdowns, awre_values).statistic)
    return StudySummary(
        per_target=tuple(per_target),
        scatter=scatter,
        spearman_rho=rho,
        runs_total=len(results.runs),
        runs_identifiable=len(identifiable),
    )


def to_regression_observations(results: StudyResults, response: str = "cdf-awre") -> list[RegressionObservation]:
    """One observation per identifiable run; non-identifiable runs are excluded."""
    if response not in RESPONSE_CHOICES:
        raise ValueError(f"response must be one of {RESPONSE_CHOICES}, got {response!r}")
    observations = []
    for run in results.runs:
        if not run.identifiable:
            continue
        report = run.cdf if response == "cdf-awre" else run.cfb
        observations.append(
            RegressionObservation(
                total_records=run.total_records,
                recorded_breakdowns=run.recorded_breakdowns,
                response=report.awre,
            )
        )
    return observations


# ---------------------------------------------------------------------------
# Serialization

RESULTS_CSV_COLUMNS = (
    "schema_version",
    "dist_index",
    "dist_scale",
    "dist_shape",
    "profile_scale",
    "target_breakdowns",
    "replication",
    "seed",
    "total_records",
    "theoretical_breakdowns",
    "recorded_breakdowns",
    "identifiable",
    "converged",
    "fitted_scale",
    "fitted_shape",
    "log_likelihood",
    "predicted_breakdowns",
    "clamp_events",
    "rmse_cdf",
    "are_cdf",
    "awre_cdf",
    "levels_cdf",
    "rmse_cfb",
    "are_cfb",
    "awre_cfb",
    "levels_cfb",
    "rmse_cfb_emp",
    "are_cfb_emp",
    "awre_cfb_emp",
    "levels_cfb_emp",
)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _report_cells(report: MetricReport | None) -> list:
    if report is None:
        return [None, None, None, None]
    return [report.rmse, report.are, report.awre, report.levels_compared]


def write_results_csv(results: StudyResults, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RESULTS_CSV_COLUMNS)
        for run in results.runs:
            row = [
                SCHEMA_VERSION,
                run.dist_index,
                run.dist_scale,
                run.dist_shape,
                run.profile_scale,
                run.target_breakdowns,
                run.replication,
                run.seed,
                run.total_records,
                run.theoretical_breakdowns,
                run.recorded_breakdowns,
                run.identifiable,
                run.converged,
                run.fitted_scale,
                run.fitted_shape,
                run.log_likelihood,
                run.predicted_breakdowns,
                run.clamp_events,
                *_report_cells(run.cdf),
                *_report_cells(run.cfb),
                *_report_cells(run.cfb_empirical),
            ]
            writer.writerow([_format_cell(value) for value in row])


def _parse_optional_float(text: str) -> float | None:
    return None if text == "" else float(text)


def _parse_report(row: dict, suffix: str) -> MetricReport | None:
    rmse_text = row[f"rmse_{suffix}"]
    if rmse_text == "":
        return None
    return MetricReport(
        rmse=float(rmse_text),
        are=float(row[f"are_{suffix}"]),
        awre=float(row[f"awre_{suffix}"]),
        levels_compared=int(row[f"levels_{suffix}"]),
    )


def read_results_csv(path) -> list[RunRecord]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or tuple(reader.fieldnames) != RESULTS_CSV_COLUMNS:
            raise ValueError(f"unexpected results CSV header: {reader.fieldnames}")
        runs = []
        for row in reader:
            if int(row["schema_version"]) != SCHEMA_VERSION:
                raise ValueError(f"unsupported schema_version {row['schema_version']}")
            runs.append(
                RunRecord(
                    dist_index=int(row["dist_index"]),
                    dist_scale=float(row["dist_scale"]),
                    dist_shape=float(row["dist_shape"]),
                    profile_scale=float(row["profile_scale"]),
                    target_breakdowns=float(row["target_breakdowns"]),
                    replication=int(row["replication"]),
                    seed=int(row["seed"]),
                    total_records=float(row["total_records"]),
                    theoretical_breakdowns=float(row["theoretical_breakdowns"]),
                    recorded_breakdowns=int(row["recorded_breakdowns"]),
                    identifiable=row["identifiable"] == "true",
                    converged=row["converged"] == "true",
                    fitted_scale=_parse_optional_float(row["fitted_scale"]),
                    fitted_shape=_parse_optional_float(row["fitted_shape"]),
                    log_likelihood=_parse_optional_float(row["log_likelihood"]),
                    predicted_breakdowns=_parse_optional_float(row["predicted_breakdowns"]),
                    clamp_events=int(row["clamp_events"]),
                    cdf=_parse_report(row, "cdf"),
                    cfb=_parse_report(row, "cfb"),
                    cfb_empirical=_parse_report(row, "cfb_emp"),
                )
            )
    return runs


def _cell_to_dict(cell: CellSummary) -> dict:
    return {
        "dist_index": cell.dist_index,
        "target_breakdowns": cell.target_breakdowns,
        "runs_total": cell.runs_total,
        "runs_identifiable": cell.runs_identifiable,
        "runs_converged": cell.runs_converged,
        "means": cell.means,
        "stds": cell.stds,
        "quantiles": {key: list(value) for key, value in cell.quantiles.items()},
    }


def summary_to_dict(results: StudyResults) -> dict:
    summary = summarize(results)
    return {
        "schema_version": SCHEMA_VERSION,
        "runs_total": summary.runs_total,
        "runs_identifiable": summary.runs_identifiable,
        "spearman_rho_log_breakdowns_vs_awre_cdf": summary.spearman_rho,
        "per_target": list(summary.per_target),
        "cells": [_cell_to_dict(cell) for cell in results.cells],
    }


def config_to_dict(config: StudyConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "master_seed": config.master_seed,
        "replications": config.replications,
        "target_breakdowns": list(config.target_breakdowns),
        "distributions": [
            {"scale": spec.capacity.scale, "shape": spec.capacity.shape, "profile_scale": spec.profile_scale}
            for spec in config.distributions
        ],
        "base_profile": {
            "level_min": config.base_profile.level_min,
            "level_max": config.base_profile.level_max,
            "level_step": config.base_profile.level_step,
            "total_records": config.base_profile.total_records,
            "target_expected_breakdowns": config.base_profile.target_expected_breakdowns,
            "mode_quantile": config.base_profile.mode_quantile,
            "width": config.base_profile.width,
        },
        "estimator": {
            "fixed_shape": config.estimator.fixed_shape,
            "multistart_count": config.estimator.multistart_count,
            "tolerance": config.estimator.tolerance,
            "likelihood_tolerance": config.estimator.likelihood_tolerance,
            "max_iterations": config.estimator.max_iterations,
        },
    }


def _require(mapping: dict, key: str, kind, where: str):
    if key not in mapping:
        raise ConfigError(f"field '{where}{key}': missing")
    value = mapping[key]
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"field '{where}{key}': expected {kind.__name__}, got {value!r}") from None


def config_from_dict(data: dict) -> StudyConfig:
    """Parse and validate a study configuration mapping (see config_to_dict)."""
    if not isinstance(data, dict):
        raise ConfigError("field '': configuration must be a JSON object")
    known = {
        "schema_version", "master_seed", "replications", "target_breakdowns",
        "distributions", "base_profile", "estimator",
    }
    for key in data:
        if key not in known:
            raise ConfigError(f"field '{key}': unknown")

    defaults = StudyConfig()
    distributions = []
    if "distributions" in data:
        if not isinstance(data["distributions"], list):
            raise ConfigError("field 'distributions': expected a list")
        for index, entry in enumerate(data["distributions"]):
            where = f"distributions[{index}]."
            try:
                capacity = WeibullCapacity(
                    scale=_require(entry, "scale", float, where),
                    shape=_require(entry, "shape", float, where),
                )
            except ValueError as error:
                raise ConfigError(f"field '{where[:-1]}': {error}") from None
            profile_scale = float(entry.get("profile_scale", 1.0))
            distributions.append(DistributionSpec(capacity=capacity, profile_scale=profile_scale))
    else:
        distributions = list(defaults.distributions)

    base = data.get("base_profile", {})
    if not isinstance(base, dict):
        raise ConfigError("field 'base_profile': expected an object")
    base_defaults = defaults.base_profile
    try:
        base_profile = BaseProfileSpec(
            level_min=float(base.get("level_min", base_defaults.level_min)),
            level_max=float(base.get("level_max", base_defaults.level_max)),
            level_step=float(base.get("level_step", base_defaults.level_step)),
            total_records=float(base.get("total_records", base_defaults.total_records)),
            target_expected_breakdowns=float(
                base.get("target_expected_breakdowns", base_defaults.target_expected_breakdowns)
            ),
            mode_quantile=float(base.get("mode_quantile", base_defaults.mode_quantile)),
            width=None if base.get("width") is None else float(base["width"]),
        )
    except (TypeError, ValueError) as error:
        raise ConfigError(f"field 'base_profile': {error}") from None

    est = data.get("estimator", {})
    if not isinstance(est, dict):
        raise ConfigError("field 'estimator': expected an object")
    est_defaults = defaults.estimator
    try:
        estimator = FitOptions(
            fixed_shape=None if est.get("fixed_shape") is None else float(est["fixed_shape"]),
            multistart_count=int(est.get("multistart_count", est_defaults.multistart_count)),
            tolerance=float(est.get("tolerance", est_defaults.tolerance)),
            likelihood_tolerance=float(
                est.get("likelihood_tolerance", est_defaults.likelihood_tolerance)
            ),
            max_iterations=int(est.get("max_iterations", est_defaults.max_iterations)),
        )
    except (TypeError, ValueError) as error:
        raise ConfigError(f"field 'estimator': {error}") from None

    targets = data.get("target_breakdowns", list(defaults.target_breakdowns))
    if not isinstance(targets, list):
        raise ConfigError("field 'target_breakdowns': expected a list")
    try:
        targets = tuple(float(t) for t in targets)
    except (TypeError, ValueError):
        raise ConfigError("field 'target_breakdowns': entries must be numbers") from None

    replications = data.get("replications", defaults.replications)
    if not isinstance(replications, int) or isinstance(replications, bool):
        raise ConfigError("field 'replications': expected an integer")
    master_seed = data.get("master_seed", defaults.master_seed)
    if not isinstance(master_seed, int) or isinstance(master_seed, bool):
        raise ConfigError("field 'master_seed': expected an integer")

    return StudyConfig(
        distributions=tuple(distributions),
        target_breakdowns=targets,
        replications=replications,
        master_seed=master_seed,
        base_profile=base_profile,
        estimator=estimator,
    )
