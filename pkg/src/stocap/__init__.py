"""Stochastic road-capacity estimation from censored traffic-flow records.

Fits Weibull breakdown-probability distributions to censored demand
histograms by corrected maximum likelihood, generates pseudo-empirical
datasets under a known capacity distribution, and quantifies estimate
reliability against recorded-breakdown sample size through Monte Carlo
studies and error-regression models.
"""

from .capacity import WeibullCapacity
from .estimator import (
    CensoredHistogram,
    EstimateResult,
    FitOptions,
    NonIdentifiableError,
    fit,
    grid_search,
    log_likelihood,
    predicted_breakdowns,
)
from .generator import (
    CalibrationSpec,
    CfbCurve,
    IntensityProfile,
    PseudoEmpiricalDataset,
    calibrate_base_profile,
    cumulative_frequency,
    expected_breakdowns,
    generate_dataset,
    rescale_profile,
    sample_breakdowns,
)
from .metrics import (
    CurvePair,
    MetricReport,
    are,
    awre,
    curve_pair_for_cdf,
    curve_pair_for_cfb,
    metric_report,
    rmse,
)
from .regression import (
    FittedModel,
    RegressionObservation,
    ScreeningResult,
    SingularDesignError,
    build_design,
    ols_fit,
    predict,
    screen_models,
)
from .study import (
    BaseProfileSpec,
    CellSummary,
    ConfigError,
    DistributionSpec,
    RunRecord,
    StudyConfig,
    StudyResults,
    default_config,
    run_study,
    summarize,
    to_regression_observations,
)

__version__ = "0.1.0"

__all__ = [
    "BaseProfileSpec",
    "CalibrationSpec",
    "CellSummary",
    "CensoredHistogram",
    "CfbCurve",
    "ConfigError",
    "CurvePair",
    "DistributionSpec",
    "EstimateResult",
    "FitOptions",
    "FittedModel",
    "IntensityProfile",
    "MetricReport",
    "NonIdentifiableError",
    "PseudoEmpiricalDataset",
    "RegressionObservation",
    "RunRecord",
    "ScreeningResult",
    "SingularDesignError",
    "StudyConfig",
    "StudyResults",
    "WeibullCapacity",
    "are",
    "awre",
    "build_design",
    "calibrate_base_profile",
    "cumulative_frequency",
    "curve_pair_for_cdf",
    "curve_pair_for_cfb",
    "default_config",
    "expected_breakdowns",
    "fit",
    "generate_dataset",
    "grid_search",
    "log_likelihood",
    "metric_report",
    "ols_fit",
    "predict",
    "predicted_breakdowns",
    "rescale_profile",
    "rmse",
    "run_study",
    "sample_breakdowns",
    "screen_models",
    "summarize",
    "to_regression_observations",
]
