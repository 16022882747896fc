"""Ordinary least squares models of estimation error vs dataset size.

Each observation couples a dataset's total record weight and recorded
breakdown count with an error response (an AWRE fraction). Candidate
regressors are the record total, the breakdown count, their ratio, and
the natural logarithms of all three:

    x1 = total records        x4 = ln x1
    x2 = recorded breakdowns  x5 = ln x2
    x3 = x1 / x2              x6 = ln x3  (= x4 - x5 exactly)

The solver uses a QR decomposition rather than explicit normal-equation
inversion; coefficient p-values come from the two-sided t distribution
evaluated through the regularised incomplete beta function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import betainc
from scipy.stats import t as student_t

__all__ = [
    "DesignMatrix",
    "FittedModel",
    "RegressionObservation",
    "ScreeningResult",
    "SingularDesignError",
    "VARIABLE_NAMES",
    "build_design",
    "ols_fit",
    "predict",
    "screen_models",
]

VARIABLE_NAMES = ("x1", "x2", "x3", "x4", "x5", "x6")

# Variables undefined when no breakdowns were recorded (ratio and logs).
_NEEDS_BREAKDOWNS = frozenset({"x3", "x5", "x6"})


class SingularDesignError(ValueError):
    """Design matrix is rank deficient; names the collinear columns."""

    def __init__(self, columns: Sequence[str]) -> None:
        self.columns = tuple(columns)
        super().__init__(f"singular design: columns {', '.join(self.columns)} are collinear")


@dataclass(frozen=True)
class RegressionObservation:
    total_records: float
    recorded_breakdowns: int
    response: float

    def __post_init__(self) -> None:
        if not (self.total_records > 0.0 and math.isfinite(self.total_records)):
            raise ValueError("total_records must be positive and finite")
        if self.recorded_breakdowns < 0:
            raise ValueError("recorded_breakdowns must be non-negative")
        if not math.isfinite(self.response):
            raise ValueError("response must be finite")


def _variable_value(name: str, observation: RegressionObservation) -> float:
    if name == "x1":
        return observation.total_records
    if name == "x2":
        return float(observation.recorded_breakdowns)
    if name == "x3":
        return observation.total_records / observation.recorded_breakdowns
    if name == "x4":
        return math.log(observation.total_records)
    if name == "x5":
        return math.log(observation.recorded_breakdowns)
    if name == "x6":
        return math.log(observation.total_records) - math.log(observation.recorded_breakdowns)
    raise ValueError(f"unknown variable {name!r}")


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Intercept-first design with the rows that survived validation."""

    matrix: np.ndarray
    response: np.ndarray
    variables: tuple[str, ...]
    rejected_rows: tuple[int, ...]


def build_design(observations: Sequence[RegressionObservation], variables: Iterable[str]) -> DesignMatrix:
    """Assemble the design matrix for the requested variable subset.

    Rows on which a requested variable is undefined (zero recorded
    breakdowns with a ratio or log variable) are rejected and reported
    through `rejected_rows` rather than silently dropped.
    """
    variables = tuple(variables)
    for name in variables:
        if name not in VARIABLE_NAMES:
            raise ValueError(f"unknown variable {name!r}; choose from {VARIABLE_NAMES}")
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variables in design")

    needs_breakdowns = any(name in _NEEDS_BREAKDOWNS for name in variables)
    rows = []
    response = []
    rejected = []
    for index, observation in enumerate(observations):
        if needs_breakdowns and observation.recorded_breakdowns < 1:
            rejected.append(index)
            continue
        rows.append([1.0] + [_variable_value(name, observation) for name in variables])
        response.append(observation.response)
    if not rows:
        raise ValueError("no usable observations for this variable set")
    return DesignMatrix(
        matrix=np.asarray(rows, dtype=float),
        response=np.asarray(response, dtype=float),
        variables=variables,
        rejected_rows=tuple(rejected),
    )


@dataclass(frozen=True)
class FittedModel:
    """OLS fit with the diagnostics reported alongside each coefficient."""

    variables: tuple[str, ...]
    coefficients: tuple[float, ...]       # intercept first
    standard_errors: tuple[float, ...]
    p_values: tuple[float, ...]
    ci_lower: tuple[float, ...]
    ci_upper: tuple[float, ...]
    r_squared: float
    n_observations: int
    df_residual: int

    @property
    def coefficient_names(self) -> tuple[str, ...]:
        return ("intercept",) + self.variables

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "coefficient_names": list(self.coefficient_names),
            "coefficients": list(self.coefficients),
            "standard_errors": list(self.standard_errors),
            "p_values": list(self.p_values),
            "ci_lower": list(self.ci_lower),
            "ci_upper": list(self.ci_upper),
            "r_squared": self.r_squared,
            "n_observations": self.n_observations,
            "df_residual": self.df_residual,
        }


def _collinear_columns(matrix: np.ndarray, variables: tuple[str, ...]) -> tuple[str, ...]:
    # The right singular vector of the smallest singular value spans the
    # null space; its non-negligible entries name the offending columns.
    _, _, vt = np.linalg.svd(matrix, full_matrices=False)
    null_vector = vt[-1]
    names = ("intercept",) + variables
    involved = [names[i] for i in range(len(names)) if abs(null_vector[i]) > 1e-8]
    return tuple(involved) if involved else names


def ols_fit(design: DesignMatrix) -> FittedModel:
    """Least-squares fit with t-based p-values and 95% confidence intervals."""
    matrix, response = design.matrix, design.response
    n, k = matrix.shape
    if n <= k:
        raise ValueError(f"need more observations ({n}) than coefficients ({k})")

    singular_values = np.linalg.svd(matrix, compute_uv=False)
    rank_tolerance = singular_values[0] * max(n, k) * np.finfo(float).eps
    if np.sum(singular_values > rank_tolerance) < k:
        raise SingularDesignError(_collinear_columns(matrix, design.variables))

    q, r = np.linalg.qr(matrix)
    coefficients = solve_triangular(r, q.T @ response)
    fitted_values = matrix @ coefficients
    residuals = response - fitted_values
    sse = float(residuals @ residuals)
    df = n - k
    sigma_squared = sse / df

    r_inverse = solve_triangular(r, np.eye(k))
    xtx_inverse = r_inverse @ r_inverse.T
    standard_errors = np.sqrt(sigma_squared * np.diag(xtx_inverse))

    with np.errstate(divide="ignore", invalid="ignore"):
        t_statistics = np.where(standard_errors > 0.0, coefficients / standard_errors, np.inf)
    # Two-sided tail: P(|T| > |t|) = I_{df/(df + t^2)}(df/2, 1/2).
    p_values = betainc(df / 2.0, 0.5, df / (df + t_statistics * t_statistics))
    t_critical = float(student_t.ppf(0.975, df))

    centered = response - response.mean()
    sst = float(centered @ centered)
    if sst > 0.0:
        r_squared = 1.0 - sse / sst
    else:
        r_squared = 1.0 if sse <= 1e-30 else 0.0

    return FittedModel(
        variables=design.variables,
        coefficients=tuple(float(c) for c in coefficients),
        standard_errors=tuple(float(s) for s in standard_errors),
        p_values=tuple(float(p) for p in p_values),
        ci_lower=tuple(float(c - t_critical * s) for c, s in zip(coefficients, standard_errors)),
        ci_upper=tuple(float(c + t_critical * s) for c, s in zip(coefficients, standard_errors)),
        r_squared=float(r_squared),
        n_observations=n,
        df_residual=df,
    )


def predict(model: FittedModel, observation: RegressionObservation) -> float:
    """Evaluate the fitted linear combination on one observation."""
    if any(name in _NEEDS_BREAKDOWNS for name in model.variables) and observation.recorded_breakdowns < 1:
        raise ValueError("model uses ratio/log variables undefined at zero recorded breakdowns")
    value = model.coefficients[0]
    for name, coefficient in zip(model.variables, model.coefficients[1:]):
        value += coefficient * _variable_value(name, observation)
    return value


@dataclass(frozen=True)
class ScreeningResult:
    """Models split by the significance rule, R^2-ranked within each group."""

    passing: tuple[FittedModel, ...]
    flagged: tuple[tuple[FittedModel, tuple[str, ...]], ...]


def screen_models(
    observations: Sequence[RegressionObservation],
    candidate_sets: Sequence[Iterable[str]],
    significance: float = 0.05,
) -> ScreeningResult:
    """Fit every candidate variable subset and rank by R^2.

    Models in which every non-intercept coefficient is significant at
    `significance` form the ranked `passing` list; the rest are returned
    with their offending variables flagged.
    """
    if not candidate_sets:
        raise ValueError("at least one candidate variable subset is required")
    passing = []
    flagged = []
    for candidate in candidate_sets:
        model = ols_fit(build_design(observations, candidate))
        offending = tuple(
            name for name, p in zip(model.variables, model.p_values[1:]) if not (p < significance)
        )
        if offending:
            flagged.append((model, offending))
        else:
            passing.append(model)
    passing.sort(key=lambda m: m.r_squared, reverse=True)
    flagged.sort(key=lambda pair: pair[0].r_squared, reverse=True)
    return ScreeningResult(passing=tuple(passing), flagged=tuple(flagged))
