"""Command-line surface: estimate, synth, study, regress, plot.

Exit codes are stable: 0 success, 2 usage, 3 parse/validation failure,
4 non-identifiable data, 5 estimator did not converge.
"""

from __future__ import annotations

import argparse
import io as _stdio
import json
import os
import sys

import numpy as np

from .capacity import WeibullCapacity
from .estimator import CensoredHistogram, FitOptions, NonIdentifiableError, fit, predicted_breakdowns
from .generator import CalibrationSpec, calibrate_base_profile, generate_dataset, rescale_profile
from .io import ParseError, read_profile_csv, write_profile_csv
from .metrics import curve_pair_for_cdf, curve_pair_for_cfb, metric_report
from .regression import SingularDesignError, build_design, ols_fit, screen_models
from .study import (
    RESPONSE_CHOICES,
    SCHEMA_VERSION,
    ConfigError,
    StudyResults,
    build_cell_profiles,
    config_from_dict,
    default_config,
    read_results_csv,
    run_study,
    summary_to_dict,
    to_regression_observations,
    write_results_csv,
)
from .svgplot import LineSeries, PointSeries, render_chart

__all__ = ["main", "console_main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NONIDENTIFIABLE = 4
EXIT_NONCONVERGED = 5


def _dist_argument(text: str) -> WeibullCapacity:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'scale,shape', got {text!r}")
    try:
        return WeibullCapacity(scale=float(parts[0]), shape=float(parts[1]))
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error)) from None


def _calibrate_argument(text: str) -> dict:
    known = {"total", "target", "min", "max", "step", "quantile", "width"}
    values = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected key=value, got {item!r}")
        key, _, raw = item.partition("=")
        key = key.strip()
        if key not in known:
            raise argparse.ArgumentTypeError(f"unknown calibration key {key!r}; choose from {sorted(known)}")
        try:
            values[key] = float(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"calibration key {key!r}: not a number: {raw!r}") from None
    for required in ("total", "target"):
        if required not in values:
            raise argparse.ArgumentTypeError(f"calibration spec requires {required}=...")
    return values


def _models_argument(text: str) -> list[tuple[str, ...]]:
    models = []
    for chunk in text.split(";"):
        names = tuple(name.strip() for name in chunk.split(",") if name.strip())
        models.append(names)
    return models if models else [()]


def _run_argument(text: str) -> tuple[int, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected 'dist_index,target,replication', got {text!r}")
    try:
        return int(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"could not parse run selector {text!r}") from None


def _print_json(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _cmd_estimate(args) -> int:
    try:
        profile, breakdowns = read_profile_csv(args.input)
    except (OSError, ParseError) as error:
        return _fail(str(error), EXIT_VALIDATION)
    if breakdowns is None:
        return _fail("input has no breakdowns column; estimation needs observed breakdowns", EXIT_VALIDATION)

    histogram = CensoredHistogram(levels=profile.levels, records=profile.records, breakdowns=breakdowns)
    options = FitOptions(
        fixed_shape=args.fixed_shape,
        multistart_count=args.multistarts,
        seed=args.seed,
    )
    try:
        estimate = fit(histogram, options)
    except NonIdentifiableError as error:
        return _fail(str(error), EXIT_NONIDENTIFIABLE)

    payload = {
        "schema_version": SCHEMA_VERSION,
        "fitted": {"scale": estimate.fitted.scale, "shape": estimate.fitted.shape},
        "log_likelihood": estimate.log_likelihood,
        "converged": estimate.converged,
        "iterations": estimate.iterations,
        "fixed_shape": estimate.fixed_shape,
        "total_records": histogram.total_records,
        "recorded_breakdowns": histogram.total_breakdowns,
        "predicted_breakdowns": predicted_breakdowns(histogram, estimate.fitted),
    }
    if args.truth is not None:
        fitted = estimate.fitted
        payload["truth"] = {"scale": args.truth.scale, "shape": args.truth.shape}
        payload["metrics"] = {
            "cdf": metric_report(curve_pair_for_cdf(fitted, args.truth, profile)).to_dict(),
            "cfb_theoretical": metric_report(
                curve_pair_for_cfb(fitted, args.truth, profile, "theoretical")
            ).to_dict(),
            "cfb_empirical": metric_report(
                curve_pair_for_cfb(fitted, args.truth, profile, "empirical", dataset=breakdowns)
            ).to_dict(),
        }
    _print_json(payload)
    return EXIT_OK if estimate.converged else EXIT_NONCONVERGED


def _cmd_synth(args) -> int:
    if args.profile is not None:
        try:
            profile, _ = read_profile_csv(args.profile)
        except (OSError, ParseError) as error:
            return _fail(str(error), EXIT_VALIDATION)
    else:
        spec = args.calibrate
        try:
            profile = calibrate_base_profile(
                CalibrationSpec(
                    level_min=spec.get("min", 3.0),
                    level_max=spec.get("max", 249.0),
                    level_step=spec.get("step", 3.0),
                    total_records=spec["total"],
                    dist=args.dist,
                    target_expected_breakdowns=spec["target"],
                    mode_quantile=spec.get("quantile", 0.02),
                    width=spec.get("width"),
                )
            )
        except ValueError as error:
            return _fail(str(error), EXIT_VALIDATION)

    try:
        if args.target_breakdowns is not None:
            profile = rescale_profile(profile, args.dist, args.target_breakdowns)
        dataset = generate_dataset(profile, args.dist, args.seed)
    except ValueError as error:
        return _fail(str(error), EXIT_VALIDATION)
    if dataset.clamp_events:
        print(f"note: {dataset.clamp_events} level(s) clamped to ceil(records)", file=sys.stderr)

    buffer = _stdio.StringIO()
    write_profile_csv(buffer, profile, dataset.breakdowns)
    if args.out is None:
        sys.stdout.write(buffer.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(buffer.getvalue())
    return EXIT_OK


def _cmd_study(args) -> int:
    if args.config is None:
        config = default_config()
    else:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                data = json.load(handle)
            config = config_from_dict(data)
        except OSError as error:
            return _fail(str(error), EXIT_VALIDATION)
        except json.JSONDecodeError as error:
            return _fail(f"config is not valid JSON: {error}", EXIT_VALIDATION)
        except ConfigError as error:
            return _fail(str(error), EXIT_VALIDATION)

    results = run_study(config, jobs=args.jobs)
    write_results_csv(results, args.out)
    print(f"wrote {len(results.runs)} runs to {args.out}", file=sys.stderr)
    if args.summary is not None:
        with open(args.summary, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(summary_to_dict(results), handle, indent=2)
            handle.write("\n")
        print(f"wrote summary to {args.summary}", file=sys.stderr)
    return EXIT_OK


def _results_for_reading(path) -> StudyResults | None:
    try:
        runs = read_results_csv(path)
    except (OSError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return None
    return StudyResults(config=default_config(), runs=tuple(runs), cells=())


def _cmd_regress(args) -> int:
    try:
        runs = read_results_csv(args.results)
    except (OSError, ValueError) as error:
        return _fail(str(error), EXIT_VALIDATION)
    results = StudyResults(config=default_config(), runs=tuple(runs), cells=())
    observations = to_regression_observations(results, args.response)
    if not observations:
        return _fail("no identifiable runs in the results file", EXIT_VALIDATION)

    entries = []
    usable = []
    for variables in args.models:
        entry = {"variables": list(variables)}
        try:
            design = build_design(observations, variables)
            model = ols_fit(design)
        except (SingularDesignError, ValueError) as error:
            entry["error"] = str(error)
        else:
            entry["fit"] = model.to_dict()
            entry["rejected_rows"] = len(design.rejected_rows)
            usable.append(variables)
        entries.append(entry)

    ranking = {"passing": [], "flagged": []}
    if usable:
        screening = screen_models(observations, usable)
        ranking["passing"] = [
            {"variables": list(model.variables), "r_squared": model.r_squared}
            for model in screening.passing
        ]
        ranking["flagged"] = [
            {
                "variables": list(model.variables),
                "r_squared": model.r_squared,
                "offending": list(offending),
            }
            for model, offending in screening.flagged
        ]

    _print_json(
        {
            "schema_version": SCHEMA_VERSION,
            "response": args.response,
            "n_observations": len(observations),
            "models": entries,
            "ranking": ranking,
        }
    )
    return EXIT_OK if usable else EXIT_VALIDATION


def _write_companion_csv(path: str, header: list[str], rows: list[list]) -> str:
    companion = os.path.splitext(path)[0] + ".csv"
    with open(companion, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(str(cell) for cell in row) + "\n")
    return companion


def _plot_awre(args, runs) -> int:
    identifiable = [run for run in runs if run.identifiable]
    if not identifiable:
        return _fail("no runs to plot", EXIT_VALIDATION)
    response_attr = "cdf" if args.response == "cdf-awre" else "cfb"
    points = [(run.recorded_breakdowns, getattr(run, response_attr).awre) for run in identifiable]

    lines = []
    results = StudyResults(config=default_config(), runs=tuple(runs), cells=())
    observations = to_regression_observations(results, args.response)
    if len(observations) >= 3:
        try:
            model = ols_fit(build_design(observations, ("x5",)))
        except (SingularDesignError, ValueError):
            model = None
        if model is not None:
            intercept, slope = model.coefficients
            b_values = np.geomspace(min(b for b, _ in points), max(b for b, _ in points), 120)
            lines.append(
                LineSeries(
                    label=f"{intercept:.4f} + {slope:.5f} ln(B)",
                    points=tuple((float(b), intercept + slope * float(np.log(b))) for b in b_values),
                    color="#d62728",
                )
            )

    svg = render_chart(
        [PointSeries(label="runs", points=tuple(points), color="#1f77b4")],
        lines,
        title="Estimation error vs recorded breakdowns",
        x_label="recorded breakdowns",
        y_label=f"AWRE ({'capacity CDF' if args.response == 'cdf-awre' else 'cumulative breakdowns'})",
    )
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(svg)
    rows = [
        [run.recorded_breakdowns, repr(getattr(run, response_attr).awre), run.dist_index,
         repr(run.target_breakdowns), run.replication]
        for run in identifiable
    ]
    companion = _write_companion_csv(
        args.out, ["recorded_breakdowns", "awre", "dist_index", "target_breakdowns", "replication"], rows
    )
    print(f"wrote {args.out} and {companion}", file=sys.stderr)
    return EXIT_OK


def _plot_cfb(args, runs) -> int:
    identifiable = [run for run in runs if run.identifiable]
    if not identifiable:
        return _fail("no runs to plot", EXIT_VALIDATION)
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                config = config_from_dict(json.load(handle))
        except (OSError, json.JSONDecodeError, ConfigError) as error:
            return _fail(str(error), EXIT_VALIDATION)
    else:
        config = default_config()

    if args.run is None:
        run = identifiable[0]
    else:
        dist_index, target, replication = args.run
        matches = [
            r for r in identifiable
            if r.dist_index == dist_index and r.target_breakdowns == target and r.replication == replication
        ]
        if not matches:
            return _fail(f"run {args.run} not found among identifiable runs", EXIT_VALIDATION)
        run = matches[0]

    if run.target_breakdowns not in config.target_breakdowns or run.dist_index >= len(config.distributions):
        return _fail("selected run does not match the study configuration", EXIT_VALIDATION)
    size_index = config.target_breakdowns.index(run.target_breakdowns)
    profile = build_cell_profiles(config)[(run.dist_index, size_index)]
    truth = config.distributions[run.dist_index].capacity
    fitted = WeibullCapacity(scale=run.fitted_scale, shape=run.fitted_shape)
    dataset = generate_dataset(profile, truth, run.seed)

    theoretical = np.cumsum(profile.records * truth.breakdown_probability(profile.levels))
    empirical = np.cumsum(dataset.breakdowns.astype(float))
    estimated = np.cumsum(profile.records * fitted.breakdown_probability(profile.levels))

    levels = profile.levels
    svg = render_chart(
        [],
        [
            LineSeries("theoretical", tuple(zip(levels, theoretical)), color="#1f77b4"),
            LineSeries("empirical", tuple(zip(levels, empirical)), color="#2ca02c"),
            LineSeries("estimated", tuple(zip(levels, estimated)), color="#d62728", dashed=True),
        ],
        title=(
            f"Cumulative breakdowns: dist {run.dist_index}, "
            f"target {run.target_breakdowns:g}, replication {run.replication}"
        ),
        x_label="traffic-flow intensity",
        y_label="cumulative breakdowns",
    )
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(svg)
    rows = [
        [repr(float(level)), repr(float(t)), repr(float(e)), repr(float(s))]
        for level, t, e, s in zip(levels, theoretical, empirical, estimated)
    ]
    companion = _write_companion_csv(
        args.out, ["intensity", "theoretical_cfb", "empirical_cfb", "estimated_cfb"], rows
    )
    print(f"wrote {args.out} and {companion}", file=sys.stderr)
    return EXIT_OK


def _cmd_plot(args) -> int:
    try:
        runs = read_results_csv(args.results)
    except (OSError, ValueError) as error:
        return _fail(str(error), EXIT_VALIDATION)
    if args.kind == "awre-vs-breakdowns":
        return _plot_awre(args, runs)
    return _plot_cfb(args, runs)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stocap",
        description="Stochastic road-capacity estimation and reliability studies",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    estimate = commands.add_parser("estimate", help="fit the capacity distribution to a dataset CSV")
    estimate.add_argument("--input", required=True, help="profile CSV with a breakdowns column")
    estimate.add_argument("--fixed-shape", type=float, default=None, help="fix the shape and fit scale only")
    estimate.add_argument("--truth", type=_dist_argument, default=None, metavar="SCALE,SHAPE",
                          help="ground-truth distribution; adds error metrics to the output")
    estimate.add_argument("--multistarts", type=int, default=5, help="number of optimiser starts")
    estimate.add_argument("--seed", type=int, default=0, help="seed for multistart jitter")
    estimate.set_defaults(handler=_cmd_estimate)

    synth = commands.add_parser("synth", help="generate a pseudo-empirical dataset CSV")
    source = synth.add_mutually_exclusive_group(required=True)
    source.add_argument("--profile", help="demand profile CSV to sample from")
    source.add_argument("--calibrate", type=_calibrate_argument, metavar="total=...,target=...",
                        help="calibrate a synthetic base profile (keys: total, target, min, max, step, quantile, width)")
    synth.add_argument("--dist", type=_dist_argument, required=True, metavar="SCALE,SHAPE",
                       help="capacity distribution used for generation")
    synth.add_argument("--seed", type=int, default=0, help="generator seed")
    synth.add_argument("--target-breakdowns", type=float, default=None,
                       help="rescale the profile to this expected breakdown total first")
    synth.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    synth.set_defaults(handler=_cmd_synth)

    study = commands.add_parser("study", help="run the full reliability study")
    study.add_argument("--config", default=None, help="study config JSON (default: built-in study design)")
    study.add_argument("--out", required=True, help="results CSV path")
    study.add_argument("--summary", default=None, help="summary JSON path")
    study.add_argument("--jobs", type=int, default=1, help="worker processes")
    study.set_defaults(handler=_cmd_study)

    regress = commands.add_parser("regress", help="fit error-vs-size regression models on study results")
    regress.add_argument("--results", required=True, help="results CSV from the study command")
    regress.add_argument("--response", choices=RESPONSE_CHOICES, default="cdf-awre")
    regress.add_argument("--models", type=_models_argument, default=[("x5",)],
                         metavar="x5;x3,x4;...", help="semicolon-separated variable subsets")
    regress.set_defaults(handler=_cmd_regress)

    plot = commands.add_parser("plot", help="emit an SVG figure plus a companion CSV of plotted points")
    plot.add_argument("--results", required=True, help="results CSV from the study command")
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.add_argument("--kind", choices=("awre-vs-breakdowns", "cfb-curves"), required=True)
    plot.add_argument("--response", choices=RESPONSE_CHOICES, default="cdf-awre",
                      help="response for awre-vs-breakdowns")
    plot.add_argument("--config", default=None, help="study config JSON for cfb-curves (default: built-in)")
    plot.add_argument("--run", type=_run_argument, default=None, metavar="DIST,TARGET,REP",
                      help="run selector for cfb-curves")
    plot.set_defaults(handler=_cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


def console_main() -> None:
    sys.exit(main())
