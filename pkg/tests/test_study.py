"""Tests for the reliability-study harness."""

import dataclasses
import json

import numpy as np
import pytest

from stocap.capacity import WeibullCapacity
from stocap.study import (
    BaseProfileSpec,
    ConfigError,
    DistributionSpec,
    StudyConfig,
    config_from_dict,
    config_to_dict,
    default_config,
    derive_seed,
    read_results_csv,
    run_study,
    summarize,
    summary_to_dict,
    to_regression_observations,
    write_results_csv,
)


def tiny_config(**overrides):
    defaults = dict(
        distributions=(DistributionSpec(WeibullCapacity(150.0, 6.5)),),
        target_breakdowns=(52.0,),
        replications=1,
        master_seed=7,
    )
    defaults.update(overrides)
    return StudyConfig(**defaults)


class TestConfig:
    def test_default_matches_study_design(self):
        config = default_config()
        assert len(config.distributions) == 3
        assert config.target_breakdowns == (13.0, 26.0, 52.0, 78.0, 104.0, 156.0, 208.0, 260.0)
        assert config.replications == 15
        assert [spec.profile_scale for spec in config.distributions] == [1.0, 2.0, 8.0]

    def test_validation_names_fields(self):
        with pytest.raises(ConfigError, match="replications"):
            tiny_config(replications=0)
        with pytest.raises(ConfigError, match="target_breakdowns"):
            tiny_config(target_breakdowns=(52.0, 13.0))
        with pytest.raises(ConfigError, match="target_breakdowns"):
            tiny_config(target_breakdowns=(-1.0,))
        with pytest.raises(ConfigError, match="master_seed"):
            tiny_config(master_seed=-1)
        with pytest.raises(ConfigError, match="distributions"):
            tiny_config(distributions=())

    def test_dict_round_trip(self):
        config = default_config()
        again = config_from_dict(config_to_dict(config))
        assert again == config

    def test_from_dict_rejects_unknown_field(self):
        data = config_to_dict(default_config())
        data["replicas"] = 3
        with pytest.raises(ConfigError, match="replicas"):
            config_from_dict(data)

    def test_from_dict_rejects_bad_types(self):
        data = config_to_dict(default_config())
        data["replications"] = "fifteen"
        with pytest.raises(ConfigError, match="replications"):
            config_from_dict(data)
        data = config_to_dict(default_config())
        data["distributions"][0].pop("scale")
        with pytest.raises(ConfigError, match="scale"):
            config_from_dict(data)


class TestSeedDerivation:
    def test_deterministic_and_path_sensitive(self):
        assert derive_seed(7, 1, 2, 3) == derive_seed(7, 1, 2, 3)
        assert derive_seed(7, 1, 2, 3) != derive_seed(7, 1, 2, 4)
        assert derive_seed(7, 1, 2, 3) != derive_seed(8, 1, 2, 3)

    def test_frozen_reference_value(self):
        # Guards against silent changes in the hashing scheme, which would
        # break reproducibility of published study outputs.
        assert derive_seed(7, 0, 1, 2) == 10040511365380042851


class TestRunStudy:
    def test_single_cell_single_replication(self):
        results = run_study(tiny_config())
        assert len(results.runs) == 1
        run = results.runs[0]
        assert run.identifiable
        assert run.cdf is not None
        assert run.recorded_breakdowns >= 1
        assert results.cells[0].runs_total == 1

    def test_rerun_is_bit_identical(self):
        config = tiny_config(replications=3)
        first = run_study(config)
        second = run_study(config)
        assert first.runs == second.runs

    def test_jobs_do_not_change_results(self):
        config = tiny_config(replications=4, target_breakdowns=(26.0, 52.0))
        serial = run_study(config, jobs=1)
        parallel = run_study(config, jobs=2)
        assert serial.runs == parallel.runs

    def test_non_identifiable_runs_are_flagged_not_fatal(self):
        config = tiny_config(target_breakdowns=(0.05,), replications=6)
        results = run_study(config)
        assert len(results.runs) == 6
        flagged = [run for run in results.runs if not run.identifiable]
        assert flagged, "expected at least one replication with zero breakdowns"
        for run in flagged:
            assert run.fitted_scale is None
            assert run.cdf is None
        assert len(to_regression_observations(results)) == 6 - len(flagged)

    def test_rejects_bad_jobs(self):
        with pytest.raises(ValueError):
            run_study(tiny_config(), jobs=0)

    def test_theoretical_breakdowns_match_target(self):
        results = run_study(tiny_config(target_breakdowns=(26.0, 52.0), replications=1))
        for run in results.runs:
            assert run.theoretical_breakdowns == pytest.approx(run.target_breakdowns, rel=1e-9)


@pytest.fixture(scope="module")
def small_results():
    config = StudyConfig(
        distributions=(
            DistributionSpec(WeibullCapacity(150.0, 6.5), 1.0),
            DistributionSpec(WeibullCapacity(160.0, 7.0), 2.0),
        ),
        target_breakdowns=(13.0, 52.0, 156.0),
        replications=4,
        master_seed=101,
    )
    return run_study(config, jobs=2)


class TestSummaries:
    def test_cell_quantiles_are_ordered(self, small_results):
        for cell in small_results.cells:
            if not cell.runs_identifiable:
                continue
            for key, (low, q1, median, q3, high) in cell.quantiles.items():
                assert low <= q1 <= median <= q3 <= high

    def test_summary_spearman_is_negative(self, small_results):
        summary = summarize(small_results)
        assert summary.spearman_rho is not None
        assert summary.spearman_rho < 0.0

    def test_scatter_covers_identifiable_runs(self, small_results):
        summary = summarize(small_results)
        assert len(summary.scatter) == summary.runs_identifiable

    def test_error_decreases_with_size(self, small_results):
        summary = summarize(small_results)
        by_target = {entry["target_breakdowns"]: entry for entry in summary.per_target}
        assert by_target[13.0]["awre_cdf_mean"] > by_target[156.0]["awre_cdf_mean"]

    def test_summary_serializes(self, small_results):
        payload = summary_to_dict(small_results)
        text = json.dumps(payload)
        assert json.loads(text)["runs_total"] == len(small_results.runs)

    def test_regression_observation_responses(self, small_results):
        cdf_obs = to_regression_observations(small_results, "cdf-awre")
        cfb_obs = to_regression_observations(small_results, "cfb-awre")
        assert len(cdf_obs) == len(cfb_obs)
        idx = [run for run in small_results.runs if run.identifiable]
        assert cdf_obs[0].response == idx[0].cdf.awre
        assert cfb_obs[0].response == idx[0].cfb.awre
        with pytest.raises(ValueError):
            to_regression_observations(small_results, "rmse")


class TestResultsCsv:
    def test_round_trip_preserves_records(self, tmp_path):
        config = tiny_config(replications=3, target_breakdowns=(13.0, 52.0))
        results = run_study(config)
        path = tmp_path / "results.csv"
        write_results_csv(results, path)
        runs = read_results_csv(path)
        assert tuple(runs) == results.runs

    def test_round_trip_preserves_non_identifiable_rows(self, tmp_path):
        results = run_study(tiny_config(target_breakdowns=(0.05,), replications=5))
        path = tmp_path / "results.csv"
        write_results_csv(results, path)
        runs = read_results_csv(path)
        assert tuple(runs) == results.runs

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            read_results_csv(path)


def test_profile_scale_cancels_under_exact_rescaling():
    # The per-distribution record multiplier conditions the construction
    # but cannot change rescaled cells; doubling it must be a no-op.
    base = tiny_config(replications=2)
    doubled = dataclasses.replace(
        base, distributions=(DistributionSpec(WeibullCapacity(150.0, 6.5), 2.0),)
    )
    runs_base = run_study(base).runs
    runs_doubled = run_study(doubled).runs
    assert runs_base[0].recorded_breakdowns == runs_doubled[0].recorded_breakdowns
    assert np.isclose(runs_base[0].total_records, runs_doubled[0].total_records, rtol=1e-9)
