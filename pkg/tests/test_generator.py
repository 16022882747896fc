"""Tests for pseudo-empirical dataset generation and profile calibration."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stocap.capacity import WeibullCapacity
from stocap.generator import (
    CalibrationSpec,
    IntensityProfile,
    calibrate_base_profile,
    cumulative_frequency,
    expected_breakdowns,
    generate_dataset,
    rescale_profile,
    sample_breakdowns,
)

DIST = WeibullCapacity(scale=150.0, shape=6.5)
ONE_MINUS_E_INV = 0.6321205588285576784044762298385391


class StubRng:
    """Serves a fixed sequence of uniforms to make draws fully explicit."""

    def __init__(self, values):
        self.values = list(values)

    def random(self, n):
        assert n <= len(self.values), "stub exhausted"
        out, self.values = self.values[:n], self.values[n:]
        return np.asarray(out)


def base_profile(**overrides):
    spec = CalibrationSpec(
        level_min=overrides.pop("level_min", 3.0),
        level_max=overrides.pop("level_max", 249.0),
        level_step=overrides.pop("level_step", 3.0),
        total_records=overrides.pop("total_records", 7447.0),
        dist=overrides.pop("dist", DIST),
        target_expected_breakdowns=overrides.pop("target", 52.0),
        **overrides,
    )
    return calibrate_base_profile(spec)


class TestIntensityProfile:
    def test_rejects_unsorted_levels(self):
        with pytest.raises(ValueError):
            IntensityProfile(levels=[120.0, 100.0], records=[1.0, 1.0])

    def test_rejects_negative_records(self):
        with pytest.raises(ValueError):
            IntensityProfile(levels=[100.0, 120.0], records=[1.0, -1.0])

    def test_rejects_zero_mass(self):
        with pytest.raises(ValueError):
            IntensityProfile(levels=[100.0], records=[0.0])


class TestExpectedBreakdowns:
    def test_zero_records_give_zero(self):
        profile = IntensityProfile(levels=[100.0, 150.0], records=[0.0, 10.0])
        values = expected_breakdowns(profile, DIST)
        assert values[0] == 0.0

    def test_arithmetic_at_scale(self):
        profile = IntensityProfile(levels=[150.0], records=[200.0])
        values = expected_breakdowns(profile, DIST)
        assert values[0] == pytest.approx(200.0 * ONE_MINUS_E_INV, rel=1e-12)

    def test_base_profile_totals_about_52(self):
        profile = base_profile()
        assert expected_breakdowns(profile, DIST).sum() == pytest.approx(52.0, abs=1e-6)

    def test_strictly_below_records_where_positive(self):
        profile = base_profile()
        values = expected_breakdowns(profile, DIST)
        positive = profile.records > 0
        assert np.all(values[positive] < profile.records[positive])


class TestCumulativeFrequency:
    def test_zero_counts(self):
        curve = cumulative_frequency([1.0, 2.0, 3.0], [0, 0, 0])
        assert np.all(curve.values == 0.0)

    def test_prefix_sum(self):
        curve = cumulative_frequency([1.0, 2.0, 3.0, 4.0], [0, 1, 2, 0])
        assert curve.values.tolist() == [0.0, 1.0, 3.0, 3.0]
        assert curve.total == 3.0

    def test_theoretical_curve_ends_at_target(self):
        profile = base_profile()
        curve = cumulative_frequency(profile.levels, expected_breakdowns(profile, DIST), "theoretical")
        assert curve.flavor == "theoretical"
        assert curve.total == pytest.approx(52.0, abs=1e-6)

    def test_rejects_bad_flavor_and_negative_counts(self):
        with pytest.raises(ValueError):
            cumulative_frequency([1.0], [1], "observed")
        with pytest.raises(ValueError):
            cumulative_frequency([1.0], [-1])

    @given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=30))
    def test_curves_are_non_decreasing_and_end_at_total(self, counts):
        levels = np.arange(1.0, len(counts) + 1.0)
        curve = cumulative_frequency(levels, counts)
        assert np.all(np.diff(curve.values) >= 0.0)
        assert curve.total == sum(counts)


class TestSampleBreakdowns:
    def test_zero_expectation_is_always_zero(self):
        assert sample_breakdowns(0.0, 5.0, StubRng([])) == 0

    def test_single_trial_threshold_rule(self):
        assert sample_breakdowns(0.4, 1.0, StubRng([0.39])) == 1
        assert sample_breakdowns(0.4, 1.0, StubRng([0.41])) == 0
        assert sample_breakdowns(0.4, 1.0, StubRng([0.40])) == 1  # ties count as hits

    def test_split_components_mean(self):
        # 4 components at 0.625 each keep the expectation at 2.5.
        rng = np.random.default_rng(123)
        draws = 1_000_000
        uniforms = rng.random((draws, 4))
        total = 0
        for row in uniforms:
            total += sample_breakdowns(2.5, 100.0, StubRng(row), component_count=4)
        assert total / draws == pytest.approx(2.5, abs=0.01)

    def test_default_split_allows_exceeding_expectation(self):
        rng = np.random.default_rng(7)
        values = [sample_breakdowns(2.5, 100.0, rng) for _ in range(4000)]
        assert np.mean(values) == pytest.approx(2.5, abs=0.1)
        assert max(values) > 2.5  # headroom above the expectation exists

    def test_clamped_to_record_ceiling(self):
        # Three hits drawn, but only ceil(1.2) = 2 records available.
        assert sample_breakdowns(1.1, 1.2, StubRng([0.01, 0.01, 0.01])) == 2

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            sample_breakdowns(2.0, 2.0, StubRng([]))
        with pytest.raises(ValueError):
            sample_breakdowns(-0.1, 1.0, StubRng([]))
        with pytest.raises(ValueError):
            sample_breakdowns(2.5, 10.0, StubRng([]), component_count=2)


class TestGenerateDataset:
    def test_degenerate_distribution_yields_no_breakdowns(self):
        profile = base_profile()
        far = WeibullCapacity(scale=1e8, shape=6.5)
        assert expected_breakdowns(profile, far).sum() < 1e-6
        dataset = generate_dataset(profile, far, seed=1)
        assert dataset.total_breakdowns == 0

    def test_same_seed_regenerates_identical_data(self):
        profile = base_profile()
        first = generate_dataset(profile, DIST, seed=99)
        second = generate_dataset(profile, DIST, seed=99)
        assert np.array_equal(first.breakdowns, second.breakdowns)
        assert generate_dataset(profile, DIST, seed=100).breakdowns.tolist() != first.breakdowns.tolist()

    def test_totals_fluctuate_around_expectation(self):
        profile = base_profile()
        totals = [generate_dataset(profile, DIST, seed=s).total_breakdowns for s in range(15)]
        assert all(20 <= total <= 90 for total in totals)
        assert len(set(totals)) > 1
        assert np.mean(totals) == pytest.approx(52.0, abs=8.0)

    def test_per_level_draws_are_independent_substreams(self):
        profile = base_profile()
        head = IntensityProfile(levels=profile.levels[:20], records=profile.records[:20])
        full = generate_dataset(profile, DIST, seed=5)
        truncated = generate_dataset(head, DIST, seed=5)
        assert np.array_equal(full.breakdowns[:20], truncated.breakdowns)

    def test_rejects_negative_seed(self):
        with pytest.raises(ValueError):
            generate_dataset(base_profile(), DIST, seed=-1)

    def test_breakdowns_bounded_by_record_ceiling(self):
        profile = base_profile()
        dataset = generate_dataset(profile, DIST, seed=3)
        assert np.all(dataset.breakdowns <= np.ceil(profile.records))


class TestRescaleProfile:
    def test_identity_at_current_total(self):
        profile = base_profile()
        current = expected_breakdowns(profile, DIST).sum()
        rescaled = rescale_profile(profile, DIST, current)
        assert np.allclose(rescaled.records, profile.records, rtol=1e-12)

    def test_quartering_to_13(self):
        profile = base_profile()
        rescaled = rescale_profile(profile, DIST, 13.0)
        assert np.allclose(rescaled.records, profile.records * 0.25, rtol=1e-9)
        assert expected_breakdowns(rescaled, DIST).sum() == pytest.approx(13.0, rel=1e-9)

    def test_eightfold_record_total(self):
        profile = base_profile()
        rescaled = rescale_profile(profile, DIST, 8.0 * 52.0)
        assert rescaled.total_records == pytest.approx(59576.0, rel=1e-6)

    def test_level_set_unchanged(self):
        profile = base_profile()
        rescaled = rescale_profile(profile, DIST, 104.0)
        assert np.array_equal(rescaled.levels, profile.levels)

    def test_rejects_zero_expected_breakdowns(self):
        # F underflows to exactly zero at this intensity.
        profile = IntensityProfile(levels=[1e-48], records=[10.0])
        assert expected_breakdowns(profile, DIST).sum() == 0.0
        with pytest.raises(ValueError):
            rescale_profile(profile, DIST, 10.0)

    @given(
        first=st.floats(min_value=0.1, max_value=50.0),
        second=st.floats(min_value=0.1, max_value=50.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_rescale_composition(self, first, second):
        profile = base_profile()
        current = expected_breakdowns(profile, DIST).sum()
        chained = rescale_profile(rescale_profile(profile, DIST, first * current), DIST, first * second * current)
        direct = rescale_profile(profile, DIST, first * second * current)
        assert np.allclose(chained.records, direct.records, rtol=1e-9)


class TestCalibrateBaseProfile:
    def test_hits_record_and_breakdown_totals(self):
        profile = base_profile()
        assert profile.total_records == pytest.approx(7447.0, rel=1e-12)
        # Independent check of the breakdown total, straight arithmetic.
        total = 0.0
        for level, weight in zip(profile.levels, profile.records):
            total += weight * (1.0 - math.exp(-((level / 150.0) ** 6.5)))
        assert total == pytest.approx(52.0, abs=1e-4)

    def test_matches_published_scaled_regime(self):
        profile = base_profile(
            total_records=59576.0, dist=WeibullCapacity(scale=183.0, shape=7.5), target=50.32
        )
        total = 0.0
        for level, weight in zip(profile.levels, profile.records):
            total += weight * (1.0 - math.exp(-((level / 183.0) ** 7.5)))
        assert total == pytest.approx(50.32, abs=1e-4)

    def test_deterministic(self):
        first = base_profile()
        second = base_profile()
        assert np.array_equal(first.records, second.records)

    def test_unimodal_shape(self):
        profile = base_profile()
        mode = int(np.argmax(profile.records))
        assert np.all(np.diff(profile.records[: mode + 1]) >= 0.0)
        assert np.all(np.diff(profile.records[mode:]) <= 0.0)

    def test_infeasible_target_raises_with_bound(self):
        dist = WeibullCapacity(scale=500.0, shape=6.5)
        supremum = 100.0 * dist.breakdown_probability(249.0)
        with pytest.raises(ValueError, match="not attainable"):
            calibrate_base_profile(
                CalibrationSpec(3.0, 249.0, 3.0, 100.0, dist, supremum * 1.5)
            )

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            CalibrationSpec(100.0, 50.0, 3.0, 100.0, DIST, 5.0)
        with pytest.raises(ValueError):
            CalibrationSpec(3.0, 249.0, 0.0, 100.0, DIST, 5.0)
        with pytest.raises(ValueError):
            CalibrationSpec(3.0, 249.0, 3.0, -5.0, DIST, 5.0)
        with pytest.raises(ValueError):
            CalibrationSpec(3.0, 249.0, 3.0, 100.0, DIST, 5.0, mode_quantile=1.5)


class TestExpectationProperty:
    def test_mean_total_converges_to_expected(self):
        profile = base_profile()
        totals = [generate_dataset(profile, DIST, seed=s).total_breakdowns for s in range(200)]
        # Var(total) <= 52 per level-wise sub-binomial draws.
        margin = 3.0 * math.sqrt(52.0 / 200.0)
        assert np.mean(totals) == pytest.approx(52.0, abs=margin + 1.0)
