"""Budget assembly: spectra, improvement metrics, sweeps, inversion."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqzbudget import (
    GEO600,
    ConfigError,
    DomainError,
    FrequencyGrid,
    IfoConfig,
    NoiseSpectrum,
    SqueezeLevel,
    build_report,
    default_run_config,
    detection_rate_gain,
    improvement_db,
    required_efficiency_for_improvement,
    shot_limited_improvement_db,
    shot_noise_asd,
    sweep,
    technical_noise_asd,
    total_noise,
)

GRID = FrequencyGrid.logspace(10.0, 10000.0, 400)


def test_unsqueezed_total_hits_anchor():
    grid = FrequencyGrid(np.array([100.0, 3000.0]))
    spectrum = total_noise(GEO600, grid, 1.0)
    assert spectrum.total[1] == pytest.approx(1.0e-21, rel=1e-12)


def test_squeezed_total_at_anchor_matches_measurement():
    grid = FrequencyGrid(np.array([3000.0]))
    spectrum = total_noise(GEO600, grid, math.sqrt(0.442))
    assert spectrum.total[0] == pytest.approx(6.7e-22, rel=0.02)


def test_squeezing_is_neutral_where_technical_noise_dominates():
    grid = FrequencyGrid(np.array([100.0]))
    off = total_noise(GEO600, grid, 1.0)
    on = total_noise(GEO600, grid, math.sqrt(0.442))
    assert on.total[0] == pytest.approx(off.total[0], rel=0.01)


@given(sqz=st.floats(0.1, 3.0))
@settings(max_examples=200, deadline=None)
def test_quadrature_sum_consistency(sqz):
    spectrum = total_noise(GEO600, GRID, sqz)
    lhs = spectrum.total**2
    rhs = spectrum.quantum**2 + spectrum.tech**2
    assert np.max(np.abs(lhs - rhs) / rhs) <= 1e-12


def test_noise_spectrum_validation():
    n = len(GRID)
    q = np.full(n, 1e-21)
    t = np.full(n, 1e-22)
    good = np.hypot(q, t)
    NoiseSpectrum(GRID, q, t, good)
    with pytest.raises(DomainError):
        NoiseSpectrum(GRID, q[:-1], t[:-1], good[:-1])
    with pytest.raises(DomainError):
        NoiseSpectrum(GRID, q, t, good * 1.5)
    with pytest.raises(DomainError):
        NoiseSpectrum(GRID, -q, t, good)


class TestImprovement:
    def test_identical_spectra_give_zero_everywhere(self):
        off = total_noise(GEO600, GRID, 1.0)
        per_bin, band = improvement_db(off, off)
        assert np.all(per_bin == 0.0)
        assert band == 0.0

    def test_grid_mismatch_rejected(self):
        off = total_noise(GEO600, GRID, 1.0)
        other = total_noise(GEO600, FrequencyGrid.logspace(10.0, 10000.0, 401), 0.7)
        with pytest.raises(DomainError):
            improvement_db(off, other)

    def test_pure_shot_band_reproduces_the_squeezing_factor(self):
        # with the technical envelope off the improvement is flat and
        # equals the shot-limited asymptote at every bin
        cfg = IfoConfig(tech_displacement_asd=0.0)
        sqz = math.sqrt(0.442)
        off = total_noise(cfg, GRID, 1.0)
        on = total_noise(cfg, GRID, sqz)
        per_bin, band = improvement_db(off, on)
        expected = shot_limited_improvement_db(sqz)
        assert band == pytest.approx(expected, rel=1e-12)
        assert np.max(np.abs(per_bin - expected)) <= 1e-9
        assert expected == pytest.approx(3.55, abs=0.005)

    def test_technical_dominated_bin_is_neutral(self):
        grid = FrequencyGrid(np.array([100.0, 2000.0]))
        off = total_noise(GEO600, grid, 1.0)
        on = total_noise(GEO600, grid, math.sqrt(0.442))
        per_bin, _ = improvement_db(off, on, band=(50.0, 5000.0))
        assert abs(per_bin[0]) < 0.1

    def test_invariant_under_common_rescale(self):
        scale = 3.7
        scaled_cfg = IfoConfig(
            anchor_asd=GEO600.anchor_asd * scale,
            tech_displacement_asd=GEO600.tech_displacement_asd * scale,
        )
        sqz = math.sqrt(0.442)
        base, base_band = improvement_db(
            total_noise(GEO600, GRID, 1.0), total_noise(GEO600, GRID, sqz)
        )
        scaled, scaled_band = improvement_db(
            total_noise(scaled_cfg, GRID, 1.0), total_noise(scaled_cfg, GRID, sqz)
        )
        assert np.max(np.abs(scaled - base)) <= 1e-12
        assert scaled_band == pytest.approx(base_band, abs=1e-12)

    def test_band_median_recomputed_independently(self):
        report = build_report(default_run_config())
        f = report.spectrum_off.grid.values
        shot = np.asarray(shot_noise_asd(GEO600, f))
        tech = np.asarray(technical_noise_asd(GEO600, f))
        off = np.hypot(shot, tech)
        on = np.hypot(report.squeezing_factor * shot, tech)
        per_bin = 20.0 * np.log10(off / on)
        mask = (f >= 1000.0) & (f <= 5000.0)
        assert report.broadband_improvement_db == pytest.approx(
            float(np.median(per_bin[mask])), rel=1e-12
        )

    def test_nonnegative_and_fading_into_technical_floor(self):
        report = build_report(default_run_config())
        assert np.all(report.improvement_db >= 0.0)
        f = report.spectrum_off.grid.values
        assert report.improvement_db[f <= 100.0].max() < 0.1


class TestRateGain:
    def test_closed_form(self):
        assert abs(detection_rate_gain(1.5) - 3.375) <= 1e-12
        assert detection_rate_gain(1.0) == 1.0

    def test_operating_point(self):
        gain = detection_rate_gain(1.0 / math.sqrt(0.442))
        assert gain == pytest.approx(3.40, abs=0.005)

    @given(r1=st.floats(0.2, 3.0), r2=st.floats(0.2, 3.0))
    @settings(max_examples=200, deadline=None)
    def test_multiplicative(self, r1, r2):
        assert detection_rate_gain(r1 * r2) == pytest.approx(
            detection_rate_gain(r1) * detection_rate_gain(r2), rel=1e-12
        )

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            detection_rate_gain(0.0)


class TestReport:
    def test_default_operating_point(self):
        report = build_report(default_run_config())
        assert report.squeezing_factor == pytest.approx(math.sqrt(0.442), rel=1e-12)
        assert report.shot_limited_improvement_db == pytest.approx(
            -10.0 * math.log10(0.442), rel=1e-12
        )
        assert 3.3 <= report.rate_gain <= 3.5
        assert report.eta_effective == 0.62
        assert report.eta_stage_product == pytest.approx(0.648, rel=1e-12)
        assert report.anchor_computed_asd == pytest.approx(1.0e-21, rel=1e-12)
        assert len(report.ledger) == 3

    def test_stage_product_used_when_no_override(self):
        from dataclasses import replace

        run = replace(default_run_config(), eta_total=None)
        report = build_report(run)
        assert report.eta_effective == pytest.approx(0.648, rel=1e-12)

    def test_wrong_quadrature_injection_degrades(self):
        from dataclasses import replace

        run = replace(default_run_config(), injection_angle_rad=math.pi / 2.0)
        report = build_report(run)
        assert report.squeezing_factor > 1.0
        assert report.shot_limited_improvement_db < 0.0


class TestSweep:
    def test_monotone_in_eta(self):
        run = default_run_config()
        values = [0.1, 0.3, 0.5, 0.62, 0.8, 0.95, 1.0]
        rows = sweep(run, "eta", values)
        broadband = [r.broadband_improvement_db for r in rows]
        shot_limited = [r.shot_limited_improvement_db for r in rows]
        assert all(a < b for a, b in zip(broadband, broadband[1:]))
        assert all(a < b for a, b in zip(shot_limited, shot_limited[1:]))

    def test_monotone_in_injected_db(self):
        rows = sweep(default_run_config(), "injected_db", [0.0, 3.0, 6.0, 10.0, 15.0])
        shot_limited = [r.shot_limited_improvement_db for r in rows]
        assert all(a < b for a, b in zip(shot_limited, shot_limited[1:]))

    def test_improvement_vanishes_as_eta_vanishes(self):
        rows = sweep(default_run_config(), "eta", [1e-6])
        assert abs(rows[0].shot_limited_improvement_db) < 1e-4
        assert abs(rows[0].broadband_improvement_db) < 1e-4

    def test_operating_point_row(self):
        rows = sweep(default_run_config(), "eta", [0.62])
        assert rows[0].shot_limited_improvement_db == pytest.approx(3.55, abs=0.005)
        assert rows[0].rate_gain == pytest.approx(3.40, abs=0.005)

    def test_saturates_at_the_loss_ceiling(self):
        rows = sweep(default_run_config(), "injected_db", [10.0, 20.0, 30.0, 60.0])
        ceiling = -10.0 * math.log10(1.0 - 0.62)
        values = [r.shot_limited_improvement_db for r in rows]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert all(v < ceiling for v in values)
        assert values[-1] == pytest.approx(ceiling, abs=1e-3)

    def test_jitter_axis_degrades(self):
        rows = sweep(default_run_config(), "sigma", [0.0, 0.05, 0.2, 0.5])
        values = [r.shot_limited_improvement_db for r in rows]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_invalid_value_names_its_index(self):
        with pytest.raises(DomainError, match=r"\[2\]"):
            sweep(default_run_config(), "eta", [0.5, 0.7, 1.3])

    def test_unknown_axis_rejected(self):
        with pytest.raises(ConfigError):
            sweep(default_run_config(), "wavelength", [1e-6])

    def test_empty_values_rejected(self):
        with pytest.raises(ConfigError):
            sweep(default_run_config(), "eta", [])


class TestRequiredEfficiency:
    def test_six_db_goal(self):
        eta = required_efficiency_for_improvement(6.0, SqueezeLevel(10.0, 15.0))
        expected = (1.0 - 10.0 ** (-0.6)) / (1.0 - 0.1)
        assert eta == pytest.approx(expected, rel=1e-12)
        assert eta == pytest.approx(0.833, abs=1e-3)

    def test_round_trip_through_the_loss_formula(self):
        level = SqueezeLevel(10.0, 15.0)
        eta = required_efficiency_for_improvement(6.0, level)
        v_out = eta * 0.1 + (1.0 - eta)
        assert -10.0 * math.log10(v_out) == pytest.approx(6.0, abs=1e-12)

    def test_target_equal_to_injection_needs_unit_efficiency(self):
        assert required_efficiency_for_improvement(
            10.0, SqueezeLevel(10.0, 15.0)
        ) == pytest.approx(1.0, rel=1e-12)

    def test_unreachable_target_rejected(self):
        with pytest.raises(DomainError):
            required_efficiency_for_improvement(10.5, SqueezeLevel(10.0, 15.0))
        with pytest.raises(DomainError):
            required_efficiency_for_improvement(3.0, SqueezeLevel(0.0, 0.0))
        with pytest.raises(DomainError):
            required_efficiency_for_improvement(0.0, SqueezeLevel(10.0, 15.0))
