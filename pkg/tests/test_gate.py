import math

import numpy as np
import pytest

from polariton_gate import (
    GaussianEnvelope,
    InitialCondition,
    build_initial_wave,
    build_medium,
    build_report,
    collision_phase,
    delta_phi,
    evolve_characteristics,
    extract_phase,
    interaction_time,
    sweep,
)
from polariton_gate.errors import ConfigError, ValidityWarning
from polariton_gate.params import GridSpec


class TestDeltaPhi:
    def test_paper_estimate(self, paper_config):
        # hand evaluation: (10/800) * (1/10) * 1000 = 1.25 rad
        assert delta_phi(paper_config, 0.1) == pytest.approx(1.25, rel=1e-9)

    def test_unit_confinement(self, paper_config):
        config = paper_config.replace(confinement_f=1.0)
        assert delta_phi(config, 0.1) == pytest.approx(1.25e-3, rel=1e-9)

    def test_halving_group_velocity_doubles_phase(self, paper_config):
        assert delta_phi(paper_config, 0.05) == pytest.approx(
            2.0 * delta_phi(paper_config, 0.1), rel=1e-12
        )

    def test_sign_follows_scattering_length(self, paper_config):
        attractive = paper_config.replace(scattering_length_a_pm=-10e-9)
        assert delta_phi(attractive, 0.1) < 0

    def test_rejects_nonpositive_group_velocity(self, paper_config):
        with pytest.raises(ConfigError):
            delta_phi(paper_config, 0.0)

    def test_consistent_with_transport_coefficient(self, paper_config):
        # kappa_cross/(2 v_gr) is the phase the transport solvers imprint
        medium = build_medium(paper_config)
        assert delta_phi(paper_config, medium.v_gr) == pytest.approx(
            collision_phase(medium), rel=1e-12
        )

    def test_matches_characteristics_measurement_exactly(self, paper_config):
        sigma = 1e-6
        medium = build_medium(paper_config)
        ic = InitialCondition(
            GaussianEnvelope(-5 * sigma, sigma), GaussianEnvelope(5 * sigma, sigma)
        )
        wave = build_initial_wave(ic, grid=GridSpec(n_xi=513, n_r=4))
        t = 256 * wave.d_xi / (2.0 * medium.v_gr)
        out = evolve_characteristics(wave, medium, t)
        measured = extract_phase(wave, out, medium.v_gr, t).delta_phi
        assert measured == pytest.approx(delta_phi(paper_config, medium.v_gr), abs=1e-13)

    def test_independent_of_pulse_parameters(self, paper_config):
        # different widths and separations must measure the same phase
        medium = build_medium(paper_config)
        measured = []
        for sigma, gap in ((1e-6, 10e-6), (2e-6, 24e-6), (0.5e-6, 4.5e-6)):
            ic = InitialCondition(
                GaussianEnvelope(-gap / 2, sigma), GaussianEnvelope(gap / 2, sigma)
            )
            wave = build_initial_wave(ic, grid=GridSpec(n_xi=1025, n_r=4))
            cells = int(round(2 * gap / wave.d_xi))
            t = cells * wave.d_xi / (2.0 * medium.v_gr)
            out = evolve_characteristics(wave, medium, t)
            measured.append(extract_phase(wave, out, medium.v_gr, t).delta_phi)
        assert max(measured) - min(measured) <= 1e-12


class TestInteractionTime:
    def test_paper_value(self):
        # L = 10 lambda = 8 um at v_gr = 0.1 m/s gives 40 us
        assert interaction_time(8e-6, 0.1) == pytest.approx(4e-5, rel=1e-9)

    def test_linear_in_length(self):
        assert interaction_time(16e-6, 0.1) == pytest.approx(
            2 * interaction_time(8e-6, 0.1), rel=1e-15
        )

    def test_fast_limit_short_time(self):
        from polariton_gate.constants import C_LIGHT

        assert interaction_time(8e-6, C_LIGHT) < 2e-14

    def test_warns_below_ten_wavelengths(self):
        with pytest.warns(ValidityWarning):
            interaction_time(5e-6, 0.1, wavelength=800e-9)

    def test_rejects_nonpositive(self):
        with pytest.raises(ConfigError):
            interaction_time(0.0, 0.1)
        with pytest.raises(ConfigError):
            interaction_time(8e-6, -1.0)


class TestBuildReport:
    def test_paper_report(self, paper_config):
        report = build_report(paper_config)
        assert report.delta_phi == pytest.approx(1.25, rel=1e-9)
        assert report.interaction_time_T == pytest.approx(4e-5, rel=1e-9)
        assert report.phase_error == pytest.approx(math.pi - 1.25, rel=1e-9)
        assert report.compression_ratio == pytest.approx(0.1 / 299792458.0, rel=1e-9)

    def test_dephasing_factor(self, paper_config):
        report = build_report(paper_config, gamma_q=1000.0)
        assert report.dephasing_amplitude_factor == pytest.approx(
            math.exp(-0.08), rel=1e-9
        )

    def test_dephasing_needs_pulse_length(self, paper_config):
        config = paper_config.replace(pulse_length_L=None)
        with pytest.raises(ConfigError):
            build_report(config, gamma_q=1000.0)

    def test_report_serializes(self, paper_config):
        payload = build_report(paper_config).to_dict()
        assert set(payload) >= {
            "delta_phi",
            "interaction_time_T",
            "v_gr",
            "v_rec",
            "theta",
            "compression_ratio",
            "phase_error",
            "homogeneity",
            "dephasing_amplitude_factor",
        }


class TestSweep:
    def test_group_velocity_crossing(self, paper_config):
        # closed form: v* = (a_pm lambda / A) v_rec f^3 / pi = 0.125/pi
        result = sweep(paper_config, "v_gr", 0.01, 0.1, 19)
        expected = 0.125 / math.pi
        assert result.crossing == pytest.approx(expected, rel=1e-12)

    def test_confinement_crossing(self, paper_config):
        # closed form: f* = 10 (pi/1.25)^(1/3)
        result = sweep(paper_config, "f", 10.0, 16.0, 7)
        expected = 10.0 * (math.pi / 1.25) ** (1.0 / 3.0)
        assert result.crossing == pytest.approx(expected, rel=1e-12)

    def test_scattering_length_crossing(self, paper_config):
        # dphi linear in a_pm: crossing at a* = pi/1.25 * 10 nm
        result = sweep(paper_config, "a_pm", 1e-9, 5e-8, 12)
        assert result.crossing == pytest.approx(1e-8 * math.pi / 1.25, rel=1e-12)

    def test_no_crossing_reported_when_flat_below_pi(self, paper_config):
        result = sweep(paper_config, "v_gr", 0.05, 0.1, 6)
        assert result.crossing is None

    def test_monotonicity_signs(self, paper_config):
        # increasing in f and a_pm; decreasing in v_gr and A
        for axis, lo, hi, increasing in (
            ("f", 2.0, 12.0, True),
            ("a_pm", 1e-9, 2e-8, True),
            ("v_gr", 0.02, 0.2, False),
            ("A", 1e-13, 1e-12, False),
        ):
            result = sweep(paper_config, axis, lo, hi, 7)
            phis = [s.report.delta_phi for s in result.samples]
            diffs = np.diff(phis)
            assert np.all(diffs > 0) if increasing else np.all(diffs < 0)

    def test_sample_reports_track_axis(self, paper_config):
        result = sweep(paper_config, "v_gr", 0.02, 0.2, 4)
        for sample in result.samples:
            assert sample.report.v_gr == sample.axis_value
            assert sample.report.interaction_time_T == pytest.approx(
                8e-6 / (2 * sample.axis_value), rel=1e-12
            )

    def test_crossing_report_evaluates_to_pi(self, paper_config):
        result = sweep(paper_config, "v_gr", 0.01, 0.1, 19)
        report = result.crossing_report(paper_config)
        assert report.delta_phi == pytest.approx(math.pi, rel=1e-12)

    def test_rejects_bad_ranges(self, paper_config):
        with pytest.raises(ConfigError):
            sweep(paper_config, "v_gr", 0.1, 0.1, 5)
        with pytest.raises(ConfigError):
            sweep(paper_config, "v_gr", 0.01, 0.1, 1)
        with pytest.raises(ConfigError):
            sweep(paper_config, "area", 0.01, 0.1, 5)
