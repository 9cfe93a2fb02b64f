"""Closed-form gate figures of merit and parameter sweeps.

The conditional phase of a full head-on crossing is

    dphi = (a_pm * lambda / A) * (v_rec / v_gr) * f^3

and is independent of the pulse shapes, lengths and separation; the
operations here therefore take no pulse arguments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import C_LIGHT
from .dispersion import mixing_angle
from .errors import ConfigError, ValidityWarning
from .params import ExperimentConfig, recoil_velocity
from . import dispersion

SWEEP_AXES = ("f", "v_gr", "A", "a_pm")


@dataclass(frozen=True)
class GateReport:
    """Phase-gate figures of merit for one parameter point.

    ``phase_error`` is |dphi - pi|. ``delta_phi_measured`` and
    ``homogeneity`` are present when a simulation backs the report;
    ``dephasing_amplitude_factor`` when a coherence decay rate was given.
    """

    delta_phi: float
    v_gr: float
    v_rec: float
    theta: float
    compression_ratio: float
    phase_error: float
    interaction_time_T: float | None = None
    delta_phi_measured: float | None = None
    homogeneity: float | None = None
    dephasing_amplitude_factor: float | None = None

    def to_dict(self) -> dict:
        return {
            "delta_phi": self.delta_phi,
            "v_gr": self.v_gr,
            "v_rec": self.v_rec,
            "theta": self.theta,
            "compression_ratio": self.compression_ratio,
            "phase_error": self.phase_error,
            "interaction_time_T": self.interaction_time_T,
            "delta_phi_measured": self.delta_phi_measured,
            "homogeneity": self.homogeneity,
            "dephasing_amplitude_factor": self.dephasing_amplitude_factor,
        }


def delta_phi(config: ExperimentConfig, v_gr: float) -> float:
    """Conditional collision phase of a complete crossing, in radians."""
    if config.beam_area_A <= 0:
        raise ConfigError("beam area must be > 0")
    if v_gr <= 0:
        raise ConfigError("group velocity must be > 0")
    v_rec = recoil_velocity(config.probe_omega, config.atom_mass_m)
    return (
        config.scattering_length_a_pm
        * config.wavelength_lambda
        / config.beam_area_A
        * (v_rec / v_gr)
        * config.confinement_f**3
    )


def interaction_time(
    pulse_length_L: float, v_gr: float, wavelength: float | None = None
) -> float:
    """Head-on interaction time T = L / (2 v_gr).

    Warns when the compressed pulse length is below ten wavelengths, where
    the slowly-varying-envelope treatment of the pulse becomes doubtful.
    """
    if pulse_length_L <= 0:
        raise ConfigError("pulse length must be > 0")
    if v_gr <= 0:
        raise ConfigError("group velocity must be > 0")
    if wavelength is not None and pulse_length_L < 10.0 * wavelength:
        warnings.warn(
            f"compressed pulse length {pulse_length_L:.3e} m is below ten "
            f"wavelengths ({10.0 * wavelength:.3e} m)",
            ValidityWarning,
            stacklevel=2,
        )
    return pulse_length_L / (2.0 * v_gr)


def build_report(
    config: ExperimentConfig,
    v_gr: float | None = None,
    gamma_q: float | None = None,
    delta_phi_measured: float | None = None,
    homogeneity: float | None = None,
) -> GateReport:
    """Assemble a GateReport; v_gr defaults to the config's group velocity."""
    if v_gr is None:
        v_gr = dispersion.group_velocity(config)
    v_rec = recoil_velocity(config.probe_omega, config.atom_mass_m)
    phi = delta_phi(config, v_gr)
    t_interaction = None
    if config.pulse_length_L is not None:
        t_interaction = interaction_time(
            config.pulse_length_L, v_gr, wavelength=config.wavelength_lambda
        )
    dephasing = None
    if gamma_q is not None:
        if gamma_q < 0:
            raise ConfigError("gamma_q must be >= 0")
        if t_interaction is None:
            raise ConfigError(
                "dephasing factor needs pulse_length_L to fix the interaction time"
            )
        theta = mixing_angle(v_gr)
        dephasing = math.exp(-2.0 * gamma_q * math.sin(theta) ** 2 * t_interaction)
    return GateReport(
        delta_phi=phi,
        v_gr=v_gr,
        v_rec=v_rec,
        theta=mixing_angle(v_gr),
        compression_ratio=v_gr / C_LIGHT,
        phase_error=abs(phi - math.pi),
        interaction_time_T=t_interaction,
        delta_phi_measured=delta_phi_measured,
        homogeneity=homogeneity,
        dephasing_amplitude_factor=dephasing,
    )


@dataclass(frozen=True)
class SweepSample:
    axis_value: float
    report: GateReport


@dataclass(frozen=True)
class SweepResult:
    axis: str
    samples: list[SweepSample]
    crossing: float | None

    def crossing_report(self, config: ExperimentConfig) -> GateReport | None:
        if self.crossing is None:
            return None
        return _sample_report(config, self.axis, self.crossing)


def _sample_report(config: ExperimentConfig, axis: str, value: float) -> GateReport:
    if axis == "v_gr":
        return build_report(config, v_gr=value)
    if axis == "f":
        return build_report(config.replace(confinement_f=value))
    if axis == "A":
        return build_report(config.replace(beam_area_A=value))
    if axis == "a_pm":
        return build_report(config.replace(scattering_length_a_pm=value))
    raise ConfigError(f"unknown sweep axis {axis!r}; choose from {SWEEP_AXES}")


def _crossing_coordinate(axis: str, value: float) -> float:
    # coordinate in which dphi is exactly linear, so interpolation is exact
    if axis in ("v_gr", "A"):
        return 1.0 / value
    if axis == "f":
        return value**3
    return value


def _coordinate_to_axis(axis: str, x: float) -> float:
    if axis in ("v_gr", "A"):
        return 1.0 / x
    if axis == "f":
        return x ** (1.0 / 3.0)
    return x


def sweep(
    config_template: ExperimentConfig,
    axis: str,
    lo: float,
    hi: float,
    samples: int,
) -> SweepResult:
    """Scan one axis, reporting gate metrics and the dphi = pi crossing.

    The crossing is located by linear interpolation in a transformed
    coordinate (1/v_gr, 1/A, f^3, or a_pm itself) where the phase formula
    is exactly linear, so the inversion carries no interpolation error.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; choose from {SWEEP_AXES}")
    if samples < 2:
        raise ConfigError("sweep needs at least 2 samples")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or hi <= 0 or hi <= lo:
        raise ConfigError(f"sweep range must satisfy 0 < lo < hi, got ({lo!r}, {hi!r})")

    values = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    results = [SweepSample(v, _sample_report(config_template, axis, v)) for v in values]

    crossing = None
    for left, right in zip(results, results[1:]):
        f_left = left.report.delta_phi - math.pi
        f_right = right.report.delta_phi - math.pi
        if f_left == 0.0:
            crossing = left.axis_value
            break
        if f_right == 0.0:
            crossing = right.axis_value
            break
        if f_left * f_right < 0.0:
            x1 = _crossing_coordinate(axis, left.axis_value)
            x2 = _crossing_coordinate(axis, right.axis_value)
            x_star = x1 + (x2 - x1) * f_left / (f_left - f_right)
            crossing = _coordinate_to_axis(axis, x_star)
            break
    return SweepResult(axis=axis, samples=results, crossing=crossing)
