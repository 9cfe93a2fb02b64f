"""Slow-light dispersion layer: group velocity, polariton mixing angle, and
the collisional coupling coefficients of the polariton transport equation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import C_LIGHT, EPSILON_0, HBAR
from .errors import ConfigError, ValidityWarning
from .params import ExperimentConfig, recoil_velocity

# fraction of c above which the slow-light expansion is no longer trusted
VGR_VALIDITY_FRACTION = 0.1


@dataclass(frozen=True)
class EitMedium:
    """Derived dispersion quantities of the lattice EIT medium.

    The kappas (m/s) multiply a one-dimensional polariton density: self
    terms couple a polariton to its own polarization, the cross term to the
    counter-propagating one. ``compression_ratio`` is the spatial pulse
    compression v_gr/c at the medium boundary.
    """

    v_gr: float
    theta: float
    v_rec: float
    kappa_self_plus: float
    kappa_self_minus: float
    kappa_cross: float
    compression_ratio: float


def group_velocity(config: ExperimentConfig) -> float:
    """EIT group velocity 2 c hbar |Omega0|^2 epsilon_0 / (|mu|^2 omega n).

    Valid deep in the slow-light regime; a ``ValidityWarning`` is emitted
    above ``VGR_VALIDITY_FRACTION`` of c.
    """
    n = config.density_n
    denominator = config.dipole_mu**2 * config.probe_omega * n
    if denominator <= 0 or not math.isfinite(denominator):
        raise ConfigError("group velocity needs dipole_mu, probe_omega and density > 0")
    v_gr = 2.0 * C_LIGHT * HBAR * config.control_rabi_Omega0**2 * EPSILON_0 / denominator
    if v_gr > VGR_VALIDITY_FRACTION * C_LIGHT:
        warnings.warn(
            f"v_gr = {v_gr:.3e} m/s exceeds {VGR_VALIDITY_FRACTION} c; the "
            "slow-light expansion is unreliable here",
            ValidityWarning,
            stacklevel=2,
        )
    return v_gr


def mixing_angle(v_gr: float) -> float:
    """Polariton mixing angle theta with v_gr = c cos^2(theta)."""
    if not (0.0 < v_gr <= C_LIGHT):
        raise ConfigError(f"v_gr must be in (0, c], got {v_gr!r}")
    return math.acos(math.sqrt(v_gr / C_LIGHT))


def nonlinear_coefficients(
    config: ExperimentConfig, v_rec: float
) -> tuple[float, float, float]:
    """Collisional coupling coefficients 2 a_ij lambda v_rec f^3 / A.

    Returns (self_plus, self_minus, cross); each carries the sign of its
    scattering length.
    """
    if config.beam_area_A <= 0:
        raise ConfigError("beam area must be > 0")
    scale = 2.0 * config.wavelength_lambda * v_rec * config.confinement_f**3 / config.beam_area_A
    return (
        config.scattering_length_a_pp * scale,
        config.scattering_length_a_mm * scale,
        config.scattering_length_a_pm * scale,
    )


def build_medium(config: ExperimentConfig) -> EitMedium:
    """Assemble the full dispersion summary for one configuration."""
    v_gr = group_velocity(config)
    v_rec = recoil_velocity(config.probe_omega, config.atom_mass_m)
    self_plus, self_minus, cross = nonlinear_coefficients(config, v_rec)
    return EitMedium(
        v_gr=v_gr,
        theta=mixing_angle(v_gr),
        v_rec=v_rec,
        kappa_self_plus=self_plus,
        kappa_self_minus=self_minus,
        kappa_cross=cross,
        compression_ratio=v_gr / C_LIGHT,
    )
