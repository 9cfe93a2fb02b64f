"""Desk-scale simulator of dark-state polariton scattering in a lattice EIT
medium and the resulting two-photon conditional phase gate.
"""

__version__ = "0.1.0"

from .constants import C_LIGHT, EPSILON_0, HBAR
from .dispersion import EitMedium, build_medium, group_velocity, mixing_angle
from .gate import GateReport, build_report, delta_phi, interaction_time, sweep
from .params import (
    DetuningReport,
    ExperimentConfig,
    GridSpec,
    InitialConditionSpec,
    LoadedConfig,
    collision_strength,
    config_from_dict,
    detunings,
    load_config,
    recoil_velocity,
)
from .scattering import (
    GaussianEnvelope,
    InitialCondition,
    PhaseMeasurement,
    SampledEnvelope,
    TwoParticleWave,
    apply_dephasing,
    build_initial_wave,
    collision_phase,
    evolve_characteristics,
    evolve_fd,
    extract_phase,
    wrap_angle,
)
from .site_dynamics import (
    AdiabaticResidual,
    DriveProfile,
    SiteAmplitudes,
    SiteTrajectory,
    adiabatic_reference,
    adiabatic_residual,
    integrate_site,
    residual_scaling_exponent,
)

__all__ = [
    "C_LIGHT",
    "EPSILON_0",
    "HBAR",
    "__version__",
    "AdiabaticResidual",
    "DetuningReport",
    "DriveProfile",
    "EitMedium",
    "ExperimentConfig",
    "GateReport",
    "GaussianEnvelope",
    "GridSpec",
    "InitialCondition",
    "InitialConditionSpec",
    "LoadedConfig",
    "PhaseMeasurement",
    "SampledEnvelope",
    "SiteAmplitudes",
    "SiteTrajectory",
    "TwoParticleWave",
    "adiabatic_reference",
    "adiabatic_residual",
    "apply_dephasing",
    "build_initial_wave",
    "build_medium",
    "build_report",
    "collision_phase",
    "collision_strength",
    "config_from_dict",
    "delta_phi",
    "detunings",
    "evolve_characteristics",
    "evolve_fd",
    "extract_phase",
    "group_velocity",
    "integrate_site",
    "interaction_time",
    "load_config",
    "mixing_angle",
    "recoil_velocity",
    "residual_scaling_exponent",
    "sweep",
    "wrap_angle",
]
