"""Physical inputs, validation, and single-atom derived quantities.

Everything is SI. A configuration file is a single JSON document whose top
level carries the ``ExperimentConfig`` field names verbatim, plus the two
optional sections ``initial_condition`` and ``grid``. Unknown keys are
rejected (fail-closed) so silent typos cannot change the physics.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .constants import C_LIGHT, HBAR
from .errors import (
    ConfigError,
    ConfinementError,
    LatticeSpacingError,
    MissingFieldError,
)

_POSITIVE_FIELDS = (
    "wavelength_lambda",
    "beam_area_A",
    "lattice_constant_a",
    "atom_mass_m",
    "control_rabi_Omega0",
    "dipole_mu",
    "probe_omega",
)

# optional, but must be positive when present
_POSITIVE_OPTIONAL = (
    "control_omega_c",
    "wavenumber_k",
    "wavenumber_k_c",
    "omega_e_plus",
    "omega_e_minus",
    "omega_q_plus",
    "omega_q_minus",
    "pulse_length_L",
)

_SCATTERING_FIELDS = (
    "scattering_length_a_pm",
    "scattering_length_a_pp",
    "scattering_length_a_mm",
    "scattering_length_a_g",
    "scattering_length_a_gp",
    "scattering_length_a_gm",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """All physical inputs of one experiment, in SI units.

    Scattering lengths may be zero or negative (attractive collisions);
    every other length, area, mass and frequency must be strictly positive.
    ``pulse_length_L`` is the compressed pulse length inside the medium and
    is only needed for interaction-time reporting.
    """

    wavelength_lambda: float
    beam_area_A: float
    lattice_constant_a: float
    confinement_f: float
    atoms_per_site_N: int
    scattering_length_a_pm: float
    scattering_length_a_pp: float
    scattering_length_a_mm: float
    scattering_length_a_g: float
    scattering_length_a_gp: float
    scattering_length_a_gm: float
    atom_mass_m: float
    control_rabi_Omega0: float
    dipole_mu: float
    probe_omega: float
    control_omega_c: float | None = None
    wavenumber_k: float | None = None
    wavenumber_k_c: float | None = None
    omega_e_plus: float | None = None
    omega_e_minus: float | None = None
    omega_q_plus: float | None = None
    omega_q_minus: float | None = None
    pulse_length_L: float | None = None

    def __post_init__(self) -> None:
        for name in _POSITIVE_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be finite and > 0, got {value!r}")
        for name in _POSITIVE_OPTIONAL:
            value = getattr(self, name)
            if value is None:
                continue
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0.0:
                raise ConfigError(f"{name} must be finite and > 0, got {value!r}")
        for name in _SCATTERING_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        if not isinstance(self.atoms_per_site_N, int) or isinstance(self.atoms_per_site_N, bool):
            raise ConfigError("atoms_per_site_N must be an integer (regular filling)")
        if self.atoms_per_site_N < 1:
            raise ConfigError("atoms_per_site_N must be >= 1")
        if not math.isfinite(self.confinement_f):
            raise ConfigError("confinement_f must be finite")
        if self.confinement_f < 1.0:
            raise ConfinementError(
                f"confinement_f = {self.confinement_f} < 1; the Wannier state "
                "cannot be wider than the lattice site"
            )
        if self.lattice_constant_a >= self.wavelength_lambda:
            raise LatticeSpacingError(
                f"lattice_constant_a = {self.lattice_constant_a} must be smaller "
                f"than wavelength_lambda = {self.wavelength_lambda} (Bragg "
                "scattering is out of scope)"
            )

    @property
    def density_n(self) -> float:
        """Average atom density N / a^3 in 1/m^3."""
        return self.atoms_per_site_N / self.lattice_constant_a**3

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class InitialConditionSpec:
    """Gaussian envelope parameters for the two counter-propagating pulses."""

    sigma_plus: float
    sigma_minus: float
    center_plus: float
    center_minus: float

    def __post_init__(self) -> None:
        if self.sigma_plus <= 0 or self.sigma_minus <= 0:
            raise ConfigError("envelope rms widths must be > 0")
        if self.center_plus >= self.center_minus:
            raise ConfigError(
                "center_plus must lie left of center_minus so the pulses approach "
                "(difference coordinate support in xi < 0)"
            )


@dataclass(frozen=True)
class GridSpec:
    """Sampling of the (R, xi) plane; spans default to multiples of the rms width."""

    n_xi: int = 2048
    n_r: int = 64
    xi_halfspan: float | None = None  # meters; default 20 * max envelope sigma
    r_halfspan: float | None = None  # meters; default 5 * max envelope sigma

    def __post_init__(self) -> None:
        if self.n_xi < 16 or self.n_r < 1:
            raise ConfigError("grid must have n_xi >= 16 and n_r >= 1")
        for name in ("xi_halfspan", "r_halfspan"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError(f"{name} must be > 0 when given")


@dataclass(frozen=True)
class LoadedConfig:
    experiment: ExperimentConfig
    initial_condition: InitialConditionSpec | None
    grid: GridSpec


def _build_section(cls, data: dict, section: str):
    allowed = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in '{section}': {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"invalid '{section}' section: {exc}") from exc


def config_from_dict(data: dict) -> LoadedConfig:
    """Strict parse of a config document (see module docstring)."""
    if not isinstance(data, dict):
        raise ConfigError("configuration document must be a JSON object")
    data = dict(data)
    ic_data = data.pop("initial_condition", None)
    grid_data = data.pop("grid", None)

    allowed = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    missing = {
        name
        for name in allowed
        if name not in data and name not in _POSITIVE_OPTIONAL
    }
    if missing:
        raise ConfigError(f"missing configuration keys: {sorted(missing)}")
    experiment = ExperimentConfig(**data)

    ic = None
    if ic_data is not None:
        if not isinstance(ic_data, dict):
            raise ConfigError("'initial_condition' must be an object")
        ic = _build_section(InitialConditionSpec, ic_data, "initial_condition")
    grid = GridSpec()
    if grid_data is not None:
        if not isinstance(grid_data, dict):
            raise ConfigError("'grid' must be an object")
        grid = _build_section(GridSpec, grid_data, "grid")
    return LoadedConfig(experiment=experiment, initial_condition=ic, grid=grid)


def load_config(path: str | Path) -> LoadedConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError:
        raise
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def collision_strength(a_s: float, m: float) -> float:
    """Two-body contact-interaction strength u = 4 pi a_s hbar / m.

    ``a_s`` may be negative (attractive); the mass must be positive. The
    result has units of m^3/s and multiplies a number density to give a
    frequency shift.
    """
    if m <= 0 or not math.isfinite(m):
        raise ConfigError(f"mass must be > 0, got {m!r}")
    if not math.isfinite(a_s):
        raise ConfigError(f"scattering length must be finite, got {a_s!r}")
    return 4.0 * math.pi * a_s * HBAR / m


def recoil_velocity(probe_omega: float, m: float) -> float:
    """Single-photon recoil velocity hbar*omega / (m*c)."""
    if probe_omega <= 0 or not math.isfinite(probe_omega):
        raise ConfigError(f"probe_omega must be > 0, got {probe_omega!r}")
    if m <= 0 or not math.isfinite(m):
        raise ConfigError(f"mass must be > 0, got {m!r}")
    return HBAR * probe_omega / (m * C_LIGHT)


@dataclass(frozen=True)
class DetuningReport:
    """One- and two-photon detunings plus the collision-shifted resonance test.

    ``shifted_q_*`` is the two-photon detuning including the ground-state
    collision shift; the slow-light derivation assumes both it and the
    one-photon detunings vanish. The check is advisory: solvers assume
    resonance regardless.
    """

    delta_e_plus: float
    delta_e_minus: float
    delta_q_plus: float
    delta_q_minus: float
    shifted_q_plus: float
    shifted_q_minus: float
    tolerance: float
    resonant_e: bool
    resonant_q: bool

    @property
    def resonant(self) -> bool:
        return self.resonant_e and self.resonant_q


def detunings(config: ExperimentConfig, tolerance: float | None = None) -> DetuningReport:
    """Evaluate the one- and two-photon detunings of both polarizations.

    delta_e = omega_e - omega + hbar k^2 / 2m
    delta_q = omega_q - omega + omega_c + hbar (k - k_c)^2 / 2m

    Raises ``MissingFieldError`` when the level frequencies or wavenumbers
    were not supplied. ``tolerance`` defaults to 1e-6 * Omega0: detunings
    far below the control coupling are operationally zero.
    """
    required = (
        "control_omega_c",
        "wavenumber_k",
        "wavenumber_k_c",
        "omega_e_plus",
        "omega_e_minus",
        "omega_q_plus",
        "omega_q_minus",
    )
    missing = [name for name in required if getattr(config, name) is None]
    if missing:
        raise MissingFieldError(f"detunings need config fields {missing}")
    if tolerance is None:
        tolerance = 1e-6 * abs(config.control_rabi_Omega0)
    kinetic_e = HBAR * config.wavenumber_k**2 / (2.0 * config.atom_mass_m)
    dk = config.wavenumber_k - config.wavenumber_k_c
    kinetic_q = HBAR * dk**2 / (2.0 * config.atom_mass_m)
    two_photon = config.control_omega_c - config.probe_omega + kinetic_q

    de_p = config.omega_e_plus - config.probe_omega + kinetic_e
    de_m = config.omega_e_minus - config.probe_omega + kinetic_e
    dq_p = config.omega_q_plus + two_photon
    dq_m = config.omega_q_minus + two_photon

    weight = config.density_n * config.confinement_f**3
    shift_p = collision_strength(config.scattering_length_a_gp, config.atom_mass_m) * weight
    shift_m = collision_strength(config.scattering_length_a_gm, config.atom_mass_m) * weight
    shifted_p = dq_p + shift_p
    shifted_m = dq_m + shift_m
    return DetuningReport(
        delta_e_plus=de_p,
        delta_e_minus=de_m,
        delta_q_plus=dq_p,
        delta_q_minus=dq_m,
        shifted_q_plus=shifted_p,
        shifted_q_minus=shifted_m,
        tolerance=tolerance,
        resonant_e=max(abs(de_p), abs(de_m)) <= tolerance,
        resonant_q=max(abs(shifted_p), abs(shifted_m)) <= tolerance,
    )
