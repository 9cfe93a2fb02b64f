"""Single-site amplitude dynamics: the independent oracle for adiabatic
elimination.

Integrates the linear weak-probe equations for the slowly varying
amplitudes at one lattice site, with the ground state frozen at sqrt(N):

    de/dt = i (mu sqrt(N)/hbar) E(t) + i Omega0 q
    dq/dt = i conj(Omega0) e

(on resonance; detunings are assumed compensated, see params.detunings).
The trajectory is compared against the adiabatic solutions

    q0(t) = -(mu sqrt(N) / hbar Omega0) E(t)
    e1(t) = i (mu sqrt(N) / hbar |Omega0|^2) dE/dt

by averaging over windows of exactly one Rabi period: the free (e, q)
oscillation at +-|Omega0| is undamped, so raw pointwise residuals never
settle; over a full period it sums to zero and the average isolates the
adiabatic component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import HBAR
from .errors import ConfigError, StepSizeError
from .params import ExperimentConfig

# population fraction above which the weak-probe linearization is suspect
WEAK_PROBE_FRACTION = 0.01

DRIVE_KINDS = ("constant", "ramp", "gaussian")


@dataclass(frozen=True)
class DriveProfile:
    """Time-dependent complex probe envelope.

    kind:
        "constant"  E(t) = amplitude
        "ramp"      E(t) = slope * t
        "gaussian"  E(t) = amplitude * exp(-(t - center)^2 / (2 width^2))
    """

    kind: str
    amplitude: complex = 0.0 + 0.0j
    slope: complex = 0.0 + 0.0j
    center: float = 0.0
    width: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in DRIVE_KINDS:
            raise ConfigError(f"drive kind must be one of {DRIVE_KINDS}, got {self.kind!r}")
        if self.kind == "gaussian" and self.width <= 0:
            raise ConfigError("gaussian drive needs width > 0")

    @classmethod
    def constant(cls, amplitude: complex) -> "DriveProfile":
        return cls(kind="constant", amplitude=amplitude)

    @classmethod
    def ramp(cls, slope: complex) -> "DriveProfile":
        return cls(kind="ramp", slope=slope)

    @classmethod
    def gaussian(cls, amplitude: complex, center: float, width: float) -> "DriveProfile":
        return cls(kind="gaussian", amplitude=amplitude, center=center, width=width)

    def value(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full_like(t, self.amplitude, dtype=complex)
        if self.kind == "ramp":
            return self.slope * t
        return self.amplitude * np.exp(-((t - self.center) ** 2) / (2.0 * self.width**2))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(t, dtype=complex)
        if self.kind == "ramp":
            return np.full_like(t, self.slope, dtype=complex)
        return self.value(t) * (-(t - self.center) / self.width**2)

    @property
    def timescale(self) -> float | None:
        """Characteristic envelope time; None when the profile has none."""
        return self.width if self.kind == "gaussian" else None

    @property
    def is_zero(self) -> bool:
        if self.kind == "ramp":
            return self.slope == 0
        return self.amplitude == 0


@dataclass(frozen=True)
class SiteAmplitudes:
    """Slowly varying amplitudes at one lattice site at a single time."""

    g: complex
    e_plus: complex
    e_minus: complex
    q_plus: complex
    q_minus: complex
    t: float


@dataclass
class SiteTrajectory:
    """Fixed-step trajectory of the site amplitudes.

    ``coupling`` is mu*sqrt(N)/hbar, the per-site probe coupling of the
    frozen ground state. ``weak_probe_ok`` is False when the excited
    population fraction exceeded WEAK_PROBE_FRACTION anywhere.
    """

    t: np.ndarray
    e_plus: np.ndarray
    q_plus: np.ndarray
    e_minus: np.ndarray
    q_minus: np.ndarray
    dt: float
    rabi: float
    coupling: float
    sqrt_atoms: float
    weak_probe_ok: bool = True
    max_population_fraction: float = 0.0
    drive_plus: DriveProfile | None = None
    drive_minus: DriveProfile | None = None

    def __len__(self) -> int:
        return len(self.t)

    def amplitudes(self, i: int) -> SiteAmplitudes:
        return SiteAmplitudes(
            g=complex(self.sqrt_atoms),
            e_plus=self.e_plus[i],
            e_minus=self.e_minus[i],
            q_plus=self.q_plus[i],
            q_minus=self.q_minus[i],
            t=float(self.t[i]),
        )


def _rk4_pair(coupling, rabi, drive, n_steps, dt, t0):
    """Classical RK4 for one polarization (e, q), starting from rest."""
    e = np.zeros(n_steps + 1, dtype=complex)
    q = np.zeros(n_steps + 1, dtype=complex)
    ts = t0 + dt * np.arange(n_steps + 1)
    drive_n = drive.value(ts)
    drive_mid = drive.value(ts[:-1] + 0.5 * dt)
    rabi_c = np.conj(rabi)
    ev = 0.0 + 0.0j
    qv = 0.0 + 0.0j
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n_steps):
        d0 = drive_n[i]
        dm = drive_mid[i]
        d1 = drive_n[i + 1]
        k1e = 1j * (coupling * d0 + rabi * qv)
        k1q = 1j * rabi_c * ev
        e2 = ev + half * k1e
        q2 = qv + half * k1q
        k2e = 1j * (coupling * dm + rabi * q2)
        k2q = 1j * rabi_c * e2
        e3 = ev + half * k2e
        q3 = qv + half * k2q
        k3e = 1j * (coupling * dm + rabi * q3)
        k3q = 1j * rabi_c * e3
        e4 = ev + dt * k3e
        q4 = qv + dt * k3q
        k4e = 1j * (coupling * d1 + rabi * q4)
        k4q = 1j * rabi_c * e4
        ev = ev + sixth * (k1e + 2.0 * (k2e + k3e) + k4e)
        qv = qv + sixth * (k1q + 2.0 * (k2q + k3q) + k4q)
        e[i + 1] = ev
        q[i + 1] = qv
    return ts, e, q


def integrate_site(
    config: ExperimentConfig,
    drive: DriveProfile,
    t_span: tuple[float, float],
    dt: float,
    drive_minus: DriveProfile | None = None,
) -> SiteTrajectory:
    """Integrate the weak-probe site equations from e = q = 0.

    ``drive`` excites the (+) polarization; ``drive_minus`` optionally the
    other one (default: undriven). The step must resolve the control
    coupling: |Omega0| * dt <= 1 is enforced, and a diverged (non-finite)
    trajectory raises ``StepSizeError``.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (t1 > t0):
        raise ConfigError(f"t_span must be increasing, got {t_span!r}")
    if dt <= 0:
        raise ConfigError("dt must be > 0")
    rabi = config.control_rabi_Omega0
    if abs(rabi) * dt > 1.0:
        raise StepSizeError(
            f"dt = {dt:.3e} s does not resolve 1/|Omega0| = {1.0 / abs(rabi):.3e} s; "
            f"use dt <= {1.0 / abs(rabi):.3e}"
        )
    n_steps = int(round((t1 - t0) / dt))
    if n_steps < 1:
        raise ConfigError("t_span shorter than one step")

    sqrt_atoms = math.sqrt(config.atoms_per_site_N)
    coupling = config.dipole_mu * sqrt_atoms / HBAR
    ts, e_p, q_p = _rk4_pair(coupling, rabi, drive, n_steps, dt, t0)
    if drive_minus is None or drive_minus.is_zero:
        e_m = np.zeros_like(e_p)
        q_m = np.zeros_like(q_p)
    else:
        _, e_m, q_m = _rk4_pair(coupling, rabi, drive_minus, n_steps, dt, t0)

    if not (np.all(np.isfinite(e_p.view(float))) and np.all(np.isfinite(q_p.view(float)))
            and np.all(np.isfinite(e_m.view(float))) and np.all(np.isfinite(q_m.view(float)))):
        raise StepSizeError("site integration diverged; reduce dt")

    population = np.abs(e_p) ** 2 + np.abs(q_p) ** 2
    population_m = np.abs(e_m) ** 2 + np.abs(q_m) ** 2
    frac = float(max(population.max(), population_m.max()) / config.atoms_per_site_N)
    return SiteTrajectory(
        t=ts,
        e_plus=e_p,
        q_plus=q_p,
        e_minus=e_m,
        q_minus=q_m,
        dt=dt,
        rabi=rabi,
        coupling=coupling,
        sqrt_atoms=sqrt_atoms,
        weak_probe_ok=frac < WEAK_PROBE_FRACTION,
        max_population_fraction=frac,
        drive_plus=drive,
        drive_minus=drive_minus,
    )


def adiabatic_reference(drive: DriveProfile, config: ExperimentConfig, t):
    """Adiabatic solutions (q0, e1) for one driven polarization at times t."""
    rabi = config.control_rabi_Omega0
    coupling = config.dipole_mu * math.sqrt(config.atoms_per_site_N) / HBAR
    q0 = -coupling / rabi * drive.value(t)
    e1 = 1j * coupling / abs(rabi) ** 2 * drive.derivative(t)
    return q0, e1


@dataclass(frozen=True)
class AdiabaticResidual:
    """Window-averaged distance of a trajectory from the adiabatic manifold.

    Residuals are max-norms over Rabi-period windows after the transient
    window, normalized by the peak adiabatic amplitude. ``eta`` is the
    adiabaticity parameter 1/(|Omega0| * tau).
    """

    q_residual: float
    e_residual: float
    e_residual_zeroth: float
    eta: float
    scale: float
    n_windows: int
    window_samples: int
    window_times: np.ndarray = field(repr=False, default=None)
    q_window_residuals: np.ndarray = field(repr=False, default=None)
    e_window_residuals: np.ndarray = field(repr=False, default=None)


def adiabatic_residual(
    trajectory: SiteTrajectory,
    drive: DriveProfile,
    config: ExperimentConfig,
    transient_time: float | None = None,
) -> AdiabaticResidual:
    """Compare a trajectory with the adiabatic solutions, period-averaged.

    Both the trajectory and the reference are averaged over the same
    sample windows of one Rabi period, so the comparison is exact for
    drives the first-order solution solves exactly (zero and linear-ramp
    envelopes) and measures the true adiabatic correction otherwise.
    """
    if len(trajectory) == 0:
        raise ConfigError("empty trajectory")
    rabi = abs(trajectory.rabi)
    period = 2.0 * math.pi / rabi
    window = int(round(period / trajectory.dt))
    if window < 8:
        raise StepSizeError("fewer than 8 samples per Rabi period; reduce dt")
    if transient_time is None:
        transient_time = 10.0 / rabi

    ts = trajectory.t
    q0, e1 = adiabatic_reference(drive, config, ts)
    start = int(np.searchsorted(ts, ts[0] + transient_time))
    n_windows = (len(ts) - start) // window
    if n_windows < 1:
        raise ConfigError("trajectory too short: no full Rabi window after transients")

    def window_means(values: np.ndarray) -> np.ndarray:
        used = values[start : start + n_windows * window]
        return used.reshape(n_windows, window).mean(axis=1)

    tbar = window_means(ts)
    dq = np.abs(window_means(trajectory.q_plus) - window_means(q0))
    e_mean = window_means(trajectory.e_plus)
    de = np.abs(e_mean - window_means(e1))
    de0 = np.abs(e_mean)

    scale = float(max(np.abs(q0).max(initial=0.0), np.abs(e1).max(initial=0.0)))
    if scale == 0.0:
        # undriven: residuals are identically zero by construction
        q_res = float(dq.max())
        e_res = float(de.max())
        e_res0 = float(de0.max())
    else:
        q_res = float(dq.max() / scale)
        e_res = float(de.max() / scale)
        e_res0 = float(de0.max() / scale)

    tau = drive.timescale
    if tau is None:
        tau = float(ts[-1] - ts[0])
    eta = 1.0 / (rabi * tau)
    return AdiabaticResidual(
        q_residual=q_res,
        e_residual=e_res,
        e_residual_zeroth=e_res0,
        eta=eta,
        scale=scale,
        n_windows=int(n_windows),
        window_samples=window,
        window_times=tbar,
        q_window_residuals=dq if scale == 0.0 else dq / scale,
        e_window_residuals=de if scale == 0.0 else de / scale,
    )


def residual_scaling_exponent(
    config: ExperimentConfig,
    etas: tuple[float, ...],
    steps_per_period: int = 64,
    amplitude: complex | None = None,
) -> tuple[float, list[AdiabaticResidual]]:
    """Measure how the q-residual scales with the adiabaticity parameter.

    Runs a Gaussian drive of width 1/(|Omega0| eta) for each eta and fits
    the log-log slope of the q-residual. The weak-probe linearity makes the
    amplitude irrelevant; a default keeping populations tiny is used.
    """
    if len(etas) < 2:
        raise ConfigError("need at least two eta values")
    rabi = abs(config.control_rabi_Omega0)
    if amplitude is None:
        # peak q0 about 1e-3 sqrt(N): comfortably linear
        amplitude = 1e-3 * HBAR * rabi / config.dipole_mu
    dt = (2.0 * math.pi / rabi) / steps_per_period
    results = []
    for eta in etas:
        width = 1.0 / (rabi * eta)
        drive = DriveProfile.gaussian(amplitude=amplitude, center=6.0 * width, width=width)
        trajectory = integrate_site(config, drive, (0.0, 12.0 * width), dt)
        results.append(adiabatic_residual(trajectory, drive, config))
    x = np.log([r.eta for r in results])
    y = np.log([r.q_residual for r in results])
    slope = float(np.polyfit(x, y, 1)[0])
    return slope, results
