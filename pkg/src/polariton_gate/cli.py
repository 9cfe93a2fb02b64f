"""Command-line front end.

Subcommands: phase, evolve, sweep, verify-adiabatic, check. Every run
writes its artifacts plus a manifest (checksums, resolved configuration,
wall-clock duration) into --out; `check` re-verifies a directory against
its manifest. Exit codes: 0 success, 2 configuration error, 3 numerical
constraint violated, 4 I/O or verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, gate, scattering, site_dynamics
from .dispersion import build_medium
from .errors import (
    CflError,
    ConfigError,
    NumericsError,
    RegularizationError,
)
from .output import RunWriter, dump_json, verify_manifest
from .params import ExperimentConfig, LoadedConfig, detunings, load_config
from .scattering import (
    InitialCondition,
    TwoParticleWave,
    build_initial_wave,
    dephasing_factor,
    extract_phase,
    wrap_angle,
)


def _resolved_config(loaded: LoadedConfig) -> dict:
    config = loaded.experiment
    medium = build_medium(config)
    resolved = {
        "experiment": config.to_dict(),
        "derived": {
            "density_n": config.density_n,
            "v_gr": medium.v_gr,
            "v_rec": medium.v_rec,
            "theta": medium.theta,
            "compression_ratio": medium.compression_ratio,
            "kappa_self_plus": medium.kappa_self_plus,
            "kappa_self_minus": medium.kappa_self_minus,
            "kappa_cross": medium.kappa_cross,
            "delta_phi": gate.delta_phi(config, medium.v_gr),
        },
    }
    if loaded.initial_condition is not None:
        resolved["initial_condition"] = dataclasses.asdict(loaded.initial_condition)
    resolved["grid"] = dataclasses.asdict(loaded.grid)
    return resolved


def _warn_off_resonance(config: ExperimentConfig) -> None:
    try:
        report = detunings(config)
    except ConfigError:
        return  # level data not supplied; nothing to check
    if not report.resonant:
        print(
            "warning: resonance conditions not met "
            f"(max one-photon detuning {max(abs(report.delta_e_plus), abs(report.delta_e_minus)):.3e} rad/s, "
            f"max shifted two-photon detuning {max(abs(report.shifted_q_plus), abs(report.shifted_q_minus)):.3e} rad/s); "
            "the solvers assume resonance",
            file=sys.stderr,
        )


def _gate_report_payload(report: gate.GateReport) -> dict:
    return report.to_dict()


def cmd_phase(args) -> int:
    started = time.monotonic()
    loaded = load_config(args.config)
    config = loaded.experiment
    _warn_off_resonance(config)
    report = gate.build_report(config, gamma_q=args.gamma_q)
    payload = _gate_report_payload(report)
    writer = RunWriter(
        out_dir=args.out,
        command="phase",
        tool_version=__version__,
        resolved_config=_resolved_config(loaded),
        flags={"config": str(args.config), "gamma_q": args.gamma_q},
    )
    writer.write_json("gate_report.json", payload)
    sys.stdout.write(dump_json(payload))
    writer.finish(time.monotonic() - started)
    return 0


def _overlap_time(ic: InitialCondition, v_gr: float, t: float) -> float:
    """Time spent with the envelopes overlapping, out of [0, t].

    Overlap window: |xi_center(t')| <= 5 * xi_sigma, traversed at 2 v_gr.
    """
    speed = 2.0 * v_gr
    half = 5.0 * ic.xi_sigma
    t_in = max(0.0, (-half - ic.xi_center) / speed)
    t_out = max(0.0, (half - ic.xi_center) / speed)
    return max(0.0, min(t, t_out) - t_in)


def _snapshot_columns(wave: TwoParticleWave) -> tuple[list[str], list[np.ndarray]]:
    n_r, n_xi = wave.amplitude.shape
    t_col = np.full(n_r * n_xi, wave.t)
    r_col = np.repeat(wave.grid_R, n_xi)
    xi_col = np.tile(wave.grid_xi, n_r)
    flat = wave.amplitude.reshape(-1)
    header = ["t", "R", "xi", "re_w", "im_w", "abs_w", "phase_w"]
    columns = [t_col, r_col, xi_col, flat.real, flat.imag, np.abs(flat), wrap_angle(np.angle(flat))]
    return header, columns


def _parse_snapshots(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        times = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad --snapshots value: {exc}") from exc
    if not times:
        raise ConfigError("--snapshots is empty")
    if any(t < 0 for t in times):
        raise ConfigError("snapshot times must be >= 0")
    ordered = sorted(times)
    if len(set(ordered)) != len(ordered):
        raise ConfigError("snapshot times must be distinct")
    return ordered


def cmd_evolve(args) -> int:
    started = time.monotonic()
    loaded = load_config(args.config)
    config = loaded.experiment
    if loaded.initial_condition is None:
        raise ConfigError("evolve needs an 'initial_condition' section in the config")
    _warn_off_resonance(config)
    medium = build_medium(config)
    ic = InitialCondition.from_spec(loaded.initial_condition)
    w0 = build_initial_wave(ic, grid=loaded.grid)

    crossing_time = -ic.xi_center / medium.v_gr
    times = _parse_snapshots(args.snapshots)
    if times is None:
        times = list(np.linspace(0.0, crossing_time, 5))

    writer = RunWriter(
        out_dir=args.out,
        command="evolve",
        tool_version=__version__,
        resolved_config=_resolved_config(loaded),
        flags={
            "config": str(args.config),
            "solver": args.solver,
            "snapshots": times,
            "dt": args.dt,
            "epsilon": args.epsilon,
            "gamma_q": args.gamma_q,
            "dephasing_mode": args.dephasing_mode,
        },
    )

    snapshots: list[TwoParticleWave] = []
    if args.solver == "characteristics":
        for t_snap in times:
            snapshots.append(scattering.evolve_characteristics(w0, medium, t_snap))
    else:
        d_xi = w0.d_xi
        dt = args.dt if args.dt is not None else d_xi / (2.0 * medium.v_gr)
        current = w0
        steps_done = 0
        for t_snap in times:
            # snap to whole steps and march only the missing segment
            target_steps = int(round(t_snap / dt))
            segment = (target_steps - steps_done) * dt
            current = scattering.evolve_fd(
                dataclasses.replace(current, t=0.0),
                medium,
                segment,
                dt=dt,
                epsilon=args.epsilon,
            )
            current.t = target_steps * dt
            steps_done = target_steps
            snapshots.append(current.copy())

    for index, wave in enumerate(snapshots):
        out_wave = wave
        if args.gamma_q is not None:
            t_eff = (
                _overlap_time(ic, medium.v_gr, wave.t)
                if args.dephasing_mode == "overlap"
                else wave.t
            )
            out_wave = scattering.apply_dephasing(wave, medium, args.gamma_q, t_eff)
            snapshots[index] = out_wave
        header, columns = _snapshot_columns(out_wave)
        writer.write_csv(f"snapshot_{index:03d}.csv", header, columns)

    measured = None
    homogeneity = None
    final = snapshots[-1]
    if final.t > 0:
        try:
            measurement = extract_phase(w0, final, medium.v_gr, final.t)
            measured = measurement.delta_phi
            homogeneity = measurement.homogeneity
        except NumericsError:
            pass  # run stopped before full transmission; report stays closed-form
    gamma_factor = None
    report = gate.build_report(
        config,
        v_gr=medium.v_gr,
        gamma_q=args.gamma_q if config.pulse_length_L is not None else None,
        delta_phi_measured=measured,
        homogeneity=homogeneity,
    )
    if args.gamma_q is not None and report.dephasing_amplitude_factor is None:
        gamma_factor = dephasing_factor(medium, args.gamma_q, final.t)
        report = dataclasses.replace(report, dephasing_amplitude_factor=gamma_factor)
    payload = _gate_report_payload(report)
    writer.write_json("gate_report.json", payload)
    sys.stdout.write(dump_json(payload))
    writer.finish(time.monotonic() - started)
    return 0


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError("--range must look like LO:HI")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad --range value: {exc}") from exc
    return lo, hi


def cmd_sweep(args) -> int:
    started = time.monotonic()
    loaded = load_config(args.config)
    config = loaded.experiment
    lo, hi = _parse_range(args.range)
    result = gate.sweep(config, args.axis, lo, hi, args.samples)

    writer = RunWriter(
        out_dir=args.out,
        command="sweep",
        tool_version=__version__,
        resolved_config=_resolved_config(loaded),
        flags={
            "config": str(args.config),
            "axis": args.axis,
            "range": [lo, hi],
            "samples": args.samples,
        },
    )
    rows = list(result.samples)
    crossing_report = result.crossing_report(config)
    header = [
        "axis_value",
        "delta_phi",
        "interaction_time_T",
        "v_gr",
        "v_rec",
        "theta",
        "compression_ratio",
        "phase_error",
        "is_crossing",
    ]

    def row_of(value: float, report: gate.GateReport, is_crossing: float):
        t_i = report.interaction_time_T
        return [
            value,
            report.delta_phi,
            math.nan if t_i is None else t_i,
            report.v_gr,
            report.v_rec,
            report.theta,
            report.compression_ratio,
            report.phase_error,
            is_crossing,
        ]

    table = [row_of(s.axis_value, s.report, 0.0) for s in rows]
    if crossing_report is not None:
        table.append(row_of(result.crossing, crossing_report, 1.0))
    columns = [np.array([row[i] for row in table]) for i in range(len(header))]
    writer.write_csv(f"sweep_{args.axis}.csv", header, columns)

    summary = {
        "axis": result.axis,
        "samples": args.samples,
        "range": [lo, hi],
        "crossing": result.crossing,
    }
    sys.stdout.write(dump_json(summary))
    writer.finish(time.monotonic() - started)
    return 0


def _build_drive(args, config: ExperimentConfig) -> site_dynamics.DriveProfile:
    from .constants import HBAR

    rabi = abs(config.control_rabi_Omega0)
    amplitude = args.amplitude
    if amplitude is None:
        amplitude = 1e-3 * HBAR * rabi / config.dipole_mu
    if args.drive == "constant":
        return site_dynamics.DriveProfile.constant(amplitude)
    if args.drive == "ramp":
        slope = args.slope
        if slope is None:
            t_final = args.t_final if args.t_final is not None else 50.0 * 2.0 * math.pi / rabi
            slope = amplitude / t_final
        return site_dynamics.DriveProfile.ramp(slope)
    width = args.width if args.width is not None else 100.0 / rabi
    center = args.center if args.center is not None else 6.0 * width
    return site_dynamics.DriveProfile.gaussian(amplitude, center, width)


def cmd_verify_adiabatic(args) -> int:
    started = time.monotonic()
    loaded = load_config(args.config)
    config = loaded.experiment
    _warn_off_resonance(config)
    rabi = abs(config.control_rabi_Omega0)
    period = 2.0 * math.pi / rabi
    drive = _build_drive(args, config)
    if args.t_final is not None:
        t_final = args.t_final
    elif drive.kind == "gaussian":
        t_final = drive.center + 6.0 * drive.width
    else:
        t_final = 50.0 * period
    dt = period / args.steps_per_period

    trajectory = site_dynamics.integrate_site(config, drive, (0.0, t_final), dt)
    residual = site_dynamics.adiabatic_residual(trajectory, drive, config)

    q0, e1 = site_dynamics.adiabatic_reference(drive, config, trajectory.t)
    writer = RunWriter(
        out_dir=args.out,
        command="verify-adiabatic",
        tool_version=__version__,
        resolved_config=_resolved_config(loaded),
        flags={
            "config": str(args.config),
            "drive": args.drive,
            "amplitude": args.amplitude,
            "slope": args.slope,
            "center": args.center,
            "width": args.width,
            "t_final": t_final,
            "steps_per_period": args.steps_per_period,
            "eta_scan": args.eta_scan,
        },
    )
    header = [
        "t",
        "e_plus_re",
        "e_plus_im",
        "e_minus_re",
        "e_minus_im",
        "q_plus_re",
        "q_plus_im",
        "q_minus_re",
        "q_minus_im",
        "residual_q",
        "residual_e",
    ]
    columns = [
        trajectory.t,
        trajectory.e_plus.real,
        trajectory.e_plus.imag,
        trajectory.e_minus.real,
        trajectory.e_minus.imag,
        trajectory.q_plus.real,
        trajectory.q_plus.imag,
        trajectory.q_minus.real,
        trajectory.q_minus.imag,
        np.abs(trajectory.q_plus - q0),
        np.abs(trajectory.e_plus - e1),
    ]
    writer.write_csv("site_trajectory.csv", header, columns)

    summary = {
        "drive": args.drive,
        "eta": residual.eta,
        "q_residual": residual.q_residual,
        "e_residual": residual.e_residual,
        "e_residual_zeroth": residual.e_residual_zeroth,
        "scale": residual.scale,
        "n_windows": residual.n_windows,
        "weak_probe_ok": trajectory.weak_probe_ok,
        "max_population_fraction": trajectory.max_population_fraction,
    }
    if args.eta_scan is not None:
        etas = tuple(float(x) for x in args.eta_scan.split(","))
        exponent, scan = site_dynamics.residual_scaling_exponent(
            config, etas, steps_per_period=min(args.steps_per_period, 64)
        )
        summary["eta_scan"] = [
            {"eta": r.eta, "q_residual": r.q_residual, "e_residual": r.e_residual}
            for r in scan
        ]
        summary["scaling_exponent"] = exponent
    writer.write_json("adiabatic_summary.json", summary)
    sys.stdout.write(dump_json(summary))
    writer.finish(time.monotonic() - started)
    return 0


def cmd_check(args) -> int:
    problems = verify_manifest(Path(args.out))
    if problems:
        sys.stderr.write(
            json.dumps({"error": "VerificationError", "problems": problems}) + "\n"
        )
        return 4
    manifest = json.loads((Path(args.out) / "manifest.json").read_text(encoding="utf-8"))
    sys.stdout.write(
        dump_json({"ok": True, "artifacts": len(manifest.get("artifacts", []))})
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polariton-gate",
        description=(
            "Desk-scale simulator of two counter-propagating dark-state "
            "polaritons in a lattice EIT medium and the resulting conditional "
            "phase gate."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, config: bool = True) -> None:
        if config:
            p.add_argument("--config", required=True, help="path to the JSON config")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument(
            "--seed", type=int, default=None,
            help="reserved; all computations are deterministic",
        )

    p_phase = sub.add_parser("phase", help="closed-form gate report")
    common(p_phase)
    p_phase.add_argument("--gamma-q", type=float, default=None, dest="gamma_q",
                         help="ground-state coherence decay rate (1/s)")
    p_phase.set_defaults(func=cmd_phase)

    p_evolve = sub.add_parser("evolve", help="evolve the two-particle wave function")
    common(p_evolve)
    p_evolve.add_argument("--solver", choices=("characteristics", "fd"),
                          default="characteristics")
    p_evolve.add_argument("--snapshots", default=None,
                          help="comma-separated times in seconds (default: 5 over one crossing)")
    p_evolve.add_argument("--dt", type=float, default=None,
                          help="FD time step (default: unit Courant number)")
    p_evolve.add_argument("--epsilon", type=float, default=None,
                          help="delta regularization width in meters")
    p_evolve.add_argument("--gamma-q", type=float, default=None, dest="gamma_q")
    p_evolve.add_argument("--dephasing-mode", choices=("always", "overlap"),
                          default="always", dest="dephasing_mode")
    p_evolve.set_defaults(func=cmd_evolve)

    p_sweep = sub.add_parser("sweep", help="scan one axis for the pi crossing")
    common(p_sweep)
    p_sweep.add_argument("--axis", required=True, choices=gate.SWEEP_AXES)
    p_sweep.add_argument("--range", required=True, help="LO:HI in SI units")
    p_sweep.add_argument("--samples", required=True, type=int)
    p_sweep.set_defaults(func=cmd_sweep)

    p_ver = sub.add_parser("verify-adiabatic", help="site-ODE adiabatic oracle")
    common(p_ver)
    p_ver.add_argument("--drive", choices=site_dynamics.DRIVE_KINDS, default="gaussian")
    p_ver.add_argument("--amplitude", type=float, default=None)
    p_ver.add_argument("--slope", type=float, default=None)
    p_ver.add_argument("--center", type=float, default=None)
    p_ver.add_argument("--width", type=float, default=None)
    p_ver.add_argument("--t-final", type=float, default=None, dest="t_final")
    p_ver.add_argument("--steps-per-period", type=int, default=128,
                       dest="steps_per_period")
    p_ver.add_argument("--eta-scan", default=None, dest="eta_scan",
                       help="comma-separated adiabaticity parameters to scan")
    p_ver.set_defaults(func=cmd_verify_adiabatic)

    p_check = sub.add_parser("check", help="verify a run directory against its manifest")
    common(p_check, config=False)
    p_check.set_defaults(func=cmd_check)
    return parser


def _emit_error(kind: str, message: str, hint: str | None = None) -> None:
    payload = {"error": kind, "message": message}
    if hint:
        payload["hint"] = hint
    sys.stderr.write(json.dumps(payload) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2
    except (CflError, RegularizationError) as exc:
        _emit_error(type(exc).__name__, str(exc),
                    hint="rerun with the suggested flag value")
        return 3
    except NumericsError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 3
    except OSError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 4


if __name__ == "__main__":
    sys.exit(main())
