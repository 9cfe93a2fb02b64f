import json
import math
from pathlib import Path

import numpy as np
import pytest

from polariton_gate.cli import main
from tests.conftest import write_config


def small_run_config(base: dict, n_xi=513, n_r=8, sigma=1e-6) -> dict:
    data = dict(base)
    data["initial_condition"] = {
        "sigma_plus": sigma,
        "sigma_minus": sigma,
        "center_plus": -5 * sigma,
        "center_minus": 5 * sigma,
    }
    data["grid"] = {"n_xi": n_xi, "n_r": n_r}
    return data


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPhaseCommand:
    def test_paper_point_report(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        code, out, _ = run_cli(
            capsys, "phase", "--config", str(config), "--out", str(tmp_path / "run")
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["delta_phi"] == pytest.approx(1.25, rel=1e-9)
        assert payload["interaction_time_T"] == pytest.approx(4e-5, rel=1e-9)
        report_file = tmp_path / "run" / "gate_report.json"
        assert json.loads(report_file.read_text()) == payload
        manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
        assert [a["path"] for a in manifest["artifacts"]] == ["gate_report.json"]

    def test_zero_scattering_length_zero_phase(self, tmp_path, capsys, paper_config_dict):
        data = dict(paper_config_dict)
        data["scattering_length_a_pm"] = 0.0
        config = write_config(tmp_path, data)
        code, out, _ = run_cli(
            capsys, "phase", "--config", str(config), "--out", str(tmp_path / "run")
        )
        assert code == 0
        assert json.loads(out)["delta_phi"] == 0.0

    def test_malformed_config_exits_2(self, tmp_path, capsys, paper_config_dict):
        data = dict(paper_config_dict)
        data["unexpected_knob"] = 1.0
        config = write_config(tmp_path, data)
        code, _, err = run_cli(
            capsys, "phase", "--config", str(config), "--out", str(tmp_path / "run")
        )
        assert code == 2
        assert "error" in json.loads(err)

    def test_missing_file_exits_4(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "phase", "--config", str(tmp_path / "nope.json"),
            "--out", str(tmp_path / "run"),
        )
        assert code == 4
        assert json.loads(err)["error"]

    def test_dephasing_flag(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        code, out, _ = run_cli(
            capsys, "phase", "--config", str(config), "--gamma-q", "1000.0",
            "--out", str(tmp_path / "run"),
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["dephasing_amplitude_factor"] == pytest.approx(
            math.exp(-0.08), rel=1e-9
        )


def read_snapshot(path: Path):
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    return rows


class TestEvolveCommand:
    def test_characteristics_pi_run(self, tmp_path, capsys, pi_config_dict):
        config = write_config(tmp_path, small_run_config(pi_config_dict))
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(out_dir),
            "--solver", "characteristics",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["delta_phi_measured"] == pytest.approx(math.pi, abs=1e-9)
        assert payload["homogeneity"] <= 1e-7
        files = sorted(p.name for p in out_dir.glob("snapshot_*.csv"))
        assert files == [f"snapshot_{i:03d}.csv" for i in range(5)]
        header = (out_dir / files[0]).read_text().splitlines()[0]
        assert header == "t,R,xi,re_w,im_w,abs_w,phase_w"

    def test_snapshot_zero_serializes_initial_condition(
        self, tmp_path, capsys, pi_config_dict
    ):
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=257, n_r=4))
        out_dir = tmp_path / "run"
        code, _, _ = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(out_dir),
            "--snapshots", "0",
        )
        assert code == 0
        rows = read_snapshot(out_dir / "snapshot_000.csv")
        from polariton_gate import (
            GaussianEnvelope, InitialCondition, build_initial_wave,
        )
        from polariton_gate.params import GridSpec

        sigma = 1e-6
        ic = InitialCondition(
            GaussianEnvelope(-5 * sigma, sigma), GaussianEnvelope(5 * sigma, sigma)
        )
        wave = build_initial_wave(ic, grid=GridSpec(n_xi=257, n_r=4))
        flat = wave.amplitude.reshape(-1)
        # CSV carries 12 significant digits, so compare at that precision
        assert np.allclose(rows[:, 3], flat.real, rtol=1e-10, atol=1e-11 * np.abs(flat).max())
        assert np.all(rows[:, 0] == 0.0)

    def test_fd_matches_configured_phase(self, tmp_path, capsys, pi_config_dict):
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=512, n_r=4))
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(out_dir),
            "--solver", "fd",
        )
        assert code == 0
        payload = json.loads(out)
        from polariton_gate import wrap_angle

        # circular distance: at dphi = pi the measurement sits on the branch cut
        gap = wrap_angle(payload["delta_phi_measured"] - payload["delta_phi"])
        assert abs(gap) <= 1e-2

    def test_determinism_byte_identical(self, tmp_path, capsys, pi_config_dict):
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=257, n_r=4))
        outputs = []
        for name in ("a", "b"):
            out_dir = tmp_path / name
            code, _, _ = run_cli(
                capsys, "evolve", "--config", str(config), "--out", str(out_dir),
                "--snapshots", "0,1e-4",
            )
            assert code == 0
            outputs.append(out_dir)
        for artifact in ("snapshot_000.csv", "snapshot_001.csv", "gate_report.json"):
            a = (outputs[0] / artifact).read_bytes()
            b = (outputs[1] / artifact).read_bytes()
            assert a == b, artifact

    def test_cfl_violation_exits_3_with_hint(self, tmp_path, capsys, pi_config_dict):
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=257, n_r=4))
        code, _, err = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(tmp_path / "run"),
            "--solver", "fd", "--dt", "1.0",
        )
        assert code == 3
        payload = json.loads(err)
        assert payload["error"] == "CflError"
        assert "dt <=" in payload["message"]

    def test_missing_initial_condition_exits_2(self, tmp_path, capsys, pi_config_dict):
        data = dict(pi_config_dict)
        data.pop("initial_condition")
        config = write_config(tmp_path, data)
        code, _, err = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(tmp_path / "run")
        )
        assert code == 2
        assert "initial_condition" in json.loads(err)["message"]

    def test_dephasing_damps_snapshots(self, tmp_path, capsys, pi_config_dict):
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=257, n_r=4))
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(out_dir),
            "--snapshots", "0,1e-4", "--gamma-q", "2000.0",
        )
        assert code == 0
        rows = read_snapshot(out_dir / "snapshot_001.csv")
        from polariton_gate import build_medium, load_config

        medium = build_medium(load_config(config).experiment)
        factor = math.exp(-2.0 * 2000.0 * math.sin(medium.theta) ** 2 * 1e-4)
        # compare against the undamped run
        base_dir = tmp_path / "base"
        run_cli(
            capsys, "evolve", "--config", str(config), "--out", str(base_dir),
            "--snapshots", "0,1e-4",
        )
        base_rows = read_snapshot(base_dir / "snapshot_001.csv")
        ratio = np.abs(rows[:, 5]).max() / np.abs(base_rows[:, 5]).max()
        assert ratio == pytest.approx(factor, rel=1e-9)

    def test_overlap_only_dephasing_damps_less(self, tmp_path, capsys, pi_config_dict):
        # overlap mode charges decay only while the envelopes overlap:
        # the window |xi_c| <= 5 xi_sigma crossed at 2 v_gr
        config = write_config(tmp_path, small_run_config(pi_config_dict, n_xi=257, n_r=4))
        from polariton_gate import build_medium, load_config

        medium = build_medium(load_config(config).experiment)
        sigma = 1e-6
        t_final = 10 * sigma / medium.v_gr
        dirs = {}
        for mode in ("always", "overlap"):
            out_dir = tmp_path / mode
            code, _, _ = run_cli(
                capsys, "evolve", "--config", str(config), "--out", str(out_dir),
                "--snapshots", f"0,{t_final!r}", "--gamma-q", "1000.0",
                "--dephasing-mode", mode,
            )
            assert code == 0
            dirs[mode] = read_snapshot(out_dir / "snapshot_001.csv")
        xi_sigma = math.sqrt(2.0) * sigma
        speed = 2.0 * medium.v_gr
        t_in = (-5.0 * xi_sigma + 10 * sigma) / speed
        t_out = (5.0 * xi_sigma + 10 * sigma) / speed
        expected = math.exp(
            2.0 * 1000.0 * math.sin(medium.theta) ** 2
            * (t_final - (min(t_final, t_out) - t_in))
        )
        ratio = np.abs(dirs["overlap"][:, 5]).max() / np.abs(dirs["always"][:, 5]).max()
        assert ratio == pytest.approx(expected, rel=1e-9)


class TestSweepCommand:
    def test_v_gr_crossing(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "sweep", "--config", str(config), "--out", str(out_dir),
            "--axis", "v_gr", "--range", "0.01:0.1", "--samples", "10",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["crossing"] == pytest.approx(0.125 / math.pi, rel=1e-9)
        table = np.loadtxt(out_dir / "sweep_v_gr.csv", delimiter=",", skiprows=1)
        assert table.shape[0] == 11  # 10 samples + crossing row
        crossing_rows = table[table[:, -1] == 1.0]
        assert len(crossing_rows) == 1
        assert crossing_rows[0, 0] == pytest.approx(0.125 / math.pi, rel=1e-9)

    def test_no_crossing_no_extra_row(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "sweep", "--config", str(config), "--out", str(out_dir),
            "--axis", "v_gr", "--range", "0.05:0.1", "--samples", "6",
        )
        assert code == 0
        assert json.loads(out)["crossing"] is None
        table = np.loadtxt(out_dir / "sweep_v_gr.csv", delimiter=",", skiprows=1)
        assert table.shape[0] == 6
        assert np.all(table[:, -1] == 0.0)

    def test_confinement_axis_crossing(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        code, out, _ = run_cli(
            capsys, "sweep", "--config", str(config), "--out", str(tmp_path / "run"),
            "--axis", "f", "--range", "10:16", "--samples", "7",
        )
        assert code == 0
        expected = 10.0 * (math.pi / 1.25) ** (1.0 / 3.0)
        assert json.loads(out)["crossing"] == pytest.approx(expected, rel=1e-9)

    def test_bad_range_exits_2(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        code, _, err = run_cli(
            capsys, "sweep", "--config", str(config), "--out", str(tmp_path / "r"),
            "--axis", "v_gr", "--range", "0.1:0.1", "--samples", "5",
        )
        assert code == 2
        assert json.loads(err)["error"]


class TestVerifyAdiabaticCommand:
    def test_ramp_residuals(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        code, out, _ = run_cli(
            capsys, "verify-adiabatic", "--config", str(config), "--out", str(out_dir),
            "--drive", "ramp", "--steps-per-period", "128",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["q_residual"] <= 1e-8
        assert summary["e_residual"] <= 1e-8
        header = (out_dir / "site_trajectory.csv").read_text().splitlines()[0]
        assert header == (
            "t,e_plus_re,e_plus_im,e_minus_re,e_minus_im,"
            "q_plus_re,q_plus_im,q_minus_re,q_minus_im,residual_q,residual_e"
        )

    def test_zero_drive_all_zero_columns(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        code, _, _ = run_cli(
            capsys, "verify-adiabatic", "--config", str(config), "--out", str(out_dir),
            "--drive", "constant", "--amplitude", "0", "--t-final", "1e-4",
        )
        assert code == 0
        rows = np.loadtxt(out_dir / "site_trajectory.csv", delimiter=",", skiprows=1)
        assert np.all(rows[:, 9:] == 0.0)

    def test_eta_scan_reports_exponent(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        code, out, _ = run_cli(
            capsys, "verify-adiabatic", "--config", str(config),
            "--out", str(tmp_path / "run"), "--eta-scan", "1e-1,1e-2",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["scaling_exponent"] >= 1.0
        assert len(summary["eta_scan"]) == 2


class TestCheckCommand:
    def test_clean_run_verifies(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        run_cli(capsys, "phase", "--config", str(config), "--out", str(out_dir))
        code, out, _ = run_cli(capsys, "check", "--out", str(out_dir))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_corrupted_artifact_fails(self, tmp_path, capsys, paper_config_dict):
        config = write_config(tmp_path, paper_config_dict)
        out_dir = tmp_path / "run"
        run_cli(capsys, "phase", "--config", str(config), "--out", str(out_dir))
        report = out_dir / "gate_report.json"
        report.write_text(report.read_text() + " ")
        code, _, err = run_cli(capsys, "check", "--out", str(out_dir))
        assert code == 4
        assert "gate_report.json" in json.loads(err)["problems"][0]

    def test_missing_manifest_fails(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "check", "--out", str(tmp_path / "empty"))
        assert code == 4
