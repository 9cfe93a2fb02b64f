#!/usr/bin/env python3
"""Derive the two reference configurations and write them to configs/.

paper_point.json: the canonical operating point (lambda = 800 nm, beam
focused to A = lambda^2, f = 10, a_pm = 10 nm, one atom per 400 nm site).
The atomic mass is chosen so the recoil velocity is exactly 1 cm/s and the
control Rabi frequency so the group velocity is exactly 10 v_rec, which
puts the conditional phase at 1.25 rad.

pi_gate.json: identical physics with the control field turned down until
the conditional phase reaches pi.

The files are checked in; rerun this script to regenerate them.
"""

import json
import math
from pathlib import Path

from polariton_gate.constants import C_LIGHT, EPSILON_0, HBAR
from polariton_gate.params import collision_strength

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def derive(v_gr_target: float) -> dict:
    wavelength = 800e-9
    probe_omega = 2.0 * math.pi * C_LIGHT / wavelength
    wavenumber = 2.0 * math.pi / wavelength
    mass = HBAR * probe_omega / (C_LIGHT * 0.01)  # recoil velocity exactly 1 cm/s
    lattice = 400e-9
    atoms = 1
    density = atoms / lattice**3
    dipole = 2.5e-29
    rabi = dipole * math.sqrt(v_gr_target * probe_omega * density / (2.0 * C_LIGHT * HBAR * EPSILON_0))

    a_ground = 5e-9
    shift = collision_strength(a_ground, mass) * density * 10.0**3
    control_omega = 2.0 * math.pi * C_LIGHT / 820e-9
    kinetic_e = HBAR * wavenumber**2 / (2.0 * mass)
    sigma = 1e-6

    return {
        "wavelength_lambda": wavelength,
        "beam_area_A": wavelength**2,
        "lattice_constant_a": lattice,
        "confinement_f": 10.0,
        "atoms_per_site_N": atoms,
        "scattering_length_a_pm": 10e-9,
        "scattering_length_a_pp": 5e-9,
        "scattering_length_a_mm": 5e-9,
        "scattering_length_a_g": a_ground,
        "scattering_length_a_gp": a_ground,
        "scattering_length_a_gm": a_ground,
        "atom_mass_m": mass,
        "control_rabi_Omega0": rabi,
        "dipole_mu": dipole,
        "probe_omega": probe_omega,
        "control_omega_c": control_omega,
        "wavenumber_k": wavenumber,
        "wavenumber_k_c": wavenumber,  # copropagating control: no kinetic two-photon term
        "omega_e_plus": probe_omega - kinetic_e,
        "omega_e_minus": probe_omega - kinetic_e,
        "omega_q_plus": probe_omega - control_omega - shift,
        "omega_q_minus": probe_omega - control_omega - shift,
        "pulse_length_L": 10.0 * wavelength,
        "initial_condition": {
            "sigma_plus": sigma,
            "sigma_minus": sigma,
            "center_plus": -5.0 * sigma,
            "center_minus": 5.0 * sigma,
        },
        "grid": {"n_xi": 2048, "n_r": 64},
    }


def main() -> None:
    CONFIGS.mkdir(exist_ok=True)
    paper = derive(v_gr_target=0.1)
    # dphi = (a_pm lambda / A)(v_rec / v_gr) f^3 = pi  =>  v_gr = 0.125 / pi
    pi_gate = derive(v_gr_target=0.125 / math.pi)
    for name, data in (("paper_point.json", paper), ("pi_gate.json", pi_gate)):
        path = CONFIGS / name
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    print(f"paper point: Omega0 = {paper['control_rabi_Omega0']!r} rad/s")
    print(f"pi gate:     Omega0 = {pi_gate['control_rabi_Omega0']!r} rad/s")


if __name__ == "__main__":
    main()
