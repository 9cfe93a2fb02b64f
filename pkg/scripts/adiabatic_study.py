#!/usr/bin/env python3
"""Adiabaticity scan of the single-site oracle.

Drives one site with Gaussian pulses of decreasing bandwidth and prints the
window-averaged residuals against the adiabatic solutions together with the
fitted scaling exponent (the q-residual drops as the square of the
adiabaticity parameter).
"""

import argparse

from polariton_gate import load_config, residual_scaling_exponent


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default="configs/paper_point.json")
    parser.add_argument("--etas", default="1e-1,1e-2,1e-3")
    parser.add_argument("--steps-per-period", type=int, default=64)
    args = parser.parse_args()

    config = load_config(args.config).experiment
    etas = tuple(float(x) for x in args.etas.split(","))
    exponent, results = residual_scaling_exponent(
        config, etas, steps_per_period=args.steps_per_period
    )
    print(f"{'eta':>10} {'q residual':>14} {'e residual':>14} {'e vs zeroth':>14}")
    for r in results:
        print(
            f"{r.eta:>10.3e} {r.q_residual:14.6e} {r.e_residual:14.6e} "
            f"{r.e_residual_zeroth:14.6e}"
        )
    print(f"q-residual scaling exponent: {exponent:.3f}")


if __name__ == "__main__":
    main()
