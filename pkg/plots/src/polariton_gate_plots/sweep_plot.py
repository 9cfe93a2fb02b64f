"""Sweep curves with the pi crossing marked.

Sweep CSVs carry one row per sample plus an optional crossing row flagged
by is_crossing = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import MalformedCsvError

REQUIRED_COLUMNS = ("axis_value", "delta_phi", "is_crossing")


@dataclass(frozen=True)
class SweepPlotResult:
    axis_values: np.ndarray
    delta_phi: np.ndarray
    crossing: float | None
    png_path: Path
    svg_path: Path


def plot_sweep(sweep_csv: Path, out_image_path: Path) -> SweepPlotResult:
    sweep_csv = Path(sweep_csv)
    with open(sweep_csv, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise MalformedCsvError(f"{sweep_csv} lacks columns {missing}")
    data = np.loadtxt(sweep_csv, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(header):
        raise MalformedCsvError(f"{sweep_csv} row width does not match its header")
    axis_col = header.index("axis_value")
    phi_col = header.index("delta_phi")
    cross_col = header.index("is_crossing")

    is_crossing = data[:, cross_col] == 1.0
    samples = data[~is_crossing]
    crossing_rows = data[is_crossing]
    crossing = float(crossing_rows[0, axis_col]) if len(crossing_rows) else None

    # the axis name is taken from the file name sweep_<axis>.csv when present
    stem = sweep_csv.stem
    axis_name = stem[len("sweep_"):] if stem.startswith("sweep_") else "axis value"

    fig, ax = plt.subplots(figsize=(4.8, 3.4), dpi=100)
    ax.plot(samples[:, axis_col], samples[:, phi_col], "o-", label=r"$\Delta\varphi$")
    ax.axhline(np.pi, color="gray", linestyle="--", linewidth=1, label=r"$\pi$")
    if crossing is not None:
        ax.plot(
            [crossing], [crossing_rows[0, phi_col]], "r*", markersize=12,
            label=f"crossing at {crossing:.4e}",
        )
    else:
        ax.plot([], [], " ", label="no crossing in range")
    ax.set_xlabel(axis_name)
    ax.set_ylabel("conditional phase (rad)")
    ax.legend(fontsize=8)
    fig.tight_layout()

    out_image_path = Path(out_image_path)
    png_path = out_image_path.with_suffix(".png")
    svg_path = out_image_path.with_suffix(".svg")
    fig.savefig(png_path, dpi=fig.dpi)
    fig.savefig(svg_path, metadata={"Date": None})
    plt.close(fig)
    return SweepPlotResult(
        axis_values=samples[:, axis_col],
        delta_phi=samples[:, phi_col],
        crossing=crossing,
        png_path=png_path,
        svg_path=svg_path,
    )
