"""Multi-panel snapshot figures of the two-particle wave function.

A snapshot CSV has the columns t,R,xi,re_w,im_w,abs_w,phase_w with rows in
R-major order. Panels share one fixed color scale per figure: amplitude
mode normalizes to the global maximum across panels so that the
translation invariance of |w| is visible; phase mode is pinned to
(-pi, pi] on a cyclic colormap.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyDirectoryError, GridMismatchError, MalformedCsvError

SNAPSHOT_COLUMNS = ("t", "R", "xi", "re_w", "im_w", "abs_w", "phase_w")
PHASE_CMAP = "twilight"
ABS_CMAP = "viridis"
MODES = ("abs", "phase")


@dataclass(frozen=True)
class Snapshot:
    t: float
    grid_R: np.ndarray
    grid_xi: np.ndarray
    abs_w: np.ndarray
    phase_w: np.ndarray
    re_w: np.ndarray
    im_w: np.ndarray


@dataclass(frozen=True)
class SnapshotSet:
    """Time-ordered snapshots on one shared grid."""

    snapshots: list[Snapshot]

    def __post_init__(self) -> None:
        if not self.snapshots:
            raise EmptyDirectoryError("snapshot set is empty")
        first = self.snapshots[0]
        for snap in self.snapshots[1:]:
            if not (
                np.array_equal(first.grid_R, snap.grid_R)
                and np.array_equal(first.grid_xi, snap.grid_xi)
            ):
                raise GridMismatchError("snapshots sample different (R, xi) grids")
        times = [s.t for s in self.snapshots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise MalformedCsvError(f"snapshot times not strictly increasing: {times}")

    @property
    def times(self) -> list[float]:
        return [s.t for s in self.snapshots]

    @property
    def grid_R(self) -> np.ndarray:
        return self.snapshots[0].grid_R

    @property
    def grid_xi(self) -> np.ndarray:
        return self.snapshots[0].grid_xi


def parse_snapshot_csv(path: Path) -> Snapshot:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
    if tuple(header.split(",")) != SNAPSHOT_COLUMNS:
        raise MalformedCsvError(
            f"{path} header {header!r} does not match {','.join(SNAPSHOT_COLUMNS)}"
        )
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(SNAPSHOT_COLUMNS):
        raise MalformedCsvError(f"{path} has {data.shape[1]} columns")
    t_col = data[:, 0]
    if t_col.size == 0 or not np.all(t_col == t_col[0]):
        raise MalformedCsvError(f"{path} mixes several snapshot times in one file")
    grid_xi = np.unique(data[:, 2])
    grid_r = np.unique(data[:, 1])
    n_r, n_xi = len(grid_r), len(grid_xi)
    if n_r * n_xi != data.shape[0]:
        raise MalformedCsvError(f"{path} rows do not form a complete (R, xi) product")
    # rows are R-major: xi cycles fastest
    if not np.array_equal(data[:n_xi, 2], grid_xi):
        raise MalformedCsvError(f"{path} rows are not in R-major order")

    def grid(column: int) -> np.ndarray:
        return data[:, column].reshape(n_r, n_xi)

    return Snapshot(
        t=float(t_col[0]),
        grid_R=grid_r,
        grid_xi=grid_xi,
        abs_w=grid(5),
        phase_w=grid(6),
        re_w=grid(3),
        im_w=grid(4),
    )


def load_snapshot_dir(snapshot_dir: Path) -> SnapshotSet:
    snapshot_dir = Path(snapshot_dir)
    files = sorted(snapshot_dir.glob("*.csv"))
    if not files:
        raise EmptyDirectoryError(f"no CSV files in {snapshot_dir}")
    return SnapshotSet(snapshots=[parse_snapshot_csv(f) for f in files])


@dataclass(frozen=True)
class PanelData:
    """What one panel shows, plus where its axes landed in image pixels."""

    t: float
    matrix: np.ndarray
    extent: tuple[float, float, float, float]  # xi_min, xi_max, R_min, R_max
    pixel_box: tuple[float, float, float, float]  # x0, y0, x1, y1, origin bottom-left

    def data_to_pixel(self, xi: float, big_r: float, image_height: int) -> tuple[int, int]:
        """Image (row, col) of a data point, for pixel-content checks."""
        xi0, xi1, r0, r1 = self.extent
        x0, y0, x1, y1 = self.pixel_box
        px = x0 + (xi - xi0) / (xi1 - xi0) * (x1 - x0)
        py = y0 + (big_r - r0) / (r1 - r0) * (y1 - y0)
        return int(round(image_height - 1 - py)), int(round(px))


@dataclass(frozen=True)
class FigureResult:
    mode: str
    panels: list[PanelData]
    vmin: float
    vmax: float
    cmap: str
    png_path: Path
    svg_path: Path
    image_height: int
    image_width: int


def plot_snapshots(
    snapshot_dir: Path, out_image_path: Path, mode: str = "abs"
) -> FigureResult:
    """Render one panel per snapshot; write PNG and SVG.

    Returns the panel matrices and their pixel boxes so tests can assert on
    figure content without eyeballing.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    snapshot_set = load_snapshot_dir(snapshot_dir)
    snapshots = snapshot_set.snapshots
    n = len(snapshots)

    if mode == "abs":
        matrices = [s.abs_w for s in snapshots]
        vmin, vmax = 0.0, max(float(m.max()) for m in matrices)
        cmap = ABS_CMAP
        label = "|w|"
    else:
        matrices = [s.phase_w for s in snapshots]
        vmin, vmax = -np.pi, np.pi
        cmap = PHASE_CMAP
        label = "arg w"

    xi = snapshot_set.grid_xi
    big_r = snapshot_set.grid_R
    extent = (float(xi[0]), float(xi[-1]), float(big_r[0]), float(big_r[-1]))

    fig, axes = plt.subplots(
        1, n, figsize=(3.0 * n + 1.2, 3.0), dpi=100, squeeze=False, sharey=True
    )
    images = []
    for ax, snap, matrix in zip(axes[0], snapshots, matrices):
        image = ax.imshow(
            matrix,
            origin="lower",
            extent=extent,
            aspect="auto",
            interpolation="nearest",
            cmap=cmap,
            vmin=vmin,
            vmax=vmax,
        )
        images.append(image)
        ax.set_title(f"t = {snap.t:.3e} s", fontsize=9)
        ax.set_xlabel(r"$\xi = z - z'$ (m)")
    axes[0][0].set_ylabel("R (m)")
    colorbar = fig.colorbar(images[-1], ax=list(axes[0]), pad=0.02)
    colorbar.set_label(label)

    fig.canvas.draw()
    out_image_path = Path(out_image_path)
    png_path = out_image_path.with_suffix(".png")
    svg_path = out_image_path.with_suffix(".svg")
    width, height = fig.canvas.get_width_height()
    panels = [
        PanelData(
            t=snap.t,
            matrix=matrix,
            extent=extent,
            pixel_box=tuple(ax.get_window_extent().extents),
        )
        for ax, snap, matrix in zip(axes[0], snapshots, matrices)
    ]
    fig.savefig(png_path, dpi=fig.dpi)
    fig.savefig(svg_path, metadata={"Date": None})
    plt.close(fig)
    return FigureResult(
        mode=mode,
        panels=panels,
        vmin=vmin,
        vmax=vmax,
        cmap=cmap,
        png_path=png_path,
        svg_path=svg_path,
        image_height=height,
        image_width=width,
    )
