import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from figdata import gaussian_blob, write_snapshot_csv


@pytest.fixture
def synthetic_snapshot_dir(tmp_path):
    """Three snapshots of a blob crossing xi = 0 and picking up a pi flip."""
    import numpy as np

    grid_r = np.linspace(-2e-6, 2e-6, 8)
    grid_xi = np.linspace(-1e-5, 1e-5, 101)
    sigma = 1e-6
    directory = tmp_path / "snaps"
    directory.mkdir()
    for index, (t, center, phase) in enumerate(
        [(0.0, -5e-6, 0.0), (1e-4, 0.0, 0.0), (2e-4, 5e-6, math.pi)]
    ):
        w = gaussian_blob(grid_r, grid_xi, center, sigma, phase=phase)
        write_snapshot_csv(directory / f"snapshot_{index:03d}.csv", t, grid_r, grid_xi, w)
    return directory
