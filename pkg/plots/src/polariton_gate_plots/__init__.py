"""Figure rendering for the polariton gate simulator's CSV outputs.

Consumes only the file contracts (snapshot and sweep CSVs); the simulator
itself is never imported.
"""

__version__ = "0.1.0"

from .errors import EmptyDirectoryError, GridMismatchError, MalformedCsvError
from .snapshots import FigureResult, PanelData, Snapshot, SnapshotSet, plot_snapshots
from .sweep_plot import SweepPlotResult, plot_sweep

__all__ = [
    "EmptyDirectoryError",
    "FigureResult",
    "GridMismatchError",
    "MalformedCsvError",
    "PanelData",
    "Snapshot",
    "SnapshotSet",
    "SweepPlotResult",
    "plot_snapshots",
    "plot_sweep",
]
