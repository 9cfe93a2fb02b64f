class MalformedCsvError(ValueError):
    """Input file does not follow the documented CSV contract."""


class GridMismatchError(MalformedCsvError):
    """Snapshots in one set sample different (R, xi) grids."""


class EmptyDirectoryError(ValueError):
    """No snapshot CSV files found."""
