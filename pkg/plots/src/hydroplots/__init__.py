"""Figure generation from hydroelastic solver CSV and snapshot outputs."""

from .figures import (
    KINDS,
    PlotSpec,
    decay_figure,
    dispersion_figure,
    fit_exponent,
    fit_slope,
    plot,
    slope_figure,
    snapshot_figure,
)
from .io import (
    SchemaError,
    Table,
    read_diagnostics,
    read_dispersion,
    read_hierarchy,
    read_snapshot,
)

__all__ = [
    "KINDS",
    "PlotSpec",
    "SchemaError",
    "Table",
    "decay_figure",
    "dispersion_figure",
    "fit_exponent",
    "fit_slope",
    "plot",
    "read_diagnostics",
    "read_dispersion",
    "read_hierarchy",
    "read_snapshot",
    "slope_figure",
    "snapshot_figure",
]
