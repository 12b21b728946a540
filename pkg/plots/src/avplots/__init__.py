"""Line charts for approval-voting strategy sweeps."""

from .chart import (
    EXPECTED_HEADER,
    EmptySelectionError,
    PlotSpec,
    SweepFormatError,
    SweepPoint,
    build_figure,
    dump_points,
    group_points,
    load_sweep,
    render,
    select_points,
)

__all__ = [
    "EXPECTED_HEADER",
    "EmptySelectionError",
    "PlotSpec",
    "SweepFormatError",
    "SweepPoint",
    "build_figure",
    "dump_points",
    "group_points",
    "load_sweep",
    "render",
    "select_points",
]
