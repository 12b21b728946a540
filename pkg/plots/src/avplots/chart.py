"""Turn strategy sweep CSVs into expected-utility-vs-uncertainty line charts.

The input contract is the sweep CSV: header
``scenario,k,strategy,r,p,expected_utility``, one row per strategy per
remaining-voter count.  Rows are kept as raw strings end to end so the
``--dump-points`` debug path reproduces the input bytes exactly; numbers
are parsed only into the local variables the axes need.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.figure import Figure

EXPECTED_HEADER = ("scenario", "k", "strategy", "r", "p", "expected_utility")

# Fixed salt so SVG element ids do not vary between runs.
SVG_HASHSALT = "avplots"

MAX_STRATEGY = "max"


class SweepFormatError(ValueError):
    """The input file does not satisfy the sweep CSV contract."""


class EmptySelectionError(ValueError):
    """Scenario/k filters matched no rows; nothing to draw."""


@dataclass(frozen=True)
class SweepPoint:
    """One CSV data row, untouched."""

    scenario: str
    k: str
    strategy: str
    r: str
    p: str
    expected_utility: str

    def as_row(self) -> List[str]:
        return [self.scenario, self.k, self.strategy, self.r, self.p, self.expected_utility]


@dataclass(frozen=True)
class PlotSpec:
    """Everything one render run needs.

    ``output`` is the image path when the filters select a single
    (scenario, k) group, or a directory that will receive one image per
    group otherwise.  ``image_format`` may be omitted when the output path
    carries a .png or .svg suffix.
    """

    input_csv: Union[str, Path]
    output: Union[str, Path]
    scenario: Optional[str] = None
    k: Optional[int] = None
    title: Optional[str] = None
    image_format: Optional[str] = None


def _check_numeric(path: Path, line_no: int, column: str, text: str, kind) -> None:
    try:
        kind(text)
    except ValueError:
        noun = "an integer" if kind is int else "a number"
        raise SweepFormatError(
            f"{path}: column {column!r} at row {line_no}: {text!r} is not {noun}"
        ) from None


def load_sweep(path: Union[str, Path]) -> List[SweepPoint]:
    """Read and validate a sweep CSV; raises SweepFormatError on mismatch."""
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise SweepFormatError(
                f"{path}: empty file, expected header {','.join(EXPECTED_HEADER)}"
            )
        if tuple(header) != EXPECTED_HEADER:
            missing = [col for col in EXPECTED_HEADER if col not in header]
            foreign = [col for col in header if col not in EXPECTED_HEADER]
            offender = (missing + foreign)[0] if missing or foreign else "column order"
            raise SweepFormatError(
                f"{path}: header mismatch on {offender!r}: got {','.join(header)}"
            )
        points = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(EXPECTED_HEADER):
                raise SweepFormatError(
                    f"{path}: row {line_no} has {len(row)} fields, expected "
                    f"{len(EXPECTED_HEADER)}"
                )
            point = SweepPoint(*row)
            _check_numeric(path, line_no, "k", point.k, int)
            _check_numeric(path, line_no, "r", point.r, int)
            _check_numeric(path, line_no, "p", point.p, float)
            _check_numeric(path, line_no, "expected_utility", point.expected_utility, float)
            points.append(point)
    return points


def select_points(
    points: Sequence[SweepPoint],
    scenario: Optional[str] = None,
    k: Optional[int] = None,
) -> List[SweepPoint]:
    return [
        point
        for point in points
        if (scenario is None or point.scenario == scenario)
        and (k is None or int(point.k) == k)
    ]


def group_points(
    points: Sequence[SweepPoint],
) -> Dict[Tuple[str, int], List[SweepPoint]]:
    """Split rows into charts: one (scenario, k) pair each, sorted."""
    groups: Dict[Tuple[str, int], List[SweepPoint]] = {}
    for point in points:
        groups.setdefault((point.scenario, int(point.k)), []).append(point)
    return dict(sorted(groups.items()))


def dump_points(points: Sequence[SweepPoint]) -> str:
    """The selected rows as CSV text, byte-identical to their source form."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(EXPECTED_HEADER)
    for point in points:
        writer.writerow(point.as_row())
    return buffer.getvalue()


def build_figure(
    scenario: str,
    k: int,
    points: Sequence[SweepPoint],
    title: Optional[str] = None,
) -> Figure:
    """One chart: r on the x axis, one line per strategy, "max" on top."""
    strategies = sorted({point.strategy for point in points})
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for strategy in strategies:
        series = sorted(
            (point for point in points if point.strategy == strategy),
            key=lambda point: int(point.r),
        )
        xs = [int(point.r) for point in series]
        ys = [float(point.expected_utility) for point in series]
        if strategy == MAX_STRATEGY:
            ax.plot(
                xs, ys,
                label=strategy,
                color="black",
                linestyle="--",
                linewidth=2.2,
                zorder=5,
            )
        else:
            ax.plot(xs, ys, label=strategy, marker="o", markersize=4)
    ax.set_xlabel("remaining voters r")
    ax.set_ylabel("expected utility")
    ax.set_title(title if title is not None else f"{scenario}, k={k}")
    xs_all = sorted({int(point.r) for point in points})
    ax.set_xticks(xs_all)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def _resolve_format(spec: PlotSpec, output: Path) -> str:
    if spec.image_format is not None:
        fmt = spec.image_format.lower()
    else:
        fmt = output.suffix.lstrip(".").lower()
    if fmt not in ("png", "svg"):
        raise ValueError(
            f"cannot tell the image format from {output.name!r}; "
            "pass png or svg explicitly"
        )
    return fmt


def _save(fig: Figure, target: Path, fmt: str) -> None:
    plt.rcParams["svg.hashsalt"] = SVG_HASHSALT
    # Drop the writer-identity metadata both formats embed by default;
    # output bytes must depend on the data alone.
    metadata = {"Date": None} if fmt == "svg" else {"Software": None}
    fig.savefig(target, format=fmt, metadata=metadata)
    plt.close(fig)


def render(spec: PlotSpec) -> List[Path]:
    """Draw every selected (scenario, k) group; returns the files written."""
    points = load_sweep(spec.input_csv)
    selected = select_points(points, spec.scenario, spec.k)
    if not selected:
        wanted = ", ".join(
            part
            for part in (
                f"scenario={spec.scenario}" if spec.scenario else "",
                f"k={spec.k}" if spec.k is not None else "",
            )
            if part
        )
        raise EmptySelectionError(
            f"no rows match {wanted or 'the input'} in {spec.input_csv}"
        )
    groups = group_points(selected)
    output = Path(spec.output)
    written = []
    if len(groups) == 1:
        ((scenario, k), group), = groups.items()
        fmt = _resolve_format(spec, output)
        _save(build_figure(scenario, k, group, spec.title), output, fmt)
        written.append(output)
    else:
        fmt = spec.image_format or "png"
        if fmt not in ("png", "svg"):
            raise ValueError(f"unsupported image format {fmt!r}; pass png or svg")
        output.mkdir(parents=True, exist_ok=True)
        for (scenario, k), group in groups.items():
            target = output / f"{scenario}_k{k}.{fmt}"
            _save(build_figure(scenario, k, group, spec.title), target, fmt)
            written.append(target)
    return written
