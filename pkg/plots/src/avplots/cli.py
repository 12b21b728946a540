"""Command-line wrapper around the chart renderer.

Exit codes follow the sweep producer's convention: 0 ok, 2 malformed
input or empty selection, 3 missing input file, 4 failure writing output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .chart import (
    EmptySelectionError,
    PlotSpec,
    SweepFormatError,
    dump_points,
    load_sweep,
    render,
    select_points,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avplots",
        description=(
            "Render expected-utility-vs-remaining-voters line charts from a "
            "strategy sweep CSV, one chart per (scenario, k) group."
        ),
    )
    parser.add_argument("--input", required=True, help="sweep CSV to read")
    parser.add_argument(
        "--output",
        help="image path (single chart) or directory (several); required "
        "unless --dump-points is given",
    )
    parser.add_argument("--scenario", help="only rows with this scenario id")
    parser.add_argument("--k", type=int, help="only rows with this seat count")
    parser.add_argument("--title", help="chart title (default: scenario, k)")
    parser.add_argument(
        "--image-format",
        choices=("png", "svg"),
        help="output format; inferred from the output suffix when omitted",
    )
    parser.add_argument(
        "--dump-points",
        action="store_true",
        help="print the selected rows as CSV instead of drawing",
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    input_path = Path(args.input)
    if not input_path.exists():
        print(f"error: input file {input_path} does not exist", file=sys.stderr)
        return 3
    try:
        if args.dump_points:
            points = select_points(load_sweep(input_path), args.scenario, args.k)
            if not points:
                raise EmptySelectionError(
                    f"no rows match the given filters in {input_path}"
                )
            sys.stdout.write(dump_points(points))
            return 0
        if args.output is None:
            raise ValueError("--output is required unless --dump-points is given")
        spec = PlotSpec(
            input_csv=input_path,
            output=args.output,
            scenario=args.scenario,
            k=args.k,
            title=args.title,
            image_format=args.image_format,
        )
        written = render(spec)
    except (SweepFormatError, EmptySelectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    for path in written:
        print(f"wrote {path}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
