"""Command-line front door: evaluate, best-response, classify, sweep, scenarios.

Every command is a pure function of its flags and input files; nothing here
reads the clock or draws random numbers, so outputs are byte-stable.

Exit codes: 0 ok, 2 malformed input, 3 unknown scenario or missing input
file, 4 I/O failure while writing.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .core import (
    Ballot,
    ElectionState,
    InvalidBallotError,
    RANDOM_UNIFORM,
    apply_ballot,
    expected_outcome_utility,
)
from .exact import exact_fraction, format_exact
from .scenarios import (
    BUILTIN_IDS,
    Scenario,
    ScenarioError,
    UnknownScenarioError,
    builtin,
    builtin_scenarios,
    load_scenario,
    save_scenario,
)
from .strategies import (
    best_response,
    classify_ballot,
    follow_the_leader,
    leader_plus_best,
    take_x_best,
    truthful,
    truthful_nontrivial,
)
from .sweeps import robust_best_ballot, strategy_panel, sweep, write_sweep_csv
from .uncertainty import CapacityError, FutureModel


def _resolve_scenario(ref: str) -> Scenario:
    if ref in BUILTIN_IDS:
        return builtin(ref)
    path = Path(ref)
    if not path.exists():
        raise UnknownScenarioError(
            f"unknown scenario {ref!r}: not a built-in id "
            f"({', '.join(BUILTIN_IDS)}) and no such file"
        )
    return load_scenario(path)


def _parse_ballot(scenario: Scenario, literal: str) -> Ballot:
    labels = [part.strip() for part in literal.split(",") if part.strip()]
    return scenario.state(0).ballot_from_labels(labels)


def _ballot_text(scenario: Scenario, ballot: Ballot) -> str:
    if not ballot:
        return "(none)"
    return ",".join(scenario.candidates[c] for c in sorted(ballot))


def _ballot_labels(scenario: Scenario, ballot: Ballot) -> List[str]:
    return [scenario.candidates[c] for c in sorted(ballot)]


def _ballot_sort_key(ballot: Ballot) -> Tuple[int, Tuple[int, ...]]:
    return (len(ballot), tuple(sorted(ballot)))


def _frac_json(value: Fraction) -> Dict[str, object]:
    return {"exact": str(value), "value": float(value)}


def _render_columns(rows: List[List[str]]) -> str:
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [cell.ljust(width) for cell, width in zip(row, widths)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def _per_candidate(scenario: Scenario, values) -> str:
    return ", ".join(f"{lab}={v}" for lab, v in zip(scenario.candidates, values))


def _scenario_header(scenario: Scenario) -> List[str]:
    utilities = [format_exact(v) for v in scenario.utilities.values()]
    return [
        f"scenario: {scenario.id}",
        f"tallies: {_per_candidate(scenario, scenario.base_tallies)}",
        f"utilities: {_per_candidate(scenario, utilities)}",
    ]


def _strategy_rows(scenario: Scenario) -> List[Tuple[str, Ballot]]:
    """The strategy rows of the per-scenario evaluation table."""
    utilities = scenario.utilities
    priority = scenario.lex_priority
    probe = scenario.state(0)
    truth = truthful(utilities)
    rows = [("truthful", truth)]
    star = truthful_nontrivial(utilities)
    if star != truth:
        rows.append(("truth*", star))
    positives = sum(1 for micro in utilities.micro if micro > 0)
    for x in range(1, positives):
        rows.append((f"take-x-best({x})", take_x_best(utilities, x, priority, strict=True)))
    rows.append(("follow-the-leader", follow_the_leader(probe)))
    for member in sorted(
        leader_plus_best(probe, utilities, priority), key=_ballot_sort_key
    ):
        rows.append(("leader-plus-best", member))
    return rows


def _eval_pair(scenario: Scenario, seats: int, ballot: Ballot) -> Tuple[Fraction, Fraction]:
    utilities = scenario.utilities
    lex_value = expected_outcome_utility(
        apply_ballot(scenario.state(seats), ballot), utilities
    )
    random_value = expected_outcome_utility(
        apply_ballot(scenario.state(seats, RANDOM_UNIFORM), ballot), utilities
    )
    return lex_value, random_value


def _cmd_eval(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario)
    if args.table:
        return _eval_table(args, scenario)
    if args.k is None:
        raise ValueError("--k is required unless --table is given")
    seats = _check_seats(scenario, args.k)
    rows = _strategy_rows(scenario)
    response = best_response(scenario.state(seats), scenario.utilities)
    rows.append(("optimal", response.canonical))
    if args.ballot is not None:
        rows.append(("given", _parse_ballot(scenario, args.ballot)))
    evaluated = [
        (label, ballot, *_eval_pair(scenario, seats, ballot)) for label, ballot in rows
    ]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.id,
                    "k": seats,
                    "tallies": list(scenario.base_tallies),
                    "utilities": [format_exact(v) for v in scenario.utilities.values()],
                    "rows": [
                        {
                            "strategy": label,
                            "ballot": _ballot_labels(scenario, ballot),
                            "lex": _frac_json(lex_value),
                            "random": _frac_json(random_value),
                        }
                        for label, ballot, lex_value, random_value in evaluated
                    ],
                },
                indent=2,
            )
        )
        return 0
    table = [["strategy", "ballot", "lex", "random"]]
    for label, ballot, lex_value, random_value in evaluated:
        table.append(
            [
                label,
                _ballot_text(scenario, ballot),
                format_exact(lex_value),
                format_exact(random_value),
            ]
        )
    print("\n".join(_scenario_header(scenario) + [f"k: {seats}", ""]))
    print(_render_columns(table))
    return 0


def _eval_table(args: argparse.Namespace, scenario: Scenario) -> int:
    ks = (2, 3)
    for k in ks:
        _check_seats(scenario, k)
    rows = _strategy_rows(scenario)
    if args.ballot is not None:
        rows.append(("given", _parse_ballot(scenario, args.ballot)))
    utilities = scenario.utilities
    optima = {
        k: best_response(scenario.state(k), utilities) for k in ks
    }
    evaluated = []
    for label, ballot in rows:
        values = {}
        for k in ks:
            values[k] = expected_outcome_utility(
                apply_ballot(scenario.state(k), ballot), utilities
            )
        evaluated.append((label, ballot, values))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.id,
                    "tallies": list(scenario.base_tallies),
                    "utilities": [format_exact(v) for v in utilities.values()],
                    "ks": list(ks),
                    "rows": [
                        {
                            "strategy": label,
                            "ballot": _ballot_labels(scenario, ballot),
                            "values": {
                                str(k): _frac_json(values[k]) for k in ks
                            },
                            "optimal": {
                                str(k): values[k] == optima[k].expected_utility
                                for k in ks
                            },
                        }
                        for label, ballot, values in evaluated
                    ],
                    "optimal": {
                        str(k): {
                            "value": _frac_json(optima[k].expected_utility),
                            "ballot": _ballot_labels(scenario, optima[k].canonical),
                        }
                        for k in ks
                    },
                },
                indent=2,
            )
        )
        return 0
    table = [["strategy", "ballot"] + [f"k={k}" for k in ks]]
    for label, ballot, values in evaluated:
        cells = [label, _ballot_text(scenario, ballot)]
        for k in ks:
            mark = "*" if values[k] == optima[k].expected_utility else ""
            cells.append(format_exact(values[k]) + mark)
        table.append(cells)
    print("\n".join(_scenario_header(scenario) + [""]))
    print(_render_columns(table))
    print()
    for k in ks:
        print(
            f"optimal k={k}: {format_exact(optima[k].expected_utility)} "
            f"via {_ballot_text(scenario, optima[k].canonical)}"
        )
    print("(* marks values matching the exhaustive optimum for that column)")
    return 0


def _check_seats(scenario: Scenario, k: int) -> int:
    if not 1 <= k <= scenario.num_candidates:
        raise ValueError(
            f"k must be between 1 and {scenario.num_candidates}, got {k}"
        )
    return k


def _cmd_best_response(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario)
    seats = _check_seats(scenario, args.k)
    prob = exact_fraction(args.p)
    model = FutureModel(args.r, prob)
    tiebreak = RANDOM_UNIFORM if args.tiebreak == "random" else None
    state = scenario.state(seats, tiebreak)
    response = best_response(state, scenario.utilities, model)
    ballots = sorted(response.ballots, key=_ballot_sort_key)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.id,
                    "k": seats,
                    "tiebreak": args.tiebreak,
                    "r": args.r,
                    "p": format_exact(prob),
                    "expected_utility": _frac_json(response.expected_utility),
                    "canonical": _ballot_labels(scenario, response.canonical),
                    "ballots": [_ballot_labels(scenario, b) for b in ballots],
                },
                indent=2,
            )
        )
        return 0
    print(
        f"scenario {scenario.id}, k={seats}, tiebreak={args.tiebreak}, "
        f"r={args.r}, p={format_exact(prob)}"
    )
    value = response.expected_utility
    print(f"expected utility: {format_exact(value)} (exact {value})")
    print(f"optimal ballots: {len(ballots)}")
    print(f"canonical: {_ballot_text(scenario, response.canonical)}")
    if args.all:
        for ballot in ballots:
            print(f"  {_ballot_text(scenario, ballot)}")
    return 0


def _read_ballot_rows(path: Path, skip_header: bool) -> List[Tuple[int, List[str]]]:
    rows = []
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        for index, row in enumerate(reader):
            if skip_header and index == 0:
                continue
            cells = [cell.strip() for cell in row if cell.strip()]
            rows.append((index + 1, cells))
    return rows


def _cmd_classify(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario)
    seats = _check_seats(scenario, args.k)
    path = Path(args.input)
    if not path.exists():
        print(f"error: input file {path} does not exist", file=sys.stderr)
        return 3
    state = scenario.state(seats)
    utilities = scenario.utilities
    classified = []
    skipped = []
    for line_no, cells in _read_ballot_rows(path, args.header):
        try:
            ballot = scenario.state(0).ballot_from_labels(cells)
        except InvalidBallotError as exc:
            if not args.lenient:
                raise InvalidBallotError(f"row {line_no}: {exc}") from None
            skipped.append((line_no, cells, str(exc)))
            continue
        result = classify_ballot(state, utilities, ballot)
        classified.append((line_no, ballot, result.strings()))
    counts: Dict[str, int] = {}
    for _, _, labels in classified:
        for label in labels:
            counts[label] = counts.get(label, 0) + 1
    counts = dict(sorted(counts.items()))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.id,
                    "k": seats,
                    "rows": [
                        {
                            "row": line_no,
                            "ballot": _ballot_labels(scenario, ballot),
                            "labels": list(labels),
                        }
                        for line_no, ballot, labels in classified
                    ],
                    "label_counts": counts,
                    "skipped": [
                        {"row": line_no, "cells": cells, "error": error}
                        for line_no, cells, error in skipped
                    ],
                },
                indent=2,
            )
        )
        return 0
    for line_no, ballot, labels in classified:
        print(f"{line_no}\t{_ballot_text(scenario, ballot)}\t{';'.join(labels)}")
    for line_no, cells, error in skipped:
        print(f"{line_no}\t{','.join(cells) or '(none)'}\terror: {error}")
    print(f"rows: {len(classified)}")
    if skipped:
        print(f"skipped: {len(skipped)}")
    print("labels:")
    for label, count in counts.items():
        print(f"  {label}\t{count}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _resolve_scenario(args.scenario)
    seats = _check_seats(scenario, args.k)
    prob = exact_fraction(args.p)
    r_values = _parse_r_list(args.r)
    rows = sweep(scenario, seats, r_values, prob)
    count = write_sweep_csv(rows, args.output)
    state = scenario.state(seats, RANDOM_UNIFORM)
    panel = strategy_panel(scenario, seats, approval_prob=prob)
    max_ballots = {
        r: robust_best_ballot(state, scenario.utilities, FutureModel(r, prob))
        for r in sorted(set(r_values))
    }
    if args.format == "json":
        print(
            json.dumps(
                {
                    "scenario": scenario.id,
                    "k": seats,
                    "r": sorted(set(r_values)),
                    "p": format_exact(prob),
                    "path": str(args.output),
                    "rows": count,
                    "panel": [
                        {"strategy": label, "ballot": _ballot_labels(scenario, ballot)}
                        for label, ballot in panel
                    ],
                    "max_ballots": {
                        str(r): _ballot_labels(scenario, ballot)
                        for r, ballot in max_ballots.items()
                    },
                },
                indent=2,
            )
        )
        return 0
    print(f"wrote {args.output}: {count} rows")
    print("panel ballots:")
    for label, ballot in panel:
        print(f"  {label}\t{_ballot_text(scenario, ballot)}")
    print("max ballots:")
    for r, ballot in max_ballots.items():
        print(f"  r={r}\t{_ballot_text(scenario, ballot)}")
    return 0


def _parse_r_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"--r expects comma-separated integers, got {text!r}") from None
    if not values:
        raise ValueError("--r expects at least one value")
    return values


def _scenario_doc(scenario: Scenario) -> Dict[str, object]:
    return {
        "id": scenario.id,
        "candidates": list(scenario.candidates),
        "utilities": [format_exact(v) for v in scenario.utilities.values()],
        "tallies": list(scenario.base_tallies),
        "lex_priority": list(scenario.lex_priority),
        "notes": scenario.notes,
    }


def _cmd_scenarios(args: argparse.Namespace) -> int:
    if args.output is not None:
        if args.scenario is None:
            raise ValueError("--output requires --scenario")
        scenario = _resolve_scenario(args.scenario)
        save_scenario(scenario, args.output)
        print(f"wrote {args.output}")
        return 0
    listed = (
        [_resolve_scenario(args.scenario)] if args.scenario else builtin_scenarios()
    )
    if args.format == "json":
        print(json.dumps({"scenarios": [_scenario_doc(s) for s in listed]}, indent=2))
        return 0
    for scenario in listed:
        utilities = ",".join(format_exact(v) for v in scenario.utilities.values())
        tallies = ",".join(str(t) for t in scenario.base_tallies)
        print(
            f"{scenario.id}\tcandidates={','.join(scenario.candidates)}"
            f"\tutilities={utilities}\ttallies={tallies}"
        )
        if scenario.notes:
            print(f"\t{scenario.notes}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avstrat",
        description=(
            "Multi-winner approval voting: evaluate strategy ballots, search "
            "best responses, classify observed ballots, and sweep expected "
            "utility over remaining-voter counts."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_eval = commands.add_parser(
        "eval", help="evaluate strategy ballots under both tie-break rules"
    )
    p_eval.add_argument("--scenario", required=True, help="built-in id or JSON file")
    p_eval.add_argument("--k", type=int, help="number of winners (omit with --table)")
    p_eval.add_argument(
        "--ballot",
        help="comma-separated candidate labels to evaluate too; '' for abstain",
    )
    p_eval.add_argument(
        "--table",
        action="store_true",
        help="print the two-seat and three-seat lexicographic table",
    )
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.set_defaults(func=_cmd_eval)

    p_best = commands.add_parser(
        "best-response", help="exhaustive search for the optimal ballot"
    )
    p_best.add_argument("--scenario", required=True)
    p_best.add_argument("--k", type=int, required=True)
    p_best.add_argument("--tiebreak", choices=("lex", "random"), default="lex")
    p_best.add_argument("--r", type=int, default=0, help="remaining voters")
    p_best.add_argument("--p", default="0.5", help="per-candidate approval probability")
    p_best.add_argument("--all", action="store_true", help="list every optimal ballot")
    p_best.add_argument("--format", choices=("text", "json"), default="text")
    p_best.set_defaults(func=_cmd_best_response)

    p_classify = commands.add_parser(
        "classify", help="label ballots from a CSV file by matching strategy"
    )
    p_classify.add_argument("--scenario", required=True)
    p_classify.add_argument("--k", type=int, required=True)
    p_classify.add_argument("--input", required=True, help="CSV, one ballot per row")
    p_classify.add_argument(
        "--header", action="store_true", help="skip the first row of the input"
    )
    p_classify.add_argument(
        "--lenient",
        action="store_true",
        help="report malformed rows and continue instead of failing",
    )
    p_classify.add_argument("--format", choices=("text", "json"), default="text")
    p_classify.set_defaults(func=_cmd_classify)

    p_sweep = commands.add_parser(
        "sweep", help="write the expected-utility-vs-remaining-voters CSV"
    )
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--k", type=int, required=True)
    p_sweep.add_argument("--r", default="0,1,2,3", help="comma-separated voter counts")
    p_sweep.add_argument("--p", default="0.5", help="per-candidate approval probability")
    p_sweep.add_argument("--output", required=True, help="CSV path to write")
    p_sweep.add_argument("--format", choices=("text", "json"), default="text")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_scen = commands.add_parser(
        "scenarios", help="list built-in scenarios or export one as JSON"
    )
    p_scen.add_argument("--scenario", help="limit to one scenario (id or file)")
    p_scen.add_argument("--output", help="write the scenario as JSON to this path")
    p_scen.add_argument("--format", choices=("text", "json"), default="text")
    p_scen.set_defaults(func=_cmd_scenarios)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidBallotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ScenarioError, CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
