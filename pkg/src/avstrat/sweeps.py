"""Strategy panels and expected-utility sweeps over remaining-voter counts.

A sweep fixes a scenario and a seat count, switches the election to uniform
random tie-breaking, and evaluates a panel of strategy ballots at each
number of remaining voters, alongside the per-count maximum achievable
value ("max").  The panel's "max*" entry is the static maximizer: the
ballot chosen with no remaining voters, then held fixed as uncertainty
grows.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .core import Ballot, ElectionState, RANDOM_UNIFORM, UtilityFunction
from .exact import Number, exact_fraction, format_csv_utility, format_exact
from .scenarios import Scenario
from .strategies import (
    DEFAULT_EPSILON,
    best_response,
    canonical_ballot,
    take_x_best,
    truthful,
    truthful_nontrivial,
)
from .uncertainty import DEFAULT_MAX_REMAINING, FutureModel, expected_utility

#: Column order of the sweep CSV contract.
SWEEP_HEADER = ("scenario", "k", "strategy", "r", "p", "expected_utility")

MAX = "max"
MAX_STAR = "max*"


@dataclass(frozen=True)
class SweepRow:
    """One point of one strategy's expected-utility curve."""

    scenario_id: str
    seats: int
    strategy: str
    remaining_voters: int
    approval_prob: Fraction
    expected_utility: Fraction


def robust_best_ballot(
    state: ElectionState,
    utilities: UtilityFunction,
    model: FutureModel,
    *,
    probe_depth: int = 3,
    max_remaining: int = DEFAULT_MAX_REMAINING,
) -> Ballot:
    """The optimal ballot that stays best the longest as more voters remain.

    Ties in the argmax set at ``model.remaining_voters`` are filtered by
    expected utility at the next ``probe_depth`` voter counts (never past
    ``max_remaining``); whatever tie survives falls back to the fewest
    approvals, then index order.  This keeps the reported ballot stable
    instead of an arbitrary member of a frequently-large argmax set.
    """
    pool = list(best_response(state, utilities, model).ballots)
    first = model.remaining_voters + 1
    for r in range(first, min(first + probe_depth, max_remaining + 1)):
        if len(pool) == 1:
            break
        probe = FutureModel(r, model.approval_prob)
        values = {b: expected_utility(state, b, utilities, probe) for b in pool}
        top = max(values.values())
        pool = [b for b in pool if values[b] == top]
    return canonical_ballot(frozenset(pool))


def static_best_ballot(
    state: ElectionState,
    utilities: UtilityFunction,
    approval_prob: Number = Fraction(1, 2),
    *,
    probe_depth: int = 3,
) -> Ballot:
    """The "max*" ballot: optimal with no voters remaining, robustly chosen."""
    model = FutureModel(0, exact_fraction(approval_prob))
    return robust_best_ballot(state, utilities, model, probe_depth=probe_depth)


def strategy_panel(
    scenario: Scenario,
    seats: int,
    *,
    approval_prob: Number = Fraction(1, 2),
    epsilon: Number = DEFAULT_EPSILON,
) -> List[Tuple[str, Ballot]]:
    """The labeled strategy ballots a sweep tracks for one (scenario, seats).

    Always: truthful, take-x-best for x in {1, 2} (where feasible), and the
    static maximizer "max*".  "truth*" joins only when it differs from the
    truthful ballot, i.e. when some utility is positive but trivial.
    """
    utilities = scenario.utilities
    priority = scenario.lex_priority
    panel: List[Tuple[str, Ballot]] = [("truthful", truthful(utilities))]
    star = truthful_nontrivial(utilities, epsilon)
    if star != truthful(utilities):
        panel.append(("truth*", star))
    positives = sum(1 for micro in utilities.micro if micro > 0)
    for x in (1, 2):
        if x <= positives:
            panel.append((f"take-x-best({x})", take_x_best(utilities, x, priority)))
    state = scenario.state(seats, RANDOM_UNIFORM)
    panel.append((MAX_STAR, static_best_ballot(state, utilities, approval_prob)))
    return panel


def sweep(
    scenario: Scenario,
    seats: int,
    r_values: Sequence[int],
    approval_prob: Number = Fraction(1, 2),
    *,
    epsilon: Number = DEFAULT_EPSILON,
) -> List[SweepRow]:
    """Expected utility of every panel strategy, plus "max", at each r.

    All rows use uniform random tie-breaking.  "max" rows re-run the
    exhaustive search at each r, so they dominate every other row with the
    same r by construction.  Rows come back sorted by (strategy, r).
    """
    prob = exact_fraction(approval_prob)
    if any(not isinstance(r, int) or r < 0 for r in r_values):
        raise ValueError("r_values must be non-negative integers")
    counts = sorted(set(r_values))
    state = scenario.state(seats, RANDOM_UNIFORM)
    utilities = scenario.utilities
    rows = []
    for label, ballot in strategy_panel(
        scenario, seats, approval_prob=prob, epsilon=epsilon
    ):
        for r in counts:
            value = expected_utility(state, ballot, utilities, FutureModel(r, prob))
            rows.append(SweepRow(scenario.id, seats, label, r, prob, value))
    for r in counts:
        response = best_response(state, utilities, FutureModel(r, prob))
        rows.append(
            SweepRow(scenario.id, seats, MAX, r, prob, response.expected_utility)
        )
    rows.sort(key=lambda row: (row.strategy, row.remaining_voters))
    return rows


def sweep_csv_text(rows: Sequence[SweepRow]) -> str:
    """Render sweep rows as the CSV contract, byte-deterministic."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.scenario_id,
                row.seats,
                row.strategy,
                row.remaining_voters,
                format_exact(row.approval_prob),
                format_csv_utility(row.expected_utility),
            )
        )
    return buffer.getvalue()


def write_sweep_csv(rows: Sequence[SweepRow], path: Union[str, Path]) -> int:
    """Write the sweep CSV; returns the number of data rows."""
    Path(path).write_text(sweep_csv_text(rows), encoding="utf-8")
    return len(rows)
