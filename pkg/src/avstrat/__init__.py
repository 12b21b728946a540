"""Multi-winner approval voting with exact expected utilities.

The package models a single strategic voter facing known tallies from
everyone who voted so far, plus an optional population of voters still to
come.  Winning sets, tie-breaking, classic ballot heuristics, exhaustive
best response and expected utilities are all computed with exact rational
arithmetic; nothing in here samples.
"""

from .core import (
    Ballot,
    Candidate,
    ElectionState,
    InvalidBallotError,
    Lexicographic,
    OutcomeDistribution,
    RANDOM_UNIFORM,
    RandomUniform,
    UtilityFunction,
    all_ballots,
    apply_ballot,
    expected_outcome_utility,
    outcome_distribution,
    outcome_utility,
    validate_ballot,
    winners_lex,
)
from .exact import exact_fraction, format_exact, micro_to_fraction, to_micro
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
    BestResponse,
    ClassificationResult,
    StrategyLabel,
    best_response,
    canonical_ballot,
    classify_ballot,
    follow_the_leader,
    leader_plus_best,
    take_x_best,
    truthful,
    truthful_nontrivial,
)
from .sweeps import (
    SWEEP_HEADER,
    SweepRow,
    robust_best_ballot,
    static_best_ballot,
    strategy_panel,
    sweep,
    sweep_csv_text,
    write_sweep_csv,
)
from .uncertainty import (
    CapacityError,
    FutureModel,
    IncrementDistribution,
    expected_utility,
    increment_distribution,
)

__all__ = [
    "BUILTIN_IDS",
    "Ballot",
    "BestResponse",
    "Candidate",
    "CapacityError",
    "ClassificationResult",
    "ElectionState",
    "FutureModel",
    "IncrementDistribution",
    "InvalidBallotError",
    "Lexicographic",
    "OutcomeDistribution",
    "RANDOM_UNIFORM",
    "RandomUniform",
    "SWEEP_HEADER",
    "Scenario",
    "ScenarioError",
    "StrategyLabel",
    "SweepRow",
    "UnknownScenarioError",
    "UtilityFunction",
    "all_ballots",
    "apply_ballot",
    "best_response",
    "builtin",
    "builtin_scenarios",
    "canonical_ballot",
    "classify_ballot",
    "exact_fraction",
    "expected_outcome_utility",
    "expected_utility",
    "follow_the_leader",
    "format_exact",
    "leader_plus_best",
    "load_scenario",
    "micro_to_fraction",
    "outcome_distribution",
    "outcome_utility",
    "robust_best_ballot",
    "save_scenario",
    "static_best_ballot",
    "strategy_panel",
    "sweep",
    "sweep_csv_text",
    "take_x_best",
    "to_micro",
    "truthful",
    "truthful_nontrivial",
    "validate_ballot",
    "winners_lex",
    "write_sweep_csv",
]
