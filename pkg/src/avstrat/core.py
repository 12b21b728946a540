"""Core model of a multi-winner approval election.

The election is seen from the point of view of one focal voter who knows the
aggregate tallies of everyone who voted before them.  A ballot is a subset of
candidates; the k candidates with the most approvals win.  Ties at the seat
boundary are resolved either by a fixed lexicographic priority order or
uniformly at random over all maximal-score committees.

All values are immutable and all functions are pure, so everything here is
safe to share across threads.  Expected utilities are exact
:class:`~fractions.Fraction` values; nothing is sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import FrozenSet, Iterable, Tuple, Union

from .exact import SCALE, Number, micro_to_fraction, to_micro

#: A ballot is the set of candidate indices the focal voter approves.
Ballot = FrozenSet[int]


class InvalidBallotError(ValueError):
    """A ballot refers to a candidate the election does not have."""


@dataclass(frozen=True)
class Candidate:
    """A candidate: position in the election's list plus a display label."""

    index: int
    label: str


@dataclass(frozen=True)
class Lexicographic:
    """Break boundary ties by a fixed priority order (best first).

    ``priority`` is a permutation of candidate indices; earlier means
    preferred when tallies tie.
    """

    priority: Tuple[int, ...]


@dataclass(frozen=True)
class RandomUniform:
    """Break boundary ties uniformly over all maximal-score committees."""


Tiebreak = Union[Lexicographic, RandomUniform]

RANDOM_UNIFORM = RandomUniform()


@dataclass(frozen=True)
class ElectionState:
    """Aggregate state of an approval election before the focal vote.

    Attributes:
        labels: candidate labels, unique, in candidate-index order.
        tallies: non-negative approval counts, one per candidate.
        seats: number of winners k, 0 <= k <= number of candidates.
        tiebreak: Lexicographic(priority) or RANDOM_UNIFORM.
    """

    labels: Tuple[str, ...]
    tallies: Tuple[int, ...]
    seats: int
    tiebreak: Tiebreak = RANDOM_UNIFORM

    def __post_init__(self):
        m = len(self.labels)
        if len(set(self.labels)) != m:
            raise ValueError("candidate labels must be unique")
        if len(self.tallies) != m:
            raise ValueError(
                f"got {len(self.tallies)} tallies for {m} candidates"
            )
        if any(t < 0 or not isinstance(t, int) for t in self.tallies):
            raise ValueError("tallies must be non-negative integers")
        if not 0 <= self.seats <= m:
            raise ValueError(f"seats must be between 0 and {m}, got {self.seats}")
        if isinstance(self.tiebreak, Lexicographic):
            if sorted(self.tiebreak.priority) != list(range(m)):
                raise ValueError(
                    "lexicographic priority must be a permutation of all candidates"
                )

    @property
    def num_candidates(self) -> int:
        return len(self.labels)

    @property
    def candidates(self) -> Tuple[Candidate, ...]:
        return tuple(Candidate(i, lab) for i, lab in enumerate(self.labels))

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidBallotError(
                f"unknown candidate {label!r}; candidates are {', '.join(self.labels)}"
            ) from None

    def ballot_from_labels(self, labels: Iterable[str]) -> Ballot:
        return frozenset(self.index_of(lab) for lab in labels)

    def labels_of(self, candidates: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.labels[c] for c in sorted(candidates))

    def with_tiebreak(self, tiebreak: Tiebreak) -> "ElectionState":
        return replace(self, tiebreak=tiebreak)


@dataclass(frozen=True)
class UtilityFunction:
    """The focal voter's per-candidate payoffs.

    Stored as integer millionths so decimal inputs stay exact; construct with
    :meth:`from_values` and read back via :meth:`value`.
    """

    micro: Tuple[int, ...]

    @classmethod
    def from_values(cls, values: Iterable[Number]) -> "UtilityFunction":
        return cls(tuple(to_micro(v) for v in values))

    def __len__(self) -> int:
        return len(self.micro)

    def value(self, candidate: int) -> Fraction:
        return micro_to_fraction(self.micro[candidate])

    def values(self) -> Tuple[Fraction, ...]:
        return tuple(micro_to_fraction(m) for m in self.micro)

    def total_micro(self, candidates: Iterable[int]) -> int:
        return sum(self.micro[c] for c in candidates)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Per-candidate win probabilities under uniform-random tie-breaking.

    ``sure_winners`` hold candidates strictly above the seat boundary,
    ``boundary_ties`` the candidates tied at it, and ``open_seats`` how many
    seats the tied candidates share.  ``win_prob`` is 1 on sure winners,
    ``open_seats / len(boundary_ties)`` on the tied ones, 0 elsewhere, and
    always sums to exactly the number of seats.
    """

    win_prob: Tuple[Fraction, ...]
    sure_winners: FrozenSet[int]
    boundary_ties: FrozenSet[int]
    open_seats: int

    def expected_utility(self, utilities: UtilityFunction) -> Fraction:
        return sum(
            (p * micro_to_fraction(u) for p, u in zip(self.win_prob, utilities.micro)),
            Fraction(0),
        )


def validate_ballot(state: ElectionState, ballot: Ballot) -> None:
    for c in ballot:
        if not isinstance(c, int) or not 0 <= c < state.num_candidates:
            raise InvalidBallotError(
                f"ballot member {c!r} is not a candidate index of this election"
            )


def apply_ballot(state: ElectionState, ballot: Ballot) -> ElectionState:
    """Return a copy of the state with one approval added per ballot member."""
    validate_ballot(state, ballot)
    new_tallies = tuple(
        t + (1 if c in ballot else 0) for c, t in enumerate(state.tallies)
    )
    return replace(state, tallies=new_tallies)


def winners_lex(state: ElectionState) -> FrozenSet[int]:
    """The winning committee under lexicographic tie-breaking.

    Candidates are ranked by tally, ties by the priority order; the top
    ``seats`` candidates win.  Deterministic, so the result is a plain set.
    """
    if not isinstance(state.tiebreak, Lexicographic):
        raise ValueError("winners_lex needs a state with a lexicographic tie-break")
    rank = {c: pos for pos, c in enumerate(state.tiebreak.priority)}
    order = sorted(range(state.num_candidates), key=lambda c: (-state.tallies[c], rank[c]))
    return frozenset(order[: state.seats])


def outcome_utility(winners: Iterable[int], utilities: UtilityFunction) -> Fraction:
    """Sum of the focal voter's utilities over a winning committee."""
    return micro_to_fraction(utilities.total_micro(winners))


def outcome_distribution(state: ElectionState) -> OutcomeDistribution:
    """Win probabilities when boundary ties are broken uniformly at random.

    Let t be the k-th highest tally.  Everyone above t wins surely; the
    candidates tied at t share the remaining ``open_seats`` seats, each with
    probability ``open_seats / (number tied)``.  By symmetry this equals the
    marginal of a uniform draw over all maximal-score committees, which is
    what the exhaustive oracle in the test suite checks.
    """
    m = state.num_candidates
    k = state.seats
    if k == 0:
        zero = Fraction(0)
        return OutcomeDistribution((zero,) * m, frozenset(), frozenset(), 0)
    threshold = sorted(state.tallies, reverse=True)[k - 1]
    sure = frozenset(c for c in range(m) if state.tallies[c] > threshold)
    tied = frozenset(c for c in range(m) if state.tallies[c] == threshold)
    open_seats = k - len(sure)
    tie_prob = Fraction(open_seats, len(tied))
    probs = tuple(
        Fraction(1) if c in sure else tie_prob if c in tied else Fraction(0)
        for c in range(m)
    )
    return OutcomeDistribution(probs, sure, tied, open_seats)


def expected_outcome_utility(state: ElectionState, utilities: UtilityFunction) -> Fraction:
    """Expected utility of the state's outcome under its own tie-break rule.

    Lexicographic states resolve to a single committee; random states average
    over the tied committees in closed form.
    """
    if len(utilities) != state.num_candidates:
        raise ValueError("utility vector length must match the candidate count")
    if isinstance(state.tiebreak, Lexicographic):
        return outcome_utility(winners_lex(state), utilities)
    dist = outcome_distribution(state)
    n_tied = len(dist.boundary_ties)
    sure_micro = utilities.total_micro(dist.sure_winners)
    if not n_tied:
        return micro_to_fraction(sure_micro)
    tied_micro = utilities.total_micro(dist.boundary_ties)
    # Single Fraction construction keeps this cheap on the hot enumeration path.
    return Fraction(sure_micro * n_tied + dist.open_seats * tied_micro, SCALE * n_tied)


def all_ballots(num_candidates: int) -> Iterable[Ballot]:
    """Every subset of candidates, smallest first, lexicographic within size."""
    for size in range(num_candidates + 1):
        for combo in itertools.combinations(range(num_candidates), size):
            yield frozenset(combo)
