"""Ballot construction heuristics, exhaustive best response, and a classifier.

The heuristics build ballots from the voter's utilities and the public
tallies.  ``best_response`` searches all ``2**m`` ballots for the ones with
maximal expected utility.  ``classify_ballot`` runs the comparison the other
way: given an observed ballot, report every strategy that produces it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from .core import (
    Ballot,
    ElectionState,
    Lexicographic,
    UtilityFunction,
    all_ballots,
    validate_ballot,
)
from .exact import Number, exact_fraction
from .uncertainty import CapacityError, FutureModel, expected_utility

#: Exhaustive ballot search is 2**m; refuse beyond this many candidates.
MAX_SEARCH_CANDIDATES = 25

#: Trivial-utility threshold used by the truth* variant.
DEFAULT_EPSILON = Fraction(1, 100)

# Classifier label kinds.
TRUTHFUL = "truthful"
TRUTH_STAR = "truth*"
TAKE_X_BEST = "take-x-best"
FOLLOW_THE_LEADER = "follow-the-leader"
LEADER_PLUS_BEST = "leader-plus-best"
OPTIMAL = "optimal"
ABSTAIN = "abstain"
OTHER = "other"


def _priority_rank(priority: Optional[Sequence[int]], m: int) -> Dict[int, int]:
    if priority is None:
        return {c: c for c in range(m)}
    if sorted(priority) != list(range(m)):
        raise ValueError("priority must be a permutation of all candidate indices")
    return {c: pos for pos, c in enumerate(priority)}


def truthful(utilities: UtilityFunction) -> Ballot:
    """Approve exactly the candidates with positive utility."""
    return frozenset(c for c, micro in enumerate(utilities.micro) if micro > 0)


def truthful_nontrivial(utilities: UtilityFunction, epsilon: Number = DEFAULT_EPSILON) -> Ballot:
    """Approve the candidates whose utility exceeds ``epsilon`` (truth*).

    With ``epsilon=0`` this is exactly :func:`truthful`.
    """
    eps = exact_fraction(epsilon)
    if eps < 0:
        raise ValueError(f"epsilon must be non-negative, got {eps}")
    return frozenset(c for c in range(len(utilities)) if utilities.value(c) > eps)


def take_x_best(
    utilities: UtilityFunction,
    x: int,
    priority: Optional[Sequence[int]] = None,
    *,
    strict: bool = False,
) -> Ballot:
    """Approve the ``x`` positive-utility candidates with the highest utility.

    Utility ties are broken by ``priority`` (candidate index order when not
    given).  In strict mode ``x`` must stay below the number of
    positive-utility candidates, so the ballot never coincides with the
    truthful one; permissive mode allows ``x`` equal to that number.
    """
    positives = [c for c, micro in enumerate(utilities.micro) if micro > 0]
    limit = len(positives) - 1 if strict else len(positives)
    if not 1 <= x <= limit:
        bound = "fewer than" if strict else "at most"
        raise ValueError(
            f"x must be at least 1 and {bound} the number of positive-utility "
            f"candidates ({len(positives)}); got {x}"
        )
    rank = _priority_rank(priority, len(utilities))
    positives.sort(key=lambda c: (-utilities.micro[c], rank[c]))
    return frozenset(positives[:x])


def follow_the_leader(state: ElectionState) -> Ballot:
    """Approve every candidate currently holding the highest tally."""
    if state.num_candidates == 0:
        return frozenset()
    top = max(state.tallies)
    return frozenset(c for c, t in enumerate(state.tallies) if t == top)


def leader_plus_best(
    state: ElectionState,
    utilities: UtilityFunction,
    priority: Optional[Sequence[int]] = None,
) -> FrozenSet[Ballot]:
    """Every ballot of the form: some current leaders plus the best candidate.

    Returns the family ``{L | {best} : L a non-empty subset of leaders}``
    where ``best`` is the single highest-utility candidate.  The family is a
    set, so members that coincide (the best candidate may itself lead) appear
    once.  Empty when no candidate has positive utility.
    """
    if not any(micro > 0 for micro in utilities.micro):
        return frozenset()
    (best,) = take_x_best(utilities, 1, priority)
    leaders = sorted(follow_the_leader(state))
    family = set()
    for size in range(1, len(leaders) + 1):
        for subset in itertools.combinations(leaders, size):
            family.add(frozenset(subset) | {best})
    return frozenset(family)


@dataclass(frozen=True)
class BestResponse:
    """Result of an exhaustive ballot search.

    ``ballots`` is the full argmax set, ``canonical`` a deterministic
    representative (fewest approvals, then earliest in index order).
    """

    ballots: FrozenSet[Ballot]
    expected_utility: Fraction
    canonical: Ballot


def canonical_ballot(ballots: FrozenSet[Ballot]) -> Ballot:
    """Deterministic representative: fewest approvals, then index order."""
    return min(ballots, key=lambda b: (len(b), tuple(sorted(b))))


def best_response(
    state: ElectionState,
    utilities: UtilityFunction,
    model: Optional[FutureModel] = None,
    *,
    max_candidates: int = MAX_SEARCH_CANDIDATES,
) -> BestResponse:
    """Search all ballots for the maximal expected utility.

    The expectation runs under the state's own tie-break rule and the given
    future-voter model (``None`` means no voters remain).  All ``2**m``
    ballots are evaluated, so the search refuses elections beyond
    ``max_candidates`` candidates.
    """
    m = state.num_candidates
    if m > max_candidates:
        raise CapacityError(
            f"exhaustive search evaluates 2**m ballots; {m} candidates exceed "
            f"the cap of {max_candidates}"
        )
    if model is None:
        model = FutureModel(0)
    best_value: Optional[Fraction] = None
    argmax = []
    for ballot in all_ballots(m):
        value = expected_utility(state, ballot, utilities, model)
        if best_value is None or value > best_value:
            best_value = value
            argmax = [ballot]
        elif value == best_value:
            argmax.append(ballot)
    ballots = frozenset(argmax)
    return BestResponse(ballots, best_value, canonical_ballot(ballots))


@dataclass(frozen=True)
class StrategyLabel:
    """One classifier label, e.g. ``truthful`` or ``take-x-best(2)``."""

    kind: str
    x: Optional[int] = None

    def __str__(self) -> str:
        if self.x is not None:
            return f"{self.kind}({self.x})"
        return self.kind


@dataclass(frozen=True)
class ClassificationResult:
    """All strategy labels matching one ballot; never empty."""

    labels: FrozenSet[StrategyLabel]

    def strings(self) -> Tuple[str, ...]:
        return tuple(sorted(str(label) for label in self.labels))

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, kind: str) -> bool:
        return any(label.kind == kind for label in self.labels)


def classify_ballot(
    state: ElectionState,
    utilities: UtilityFunction,
    ballot: Ballot,
    *,
    epsilon: Number = DEFAULT_EPSILON,
) -> ClassificationResult:
    """Report every strategy that produces ``ballot`` in this election.

    Labels may overlap (a ballot can be optimal and a heuristic at once).
    The optimality test is exhaustive best response with no remaining
    voters under the state's own tie-break rule; it is suppressed when every
    ballot is optimal, which happens exactly when no single vote can change
    the outcome.  ``truth*`` is reported only when it differs from the
    truthful ballot, and ``take-x-best`` only for ballots short of the full
    truthful one, so the labels stay informative.
    """
    validate_ballot(state, ballot)
    labels = set()
    truth = truthful(utilities)
    if ballot == truth:
        labels.add(StrategyLabel(TRUTHFUL))
    star = truthful_nontrivial(utilities, epsilon)
    if star != truth and ballot == star:
        labels.add(StrategyLabel(TRUTH_STAR))
    priority = (
        state.tiebreak.priority if isinstance(state.tiebreak, Lexicographic) else None
    )
    positives = sum(1 for micro in utilities.micro if micro > 0)
    for x in range(1, positives + 1):
        candidate = take_x_best(utilities, x, priority)
        if candidate != truth and ballot == candidate:
            labels.add(StrategyLabel(TAKE_X_BEST, x))
    if ballot and ballot <= follow_the_leader(state):
        labels.add(StrategyLabel(FOLLOW_THE_LEADER))
    if ballot in leader_plus_best(state, utilities, priority):
        labels.add(StrategyLabel(LEADER_PLUS_BEST))
    response = best_response(state, utilities)
    if len(response.ballots) < 2**state.num_candidates and ballot in response.ballots:
        labels.add(StrategyLabel(OPTIMAL))
    if not ballot:
        labels.add(StrategyLabel(ABSTAIN))
    if not labels:
        labels.add(StrategyLabel(OTHER))
    return ClassificationResult(frozenset(labels))
