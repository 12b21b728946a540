"""Exact expected utilities when unknown voters will still vote.

The focal voter casts a ballot knowing the current tallies but not the
``r`` ballots still to come.  Each future voter approves each candidate
independently with probability ``p``, so every candidate's tally increment
is an independent Binomial(r, p) draw.  Expected utility is computed by
enumerating all ``(r+1)**m`` increment vectors with their exact
product-of-binomials probabilities; the test suite proves this equals the
brute force over all ``(2**m)**r`` future ballot combinations.

Everything is exact rational arithmetic.  The enumeration refuses inputs
beyond its capacity instead of falling back to sampling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .core import (
    Ballot,
    ElectionState,
    Tiebreak,
    UtilityFunction,
    apply_ballot,
    expected_outcome_utility,
    validate_ballot,
)
from .exact import Number, exact_fraction

#: Largest number of remaining voters enumerated by default.
DEFAULT_MAX_REMAINING = 8
#: Largest candidate count enumerated by default.
DEFAULT_MAX_CANDIDATES = 12


class CapacityError(ValueError):
    """The requested exact enumeration is too large to carry out."""


@dataclass(frozen=True)
class FutureModel:
    """``remaining_voters`` i.i.d. voters, each approving each candidate
    independently with probability ``approval_prob``.

    ``approval_prob`` accepts anything :func:`~avstrat.exact.exact_fraction`
    does and is stored as an exact :class:`~fractions.Fraction`.
    """

    remaining_voters: int
    approval_prob: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if not isinstance(self.remaining_voters, int) or self.remaining_voters < 0:
            raise ValueError("remaining_voters must be a non-negative integer")
        prob = exact_fraction(self.approval_prob)
        if not 0 <= prob <= 1:
            raise ValueError(f"approval_prob must lie in [0, 1], got {prob}")
        object.__setattr__(self, "approval_prob", prob)


@dataclass(frozen=True)
class IncrementDistribution:
    """Joint distribution of per-candidate tally increments.

    ``entries`` pairs each increment vector in ``{0..r}**m`` with its exact
    probability; zero-probability vectors (which only arise when the
    approval probability is 0 or 1) are omitted.  Probabilities sum to
    exactly 1.
    """

    remaining_voters: int
    num_candidates: int
    entries: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def total_probability(self) -> Fraction:
        return sum((p for _, p in self.entries), Fraction(0))


def _binomial_weights(model: FutureModel) -> Tuple[List[Tuple[int, int]], int]:
    """Unnormalized Binomial(r, p) weights for one candidate's increment.

    Returns ``(pairs, denominator)`` where each pair is ``(increment,
    integer weight)`` and weight / denominator is the exact probability.
    Zero weights are dropped.
    """
    r = model.remaining_voters
    a = model.approval_prob.numerator
    b = model.approval_prob.denominator
    pairs = []
    for v in range(r + 1):
        w = math.comb(r, v) * a**v * (b - a) ** (r - v)
        if w:
            pairs.append((v, w))
    return pairs, b**r


def _check_capacity(
    remaining: int, num_candidates: int, max_remaining: int, max_candidates: int
) -> None:
    if remaining > max_remaining:
        raise CapacityError(
            f"{remaining} remaining voters exceed the exact-enumeration cap "
            f"of {max_remaining}; pass a larger max_remaining to accept "
            f"(r+1)**m terms"
        )
    # With no voters left there is a single increment vector, so the
    # candidate cap has nothing to bound.
    if remaining and num_candidates > max_candidates:
        raise CapacityError(
            f"{num_candidates} candidates exceed the exact-enumeration cap "
            f"of {max_candidates}; pass a larger max_candidates to accept "
            f"(r+1)**m terms"
        )


def increment_distribution(
    model: FutureModel,
    num_candidates: int,
    *,
    max_remaining: int = DEFAULT_MAX_REMAINING,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> IncrementDistribution:
    """Enumerate every joint increment vector with its exact probability.

    Candidates are independent, so the joint probability of a vector is the
    product of per-candidate Binomial(r, p) terms.  Vectors are emitted in
    ascending lexicographic order.
    """
    if num_candidates < 0:
        raise ValueError("num_candidates must be non-negative")
    _check_capacity(model.remaining_voters, num_candidates, max_remaining, max_candidates)
    pairs, denom = _binomial_weights(model)
    joint_denom = denom**num_candidates
    entries = []
    for combo in itertools.product(pairs, repeat=num_candidates):
        weight = math.prod(w for _, w in combo)
        vector = tuple(v for v, _ in combo)
        entries.append((vector, Fraction(weight, joint_denom)))
    return IncrementDistribution(model.remaining_voters, num_candidates, tuple(entries))


@lru_cache(maxsize=None)
def _tally_utility(
    tallies: Tuple[int, ...],
    seats: int,
    micro: Tuple[int, ...],
    tiebreak: Tiebreak,
) -> Fraction:
    # Pure memo: the same final tallies recur across ballots and increments.
    state = ElectionState(
        labels=tuple(str(c) for c in range(len(tallies))),
        tallies=tallies,
        seats=seats,
        tiebreak=tiebreak,
    )
    return expected_outcome_utility(state, UtilityFunction(micro))


def expected_utility(
    state: ElectionState,
    ballot: Ballot,
    utilities: UtilityFunction,
    model: FutureModel,
    *,
    max_remaining: int = DEFAULT_MAX_REMAINING,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> Fraction:
    """Exact expected utility of casting ``ballot`` before ``model``'s voters.

    Averages the outcome utility (under the state's own tie-break rule)
    over every possible set of future tally increments.  With no remaining
    voters this reduces, bit for bit, to
    :func:`~avstrat.core.expected_outcome_utility` after
    :func:`~avstrat.core.apply_ballot`.
    """
    validate_ballot(state, ballot)
    if len(utilities) != state.num_candidates:
        raise ValueError("utility vector length must match the candidate count")
    base = apply_ballot(state, ballot)
    if model.remaining_voters == 0:
        return expected_outcome_utility(base, utilities)
    m = state.num_candidates
    _check_capacity(model.remaining_voters, m, max_remaining, max_candidates)
    pairs, denom = _binomial_weights(model)
    total = Fraction(0)
    for combo in itertools.product(pairs, repeat=m):
        weight = math.prod(w for _, w in combo)
        final = tuple(t + v for t, (v, _) in zip(base.tallies, combo))
        total += weight * _tally_utility(final, state.seats, utilities.micro, state.tiebreak)
    return total / denom**m
