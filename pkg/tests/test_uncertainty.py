"""Future-voter model, increment enumeration, and expected utilities."""

from fractions import Fraction

import pytest

from avstrat import (
    CapacityError,
    ElectionState,
    FutureModel,
    RANDOM_UNIFORM,
    UtilityFunction,
    apply_ballot,
    builtin,
    expected_outcome_utility,
    expected_utility,
    increment_distribution,
)

from oracles import future_expected_utility

U1 = builtin("s1").utilities
U4 = builtin("s4").utilities


class TestFutureModel:
    def test_defaults(self):
        model = FutureModel(2)
        assert model.remaining_voters == 2
        assert model.approval_prob == Fraction(1, 2)

    def test_string_probability(self):
        assert FutureModel(1, "1/3").approval_prob == Fraction(1, 3)

    def test_negative_voters_rejected(self):
        with pytest.raises(ValueError):
            FutureModel(-1)

    def test_probability_out_of_range(self):
        with pytest.raises(ValueError):
            FutureModel(1, Fraction(3, 2))
        with pytest.raises(ValueError):
            FutureModel(1, -0.1)


class TestIncrementDistribution:
    def test_zero_voters_is_point_mass(self):
        dist = increment_distribution(FutureModel(0), 3)
        entries = list(dist)
        assert len(entries) == 1
        assert entries[0] == ((0, 0, 0), Fraction(1))

    def test_single_candidate_two_voters(self):
        dist = increment_distribution(FutureModel(2, Fraction(1, 2)), 1)
        assert dict(dist) == {
            (0,): Fraction(1, 4),
            (1,): Fraction(1, 2),
            (2,): Fraction(1, 4),
        }

    def test_one_voter_five_candidates_uniform(self):
        dist = increment_distribution(FutureModel(1, Fraction(1, 2)), 5)
        entries = list(dist)
        assert len(entries) == 32
        assert all(prob == Fraction(1, 32) for _, prob in entries)

    def test_degenerate_probabilities_skip_zero_entries(self):
        always = increment_distribution(FutureModel(2, 1), 2)
        assert dict(always) == {(2, 2): Fraction(1)}
        never = increment_distribution(FutureModel(2, 0), 2)
        assert dict(never) == {(0, 0): Fraction(1)}

    def test_total_probability_exactly_one(self):
        for r, p in ((1, Fraction(1, 3)), (3, Fraction(2, 7)), (2, Fraction(4, 5))):
            dist = increment_distribution(FutureModel(r, p), 3)
            assert dist.total_probability() == 1

    def test_capacity_caps(self):
        with pytest.raises(CapacityError):
            increment_distribution(FutureModel(9), 2)
        with pytest.raises(CapacityError):
            increment_distribution(FutureModel(1), 13)
        # Explicit overrides lift the defaults.
        dist = increment_distribution(FutureModel(9, 1), 2, max_remaining=9)
        assert dict(dist) == {(9, 9): Fraction(1)}

    def test_zero_voters_ignores_candidate_cap(self):
        dist = increment_distribution(FutureModel(0), 20)
        assert len(dist) == 1


class TestExpectedUtility:
    def test_zero_voters_reduces_to_static_case(self):
        for sid in ("s1", "s2", "s3", "s4"):
            scenario = builtin(sid)
            for seats in (2, 3):
                for tiebreak in (scenario.state(seats).tiebreak, RANDOM_UNIFORM):
                    state = scenario.state(seats, tiebreak)
                    ballot = frozenset({1, 4})
                    value = expected_utility(
                        state, ballot, scenario.utilities, FutureModel(0)
                    )
                    static = expected_outcome_utility(
                        apply_ballot(state, ballot), scenario.utilities
                    )
                    assert value == static

    def test_single_positive_candidate_ballot(self):
        state = builtin("s4").state(3, RANDOM_UNIFORM)
        value = expected_utility(state, frozenset({4}), U4, FutureModel(0))
        assert value == Fraction(-3, 4)

    def test_truthful_with_all_tallies_tied(self):
        # Approving A, B, E lifts the board to (4, 4, 4, 3, 4); the four
        # leaders split two seats, so each pair of them is equally likely.
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        value = expected_utility(state, frozenset({0, 1, 4}), U1, FutureModel(0))
        assert value == Fraction(1, 5)
        pair_sum = sum(
            U1.value(a) + U1.value(b)
            for a, b in ((0, 1), (0, 2), (0, 4), (1, 2), (1, 4), (2, 4))
        )
        assert value == pair_sum / 6

    def test_matches_per_voter_oracle(self):
        state = builtin("s2").state(2, RANDOM_UNIFORM)
        for ballot in (frozenset(), frozenset({4}), frozenset({0, 1, 4})):
            for r in (1, 2):
                fast = expected_utility(state, ballot, U1, FutureModel(r))
                slow = future_expected_utility(state, ballot, U1, r, Fraction(1, 2))
                assert fast == slow

    def test_zero_probability_future_is_static(self):
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        ballot = frozenset({4})
        base = expected_utility(state, ballot, U1, FutureModel(0))
        for r in (1, 4, 8):
            assert expected_utility(state, ballot, U1, FutureModel(r, 0)) == base

    def test_certain_approval_shifts_every_tally(self):
        scenario = builtin("s1")
        state = scenario.state(2, RANDOM_UNIFORM)
        ballot = frozenset({4})
        for r in (1, 3):
            shifted = ElectionState(
                scenario.candidates,
                tuple(t + r for t in scenario.base_tallies),
                2,
                RANDOM_UNIFORM,
            )
            assert expected_utility(
                state, ballot, U1, FutureModel(r, 1)
            ) == expected_outcome_utility(apply_ballot(shifted, ballot), U1)

    def test_capacity_error_propagates(self):
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        with pytest.raises(CapacityError):
            expected_utility(state, frozenset(), U1, FutureModel(9))

    def test_utility_length_checked(self):
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        short = UtilityFunction.from_values((1, 2))
        with pytest.raises(ValueError):
            expected_utility(state, frozenset(), short, FutureModel(0))

    def test_invalid_ballot_rejected(self):
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        with pytest.raises(ValueError):
            expected_utility(state, frozenset({9}), U1, FutureModel(0))
