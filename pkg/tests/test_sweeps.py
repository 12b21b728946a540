"""Strategy panels, r-sweeps, and the CSV contract."""

from fractions import Fraction

import pytest

from avstrat import (
    FutureModel,
    RANDOM_UNIFORM,
    best_response,
    builtin,
    robust_best_ballot,
    static_best_ballot,
    strategy_panel,
    sweep,
    sweep_csv_text,
    write_sweep_csv,
)


def names(ballot):
    return "".join("ABCDE"[c] for c in sorted(ballot))


class TestStrategyPanel:
    def test_s1_panel_has_no_truth_star(self):
        panel = strategy_panel(builtin("s1"), 2)
        assert [label for label, _ in panel] == [
            "truthful",
            "take-x-best(1)",
            "take-x-best(2)",
            "max*",
        ]

    def test_s2_panel_includes_truth_star(self):
        panel = dict(strategy_panel(builtin("s2"), 3))
        assert set(panel) == {
            "truthful",
            "truth*",
            "take-x-best(1)",
            "take-x-best(2)",
            "max*",
        }
        assert names(panel["truthful"]) == "ABCE"
        assert names(panel["truth*"]) == "ABE"

    def test_s3_three_seats_max_star_is_single_best(self):
        panel = dict(strategy_panel(builtin("s3"), 3))
        assert panel["max*"] == panel["take-x-best(1)"]
        assert names(panel["max*"]) == "E"

    def test_s4_max_star_approves_everything_positive_or_tied(self):
        for seats in (2, 3):
            panel = dict(strategy_panel(builtin("s4"), seats))
            assert names(panel["max*"]) == "ABCE"


class TestRobustSelection:
    def test_contrast_with_canonical_argmax(self):
        state = builtin("s4").state(2, RANDOM_UNIFORM)
        utilities = builtin("s4").utilities
        response = best_response(state, utilities, FutureModel(0))
        assert names(response.canonical) == "CE"
        robust = robust_best_ballot(state, utilities, FutureModel(0))
        assert names(robust) == "ABCE"
        assert robust in response.ballots

    def test_static_best_for_s1(self):
        state = builtin("s1").state(2, RANDOM_UNIFORM)
        assert names(static_best_ballot(state, builtin("s1").utilities)) == "E"


class TestSweep:
    def test_row_counts(self):
        rows = sweep(builtin("s1"), 2, range(4))
        # 4 panel strategies + max, 4 voter counts each.
        assert len(rows) == 20
        rows = sweep(builtin("s2"), 2, range(4))
        assert len(rows) == 24

    def test_rows_sorted_and_deduplicated(self):
        rows = sweep(builtin("s1"), 2, [2, 0, 2, 1])
        keys = [(row.strategy, row.remaining_voters) for row in rows]
        assert keys == sorted(keys)
        assert len(keys) == len(set(keys))

    def test_max_dominates_everything(self):
        for sid in ("s1", "s2", "s3", "s4", "s4-design"):
            for seats in (2, 3):
                rows = sweep(builtin(sid), seats, range(3))
                best = {
                    row.remaining_voters: row.expected_utility
                    for row in rows
                    if row.strategy == "max"
                }
                for row in rows:
                    assert row.expected_utility <= best[row.remaining_voters], (
                        sid,
                        seats,
                        row,
                    )

    def test_values_stay_within_utility_bounds(self):
        for sid in ("s1", "s4"):
            utilities = builtin(sid).utilities
            low = sum(min(u, 0) for u in utilities.values())
            high = sum(max(u, 0) for u in utilities.values())
            for row in sweep(builtin(sid), 2, range(4)):
                assert low <= row.expected_utility <= high

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            sweep(builtin("s1"), 2, [0, -1])
        with pytest.raises(ValueError):
            sweep(builtin("s1"), 2, [0.5])

    def test_probability_threading(self):
        rows = sweep(builtin("s1"), 2, [1], approval_prob="1/4")
        assert all(row.approval_prob == Fraction(1, 4) for row in rows)


class TestCsv:
    def test_header_and_formatting(self):
        rows = sweep(builtin("s1"), 2, [0, 1])
        text = sweep_csv_text(rows)
        lines = text.splitlines()
        assert lines[0] == "scenario,k,strategy,r,p,expected_utility"
        assert len(lines) == 1 + len(rows)
        first = lines[1].split(",")
        assert first[0] == "s1"
        assert first[1] == "2"
        assert first[4] == "0.5"
        # Utilities always carry six decimals.
        assert all(len(line.rsplit(".", 1)[1]) == 6 for line in lines[1:])

    def test_max_row_values(self):
        rows = sweep(builtin("s4"), 2, [0])
        by_strategy = {row.strategy: row for row in rows}
        assert by_strategy["max"].expected_utility == Fraction(1, 4)
        assert by_strategy["max*"].expected_utility == Fraction(1, 4)

    def test_write_returns_row_count(self, tmp_path):
        rows = sweep(builtin("s1"), 2, [0])
        path = tmp_path / "out.csv"
        assert write_sweep_csv(rows, path) == len(rows)
        assert path.read_text(encoding="utf-8") == sweep_csv_text(rows)

    def test_deterministic_bytes(self, tmp_path):
        rows = sweep(builtin("s2"), 3, range(3))
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        write_sweep_csv(rows, a)
        write_sweep_csv(sweep(builtin("s2"), 3, range(3)), b)
        assert a.read_bytes() == b.read_bytes()
