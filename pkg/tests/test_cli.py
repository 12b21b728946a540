"""End-to-end command-line checks against frozen golden outputs."""

import json
import subprocess
import sys
from pathlib import Path

from avstrat import builtin, load_scenario

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "avstrat.cli", *args],
        capture_output=True,
        text=True,
    )


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


class TestGoldenOutputs:
    def test_eval_s1_k2(self):
        result = run_cli("eval", "--scenario", "s1", "--k", "2")
        assert result.returncode == 0
        assert result.stdout == golden("eval_s1_k2.txt")

    def test_eval_s1_table(self):
        result = run_cli("eval", "--scenario", "s1", "--table")
        assert result.returncode == 0
        assert result.stdout == golden("eval_s1_table.txt")

    def test_eval_s4_table(self):
        result = run_cli("eval", "--scenario", "s4", "--table")
        assert result.returncode == 0
        assert result.stdout == golden("eval_s4_table.txt")

    def test_sweep_s1_k2_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        result = run_cli("sweep", "--scenario", "s1", "--k", "2", "--output", str(out))
        assert result.returncode == 0
        assert out.read_text(encoding="utf-8") == golden("sweep_s1_k2.csv")

    def test_classify_s2_k2(self):
        result = run_cli(
            "classify",
            "--scenario", "s2",
            "--k", "2",
            "--input", str(GOLDEN / "ballots_s2.csv"),
            "--header",
        )
        assert result.returncode == 0
        assert result.stdout == golden("classify_s2_k2.txt")

    def test_scenarios_list(self):
        result = run_cli("scenarios")
        assert result.returncode == 0
        assert result.stdout == golden("scenarios_list.txt")


class TestExitCodes:
    def test_unknown_ballot_label(self):
        result = run_cli("eval", "--scenario", "s1", "--k", "2", "--ballot", "Z")
        assert result.returncode == 2
        assert "Z" in result.stderr

    def test_unknown_scenario(self):
        result = run_cli("eval", "--scenario", "nope", "--k", "2")
        assert result.returncode == 3
        assert "not a built-in id" in result.stderr

    def test_bad_r_list(self):
        result = run_cli(
            "sweep", "--scenario", "s1", "--k", "2", "--r", "0,x", "--output", "/tmp/x.csv"
        )
        assert result.returncode == 2
        assert "comma-separated integers" in result.stderr

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        result = run_cli(
            "sweep",
            "--scenario", "s1",
            "--k", "2",
            "--output", str(blocker / "out.csv"),
        )
        assert result.returncode == 4

    def test_classify_missing_input(self, tmp_path):
        result = run_cli(
            "classify",
            "--scenario", "s1",
            "--k", "2",
            "--input", str(tmp_path / "absent.csv"),
        )
        assert result.returncode == 3
        assert "does not exist" in result.stderr

    def test_classify_bad_row_strict(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("A,B\nQ\n", encoding="utf-8")
        result = run_cli(
            "classify", "--scenario", "s1", "--k", "2", "--input", str(bad)
        )
        assert result.returncode == 2
        assert "row 2" in result.stderr

    def test_classify_bad_row_lenient(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("A,B\nQ\n", encoding="utf-8")
        result = run_cli(
            "classify",
            "--scenario", "s1",
            "--k", "2",
            "--input", str(bad),
            "--lenient",
        )
        assert result.returncode == 0
        assert "2\tQ\terror:" in result.stdout
        assert "skipped: 1" in result.stdout

    def test_eval_requires_k_or_table(self):
        result = run_cli("eval", "--scenario", "s1")
        assert result.returncode == 2
        assert "--k is required" in result.stderr

    def test_k_out_of_range(self):
        result = run_cli("best-response", "--scenario", "s1", "--k", "9")
        assert result.returncode == 2

    def test_capacity_error(self):
        result = run_cli(
            "best-response", "--scenario", "s1", "--k", "2",
            "--tiebreak", "random", "--r", "9",
        )
        assert result.returncode == 2
        assert "cap" in result.stderr


class TestBallotFlag:
    def test_abstain_row(self):
        result = run_cli("eval", "--scenario", "s1", "--k", "2", "--ballot", "")
        assert result.returncode == 0
        line = [l for l in result.stdout.splitlines() if l.startswith("given")][0]
        assert line.split() == ["given", "(none)", "0.05", "0.1"]

    def test_ballot_whitespace_tolerant(self):
        result = run_cli(
            "eval", "--scenario", "s1", "--k", "2", "--ballot", " B , E "
        )
        line = [l for l in result.stdout.splitlines() if l.startswith("given")][0]
        assert line.split() == ["given", "B,E", "0.1", "0.233333"]


class TestBestResponse:
    def test_random_tiebreak_argmax_listing(self):
        result = run_cli(
            "best-response", "--scenario", "s4", "--k", "2",
            "--tiebreak", "random", "--all",
        )
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert "expected utility: 0.25 (exact 1/4)" in lines
        assert "optimal ballots: 4" in lines
        assert "canonical: C,E" in lines
        listed = [l.strip() for l in lines if l.startswith("  ")]
        assert listed == ["C,E", "A,C,E", "B,C,E", "A,B,C,E"]

    def test_json_output(self):
        result = run_cli(
            "best-response", "--scenario", "s4", "--k", "2",
            "--tiebreak", "random", "--format", "json",
        )
        doc = json.loads(result.stdout)
        assert doc["expected_utility"] == {"exact": "1/4", "value": 0.25}
        assert doc["canonical"] == ["C", "E"]
        assert len(doc["ballots"]) == 4


class TestJsonFormats:
    def test_eval_json(self):
        result = run_cli(
            "eval", "--scenario", "s2", "--k", "3", "--format", "json"
        )
        doc = json.loads(result.stdout)
        assert doc["scenario"] == "s2"
        strategies = [row["strategy"] for row in doc["rows"]]
        assert "truth*" in strategies

    def test_classify_json(self):
        result = run_cli(
            "classify",
            "--scenario", "s2",
            "--k", "2",
            "--input", str(GOLDEN / "ballots_s2.csv"),
            "--header",
            "--format", "json",
        )
        doc = json.loads(result.stdout)
        assert doc["label_counts"]["truthful"] == 1
        assert [row["labels"] for row in doc["rows"]][1] == [
            "take-x-best(3)", "truth*",
        ]

    def test_sweep_json(self, tmp_path):
        out = tmp_path / "sweep.csv"
        result = run_cli(
            "sweep", "--scenario", "s4", "--k", "2",
            "--output", str(out), "--format", "json",
        )
        doc = json.loads(result.stdout)
        assert doc["rows"] == 20
        assert doc["max_ballots"]["0"] == ["A", "B", "C", "E"]
        panel = {entry["strategy"]: entry["ballot"] for entry in doc["panel"]}
        assert panel["max*"] == ["A", "B", "C", "E"]


class TestSweepNotes:
    def test_s4_text_reports_broad_max_ballot(self):
        import tempfile

        with tempfile.TemporaryDirectory() as tmp:
            result = run_cli(
                "sweep", "--scenario", "s4", "--k", "2",
                "--output", str(Path(tmp) / "out.csv"),
            )
        assert result.returncode == 0
        assert "r=0\tA,B,C,E" in result.stdout

    def test_deterministic_bytes(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_cli("sweep", "--scenario", "s2", "--k", "3", "--output", str(a))
        run_cli("sweep", "--scenario", "s2", "--k", "3", "--output", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestScenarioExport:
    def test_round_trip_through_export(self, tmp_path):
        out = tmp_path / "s3.json"
        result = run_cli("scenarios", "--scenario", "s3", "--output", str(out))
        assert result.returncode == 0
        assert load_scenario(out) == builtin("s3")

    def test_output_without_scenario(self, tmp_path):
        result = run_cli("scenarios", "--output", str(tmp_path / "x.json"))
        assert result.returncode == 2
        assert "--output requires --scenario" in result.stderr
