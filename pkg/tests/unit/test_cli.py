"""Unit tests for the command line interface."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from logfold.cli.commands import main
from logfold.eventlog.reader import parse_csv


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def edge_list(tmp_path: Path) -> Path:
    path = tmp_path / "handover.csv"
    path.write_text(
        "John,Sue,0.9\nJohn,Mike,0.2\nJohn,Carol,0.2\nMike,Carol,1.0\nPete,Clare,0.6\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def generated_csv(runner: CliRunner, tmp_path: Path) -> Path:
    path = tmp_path / "sepsis.csv"
    result = runner.invoke(main, ["generate", "--cases", "60", "--seed", "5", "--output", str(path)])
    assert result.exit_code == 0, result.output
    return path


class TestGenerate:
    """Test cases for the generate command."""

    def test_writes_log(self, generated_csv: Path) -> None:
        """Test that the generated CSV parses back."""
        log = parse_csv(generated_csv)
        assert len(log) == 60
        assert "IV Antibiotics" in log.activities

    def test_noise_activity(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test the noise activity option."""
        path = tmp_path / "noisy.csv"
        result = runner.invoke(main, ["generate", "--cases", "5", "--noise-activity", "Noise", "-o", str(path)])
        assert result.exit_code == 0
        assert "Noise" in parse_csv(path).activities

    def test_missing_output(self, runner: CliRunner) -> None:
        """Test that --output is required."""
        result = runner.invoke(main, ["generate"])
        assert result.exit_code == 2


class TestDiscoverAndCommunities:
    """Test cases for the discover and communities commands."""

    def test_discover(self, runner: CliRunner, example_csv: Path, tmp_path: Path) -> None:
        """Test that the mined net is written as JSON."""
        result = runner.invoke(main, ["discover", "-i", str(example_csv), "-o", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output
        data = json.loads((tmp_path / "out" / "gspn.json").read_text(encoding="utf-8"))
        assert {t["label"] for t in data["transitions"]} == set("ABCDE")

    def test_discover_degenerate_log(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a library error exits 1 with a stage tag."""
        path = tmp_path / "flat.csv"
        path.write_text(
            "case_id,activity,resource,timestamp\nc1,a,r,2024-01-01T00:00:00Z\nc1,a,r,2024-01-01T00:01:00Z\n",
            encoding="utf-8",
        )
        result = runner.invoke(main, ["discover", "-i", str(path), "-o", str(tmp_path / "out")])
        assert result.exit_code == 1
        assert "[discover]" in result.output

    def test_missing_input_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a non-existent input is a usage error."""
        result = runner.invoke(main, ["discover", "-i", str(tmp_path / "none.csv")])
        assert result.exit_code == 2

    def test_communities_from_edge_list(self, runner: CliRunner, edge_list: Path, tmp_path: Path) -> None:
        """Test Louvain on a given edge list."""
        out = tmp_path / "out"
        result = runner.invoke(main, ["communities", "--social-network", str(edge_list), "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert "C1: John, Sue" in result.output
        assert "C2: Mike, Carol" in result.output
        assert "C3: Pete, Clare" in result.output
        assert (out / "communities.json").exists()

    def test_points(self, runner: CliRunner, example_csv: Path) -> None:
        """Test one prediction point per community of the example log."""
        result = runner.invoke(main, ["points", "-i", str(example_csv)])
        assert result.exit_code == 0, result.output
        lines = [line for line in result.output.splitlines() if "\t" in line]
        assert lines
        assert all(line.split("\t")[0] in set("ABCDE") for line in lines)


class TestSimplifyAndEvaluate:
    """Test cases for the simplify and evaluate commands."""

    def test_simplify_named_fold(self, runner: CliRunner, generated_csv: Path, tmp_path: Path) -> None:
        """Test folding one self-loop without assessment."""
        out = tmp_path / "out"
        result = runner.invoke(
            main,
            ["simplify", "-i", str(generated_csv), "--fold", "SelfLoop:CRP", "--points", "IV Antibiotics", "-o", str(out)],
        )
        assert result.exit_code == 0, result.output
        simplified = parse_csv(out / "simplified_log.csv")
        assert simplified.event_count < parse_csv(generated_csv).event_count
        manifest = json.loads((out / "fold_manifest.json").read_text(encoding="utf-8"))
        assert [f["replaced"] for f in manifest["folds"]] == [["CRP"]]

    def test_simplify_unknown_fold(self, runner: CliRunner, generated_csv: Path, tmp_path: Path) -> None:
        """Test that an unknown candidate name is a usage error."""
        result = runner.invoke(
            main, ["simplify", "-i", str(generated_csv), "--fold", "Sequence:Nope", "-o", str(tmp_path / "out")]
        )
        assert result.exit_code == 2
        assert "unknown candidates" in result.output

    def test_evaluate(self, runner: CliRunner, generated_csv: Path) -> None:
        """Test MAE output per requested point."""
        result = runner.invoke(main, ["evaluate", "-i", str(generated_csv), "--points", "IV Antibiotics"])
        assert result.exit_code == 0, result.output
        assert "IV Antibiotics\tMAE " in result.output

    def test_evaluate_needs_points(self, runner: CliRunner, generated_csv: Path) -> None:
        """Test that evaluate without points is a usage error."""
        result = runner.invoke(main, ["evaluate", "-i", str(generated_csv)])
        assert result.exit_code == 2

    def test_empty_points_list(self, runner: CliRunner, generated_csv: Path) -> None:
        """Test that a blank --points value is rejected."""
        result = runner.invoke(main, ["evaluate", "-i", str(generated_csv), "--points", " , "])
        assert result.exit_code == 2


class TestConfigurationErrors:
    """Test cases for configuration handling at the CLI."""

    def test_invalid_config_value(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that an invalid configuration exits 2."""
        config = tmp_path / "config.yaml"
        config.write_text("split:\n  fraction: 2\n", encoding="utf-8")
        result = runner.invoke(main, ["discover", "-c", str(config)])
        assert result.exit_code == 2
        assert "Invalid configuration" in result.output

    def test_negative_budget_slack(self, runner: CliRunner) -> None:
        """Test that --budget-g must be non-negative."""
        result = runner.invoke(main, ["optimize", "--budget-g", "-1"])
        assert result.exit_code == 2

    def test_help_lists_commands(self, runner: CliRunner) -> None:
        """Test the command group help."""
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("generate", "discover", "communities", "points", "simplify", "optimize", "run", "evaluate"):
            assert command in result.output
