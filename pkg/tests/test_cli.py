"""Tests for CLI module."""
import json

import pytest
import yaml
from click.testing import CliRunner

from src.cli import MAX_JSON_INT, main
from src.config_parser import DEFAULT_ENUMERATION_CAP


@pytest.fixture
def runner():
    """Runner keeping stdout (results) apart from stderr (diagnostics)."""
    return CliRunner(mix_stderr=False)


def _json(result):
    return json.loads(result.stdout)


class TestCLIBasics:
    """Tests for the command group itself."""

    def test_cli_help(self, runner):
        """Test CLI help message lists the subcommands."""
        # Act
        result = runner.invoke(main, ["--help"])

        # Assert
        assert result.exit_code == 0
        assert "Usage:" in result.stdout
        for command in ("bounds", "construct", "decode", "search", "simulate", "verify"):
            assert command in result.stdout

    def test_no_subcommand_shows_help(self, runner):
        """Test running without a subcommand prints help."""
        result = runner.invoke(main, [])

        assert result.exit_code == 0
        assert "Usage:" in result.stdout

    def test_version(self, runner):
        """Test --version names the report schema."""
        result = runner.invoke(main, ["--version"])

        assert result.exit_code == 0
        assert "multiset-codes v1.0.0" in result.stdout
        assert "report schema 1" in result.stdout

    def test_unknown_subcommand_exits_1(self, runner):
        """Test usage errors exit with status 1."""
        result = runner.invoke(main, ["transcribe"])

        assert result.exit_code == 1

    def test_missing_required_option_exits_1(self, runner):
        """Test a missing option is a usage error."""
        result = runner.invoke(main, ["bounds", "--n", "4"])

        assert result.exit_code == 1
        assert "Missing option" in result.stderr

    def test_unexpected_error_exits_2(self, runner, mocker):
        """Test internal failures exit with status 2."""
        # Arrange
        build = mocker.patch("src.cli.build_code", side_effect=RuntimeError("boom"))

        # Act
        result = runner.invoke(main, ["construct", "--kind", "binary", "--n", "6", "--t", "1"])

        # Assert
        build.assert_called_once_with("binary", 6, None, 1, None, cap=DEFAULT_ENUMERATION_CAP)
        assert result.exit_code == 2
        assert "Unexpected error - boom" in result.stderr


class TestBoundsCommand:
    """Tests for the bounds subcommand."""

    def test_bounds_json(self, runner):
        """Test the report names the best bound and lists every bound."""
        # Act
        result = runner.invoke(main, ["bounds", "--n", "10", "--q", "3", "--t", "8"])

        # Assert
        assert result.exit_code == 0
        data = _json(result)
        assert data["best"] == {"name": "extremal_exact_k2_smallq", "value": 3}
        assert data["bounds"]["reiman_bound_k2"] == 3
        assert data["bounds"]["binary_exact"] == "n/a"
        assert "reports" not in data

    def test_bounds_all(self, runner):
        """Test --all adds the full report of every bound."""
        # Act
        result = runner.invoke(main, ["bounds", "--n", "10", "--q", "3", "--t", "8", "--all"])

        # Assert
        assert result.exit_code == 0
        data = _json(result)
        reports = {r["name"]: r for r in data["reports"]}
        assert set(reports) == set(data["bounds"])
        assert reports["reiman_bound_k2"]["value"] == 3
        assert reports["reiman_bound_k2"]["applicability"] == "t = n-2, n > q"
        assert reports["binary_exact"]["value"] == "n/a"

    def test_bounds_csv(self, runner):
        """Test CSV output has one name,value row per bound."""
        result = runner.invoke(main, ["--format", "csv", "bounds", "--n", "10", "--q", "3", "--t", "8"])

        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "name,value"
        assert "reiman_bound_k2,3" in lines
        assert "binary_exact,n/a" in lines

    def test_bounds_csv_all(self, runner):
        """Test CSV output with --all carries every report field."""
        result = runner.invoke(
            main, ["--format", "csv", "bounds", "--n", "10", "--q", "3", "--t", "8", "--all"]
        )

        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "name,value,applicability,n,q,t"
        assert any(line.startswith("reiman_bound_k2,3,") for line in lines)

    def test_t_above_n_exits_1(self, runner):
        """Test invalid parameters exit with status 1 and an error on stderr."""
        result = runner.invoke(main, ["bounds", "--n", "3", "--q", "3", "--t", "4"])

        assert result.exit_code == 1
        assert result.stderr.startswith("Error:")
        assert result.stdout == ""


class TestConstructAndEncode:
    """Tests for construct and encode."""

    def test_construct_cyclic(self, runner):
        """Test the cyclic code report."""
        result = runner.invoke(main, ["construct", "--kind", "cyclic", "--n", "6", "--q", "3", "--t", "2"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["kind"] == "cyclic_sidon"
        assert data["weights"] == [1, 3, 0]
        assert data["modulus"] == 7
        assert data["size"] == 4
        assert data["residue"] == 0

    def test_construct_invalid_kind_parameters(self, runner):
        """Test a sum-mod-q code cannot correct two deletions."""
        result = runner.invoke(main, ["construct", "--kind", "summod", "--n", "6", "--q", "3", "--t", "2"])

        assert result.exit_code == 1

    def test_construct_huge_sizes_are_strings(self, runner):
        """Test integers beyond 64 bits are printed as strings."""
        result = runner.invoke(main, ["construct", "--kind", "parity", "--n", "400", "--q", "20"])

        assert result.exit_code == 0
        data = _json(result)
        assert isinstance(data["space_size"], str)
        assert int(data["space_size"]) > MAX_JSON_INT

    def test_encode(self, runner):
        """Test message index 0 of the sum-mod-3 class 0."""
        result = runner.invoke(
            main, ["encode", "--kind", "summod", "--n", "4", "--q", "3", "--a", "0", "--index", "0"]
        )

        assert result.exit_code == 0
        assert _json(result) == {"index": 0, "codeword": [0, 2, 2]}

    def test_encode_out_of_range(self, runner):
        """Test an index past the code size exits with status 1."""
        result = runner.invoke(
            main, ["encode", "--kind", "summod", "--n", "4", "--q", "3", "--a", "0", "--index", "5"]
        )

        assert result.exit_code == 1

    def test_bad_residue(self, runner):
        """Test --a accepts integers or 'auto' only."""
        result = runner.invoke(main, ["construct", "--kind", "binary", "--n", "6", "--t", "1", "--a", "x"])

        assert result.exit_code == 1


class TestDecodeCommand:
    """Tests for the decode subcommand."""

    CYCLIC = ["decode", "--kind", "cyclic", "--n", "6", "--q", "3", "--t", "2", "--a", "0"]

    def test_decode_word_option(self, runner):
        """Test two deletions from a cyclic codeword are undone."""
        result = runner.invoke(main, self.CYCLIC + ["--word", "[0,2,2]"])

        assert result.exit_code == 0
        assert _json(result) == {"codeword": [1, 2, 3], "pattern": [1, 0, 1], "deletions": 2}

    def test_decode_from_stdin(self, runner):
        """Test the received word is read from stdin."""
        result = runner.invoke(main, self.CYCLIC, input="[0, 2, 2]\n")

        assert result.exit_code == 0
        assert _json(result)["codeword"] == [1, 2, 3]

    def test_decode_symbols(self, runner):
        """Test an unordered token stream."""
        result = runner.invoke(main, self.CYCLIC + ["--symbols", "[2, 1, 1, 2]"])

        assert result.exit_code == 0
        assert _json(result)["pattern"] == [1, 0, 1]

    def test_decode_too_many_deletions(self, runner):
        """Test decoding failures exit with status 1."""
        result = runner.invoke(main, self.CYCLIC + ["--word", "[0,1,2]"])

        assert result.exit_code == 1
        assert "exceed" in result.stderr

    def test_decode_without_input(self, runner):
        """Test an empty stdin is a usage error."""
        result = runner.invoke(main, self.CYCLIC, input="")

        assert result.exit_code == 1

    def test_decode_word_and_symbols(self, runner):
        """Test the two input options are mutually exclusive."""
        result = runner.invoke(main, self.CYCLIC + ["--word", "[0,2,2]", "--symbols", "[1]"])

        assert result.exit_code == 1

    def test_decode_invalid_json(self, runner):
        """Test malformed input exits with status 1."""
        result = runner.invoke(main, self.CYCLIC + ["--word", "[0,2"])

        assert result.exit_code == 1
        assert "Invalid word JSON" in result.stderr


class TestSidonCommand:
    """Tests for the sidon subcommand."""

    def test_bt_set(self, runner):
        """Test a B_2 set in Z_13."""
        result = runner.invoke(main, ["sidon", "--g", "13", "--elements", "1,3,9", "--t", "2"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["is_bt_set"] is True
        assert data["collision"] is None

    def test_not_bt_set(self, runner):
        """Test the whole of Z_3 is not a B_2 set."""
        result = runner.invoke(main, ["sidon", "--g", "3", "--elements", "0,1,2", "--t", "2"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["is_bt_set"] is False
        assert len(data["collision"]) == 2

    def test_cap_from_environment_exits_2(self, runner):
        """Test an exceeded enumeration cap exits with status 2."""
        result = runner.invoke(
            main,
            ["sidon", "--g", "100", "--elements", "1,2,3", "--t", "3"],
            env={"MULTISET_CODES_ENUM_CAP": "2"},
        )

        assert result.exit_code == 2
        assert "exceeding the cap" in result.stderr


class TestSearchCommand:
    """Tests for the search subcommand."""

    def test_search_exact(self, runner):
        """Test S_3(4, 1) is found exactly with a witness."""
        result = runner.invoke(main, ["search", "--n", "4", "--q", "3", "--t", "1"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["exact"] is True
        assert data["optimum"] >= 6
        assert len(data["witness"]) == data["optimum"]

    def test_search_over_cap(self, runner):
        """Test an exceeded search cap gives an inexact answer, not an error."""
        result = runner.invoke(main, ["search", "--n", "4", "--q", "3", "--t", "1", "--cap", "10"])

        assert result.exit_code == 0
        assert _json(result)["exact"] is False

    def test_search_cap_zero_is_honoured(self, runner):
        """Test --cap 0 is passed through rather than replaced by the default."""
        # Act
        result = runner.invoke(main, ["search", "--n", "4", "--q", "3", "--t", "1", "--cap", "0"])

        # Assert
        assert result.exit_code == 0
        data = _json(result)
        assert data["exact"] is False
        assert data["nodes"] == 0

    def test_search_without_witness(self, runner):
        """Test --no-witness drops the code from the report."""
        result = runner.invoke(main, ["search", "--n", "4", "--q", "3", "--t", "1", "--no-witness"])

        assert result.exit_code == 0
        assert "witness" not in _json(result)


class TestSimulateCommand:
    """Tests for the simulate subcommand."""

    def test_random_binary(self, runner):
        """Test a random run of a binary code has no failures."""
        result = runner.invoke(
            main,
            ["simulate", "--kind", "binary", "--n", "20", "--t", "2", "--mode", "random", "--trials", "100"],
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["schema_version"] == 1
        assert data["successes"] == 100
        assert data["failures"] == []

    def test_same_seed_same_output(self, runner):
        """Test stdout is byte-identical for a fixed seed."""
        args = ["simulate", "--kind", "cyclic", "--n", "10", "--q", "3", "--t", "2",
                "--mode", "random", "--seed", "5", "--trials", "50"]

        first = runner.invoke(main, args)
        second = runner.invoke(main, args + ["--workers", "3"])

        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout

    def test_exhaustive_beyond_capability(self, runner):
        """Test failures are reported without a failing exit status."""
        result = runner.invoke(
            main, ["simulate", "--kind", "summod", "--n", "4", "--q", "3", "--t-max", "2"]
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["mode"] == "exhaustive"
        assert data["failures"]


class TestVerifyCommand:
    """Tests for the verify subcommand."""

    @pytest.mark.parametrize("fixture", ["ternary6", "quaternary5", "distance3", "distance4"])
    def test_fixtures_pass(self, runner, fixture):
        """Test the built-in codes verify."""
        result = runner.invoke(main, ["verify", "--fixture", fixture])

        assert result.exit_code == 0
        assert _json(result)["passed"] is True

    def test_constant_code(self, runner):
        """Test the constant-word code corrects n-1 deletions."""
        result = runner.invoke(main, ["verify", "--constant", "4", "3"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["t"] == 3
        assert data["passed"] is True

    def test_words_that_fail(self, runner):
        """Test a failing verdict is a result, not an error."""
        result = runner.invoke(main, ["verify", "--t", "1", "--words", "[[2,0],[1,1]]"])

        assert result.exit_code == 0
        data = _json(result)
        assert data["passed"] is False
        assert data["agree"] is True

    def test_words_from_stdin(self, runner):
        """Test words are read from stdin."""
        result = runner.invoke(main, ["verify", "--t", "1"], input="[[4,0],[0,4]]")

        assert result.exit_code == 0
        assert _json(result)["passed"] is True

    def test_words_need_t(self, runner):
        """Test --t is required for a word list."""
        result = runner.invoke(main, ["verify", "--words", "[[2,0]]"])

        assert result.exit_code == 1


class TestBatchCommand:
    """Tests for running jobs from a configuration file."""

    def test_batch(self, runner, tmp_path):
        """Test every job runs and progress goes to stderr."""
        # Arrange
        config_file = tmp_path / ".multiset-codes.yaml"
        config_file.write_text(
            yaml.dump(
                {
                    "jobs": [
                        {"task": "bounds", "n": 10, "q": 3, "t": 8},
                        {"task": "construct", "kind": "binary", "n": 9, "t": 2},
                    ]
                }
            )
        )

        # Act
        result = runner.invoke(main, ["--config", str(config_file), "batch"])

        # Assert
        assert result.exit_code == 0
        data = _json(result)
        assert [r["task"] for r in data["results"]] == ["bounds", "construct"]
        assert data["results"][1]["report"]["size"] == 4
        assert "[*] [1/2] Running: bounds" in result.stderr

    def test_batch_needs_config(self, runner):
        """Test batch without --config is a usage error."""
        result = runner.invoke(main, ["batch"])

        assert result.exit_code == 1

    def test_batch_failing_job_exits_2(self, runner, tmp_path):
        """Test a failing job stops the batch with status 2."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text(yaml.dump({"jobs": [{"task": "bounds", "n": 3, "q": 3, "t": 4}]}))

        result = runner.invoke(main, ["--config", str(config_file), "batch"])

        assert result.exit_code == 2
        assert "Job 1 (bounds) failed" in result.stderr

    def test_invalid_config_exits_1(self, runner, tmp_path):
        """Test an invalid configuration file exits with status 1."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text(yaml.dump({"defaults": {"format": "xml"}, "jobs": []}))

        result = runner.invoke(main, ["--config", str(config_file), "bounds", "--n", "4", "--q", "3", "--t", "1"])

        assert result.exit_code == 1

    def test_config_format_applies(self, runner, tmp_path):
        """Test the file's format default is used when --format is absent."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text(yaml.dump({"defaults": {"format": "csv"}}))

        result = runner.invoke(main, ["--config", str(config_file), "bounds", "--n", "4", "--q", "3", "--t", "1"])

        assert result.exit_code == 0
        assert result.stdout.startswith("name,value\n")


class TestHelpExamples:
    """Tests that the examples in the group help run as shown."""

    def test_decode_example_runs(self, runner):
        """Test the piped decode example decodes."""
        # Arrange
        help_text = runner.invoke(main, ["--help"]).stdout
        assert "echo '[0,2,2]' | multiset-codes decode --kind cyclic --n 6 --q 3 --t 2 --a 0" in help_text

        # Act
        result = runner.invoke(
            main, ["decode", "--kind", "cyclic", "--n", "6", "--q", "3", "--t", "2", "--a", "0"], input="[0,2,2]\n"
        )

        # Assert
        assert result.exit_code == 0
        assert _json(result)["deletions"] == 2


class TestConfiguredCaps:
    """Tests that caps from the environment and config reach every command."""

    def test_ternary_construct_respects_environment_cap(self, runner):
        """Test the weight check of a ternary code obeys the enumeration cap."""
        # Act
        result = runner.invoke(
            main,
            ["construct", "--kind", "ternary", "--n", "7", "--t", "3"],
            env={"MULTISET_CODES_ENUM_CAP": "5"},
        )

        # Assert
        assert result.exit_code == 2
        assert "deletion patterns of size <= 3" in result.stderr

    def test_verify_respects_config_pattern_cap(self, runner, tmp_path):
        """Test verify lists outputs under the configured pattern cap."""
        # Arrange
        config_file = tmp_path / "config.yaml"
        config_file.write_text(yaml.dump({"defaults": {"pattern_cap": 2}}))

        # Act
        result = runner.invoke(main, ["--config", str(config_file), "verify", "--fixture", "ternary6"])

        # Assert
        assert result.exit_code == 2
        assert "exceeding the cap of 2" in result.stderr
