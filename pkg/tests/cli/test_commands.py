"""
Tests for the dynstokes command line
"""

import json
import os
from unittest.mock import patch

import pytest

from src.dynstokes.cli.commands import main
from src.dynstokes.cli.commands.base import (
    EXIT_INVALID_CONFIG,
    EXIT_OK,
    EXIT_VIOLATION,
)


def _out_dir(config_path):
    return os.path.join(os.path.dirname(config_path), "out")


def _report(out_dir):
    with open(os.path.join(out_dir, "report.json")) as f:
        return json.load(f)


class TestSolveCommand:
    """Tests for dynstokes solve"""

    def test_solve_writes_report(self, temp_config_file):
        """Test that solve exits 0 and records the resolved configuration"""
        assert main(["solve"]) == EXIT_OK

        report = _report(_out_dir(temp_config_file))
        assert report["command"] == "solve"
        assert report["success"] is True
        assert report["config"]["grid"]["n"] == 16
        assert report["config"]["oracle"]["steps"] == 512

    def test_explicit_config_and_out(self, temp_config_file, tmp_path):
        """Test --config together with --out"""
        out_dir = tmp_path / "elsewhere"
        code = main(["solve", "--config", str(temp_config_file), "--out", str(out_dir)])

        assert code == EXIT_OK
        assert _report(str(out_dir))["config"]["run"]["out_dir"] == str(out_dir)

    def test_seed_override(self, temp_config_file):
        """Test that --seed lands in the resolved configuration"""
        assert main(["solve", "--seed", "11"]) == EXIT_OK
        assert _report(_out_dir(temp_config_file))["config"]["run"]["seed"] == 11


class TestInvalidConfiguration:
    """Configuration errors exit with 2 before anything runs"""

    def test_negative_alpha(self, temp_config_file):
        assert main(["solve", "--set", "problem.alpha=-1"]) == EXIT_INVALID_CONFIG
        assert not os.path.exists(os.path.join(_out_dir(temp_config_file), "report.json"))

    def test_unknown_key(self, temp_config_file):
        assert main(["solve", "--set", "problem.beta=1"]) == EXIT_INVALID_CONFIG

    def test_lambda_outside_sector(self, temp_config_file):
        """Test that |arg lambda| >= pi - epsilon is refused"""
        code = main(["solve", "--set", "problem.lambda_angle=3.0"])
        assert code == EXIT_INVALID_CONFIG

    def test_malformed_override(self, temp_config_file):
        assert main(["solve", "--set", "problem.alpha"]) == EXIT_INVALID_CONFIG

    def test_missing_config_file(self, tmp_path):
        code = main(["solve", "--config", str(tmp_path / "missing.yaml")])
        assert code == EXIT_INVALID_CONFIG


class TestCertifyCommand:
    """Tests for dynstokes certify"""

    def test_real_part_fails_in_left_half_plane(self, temp_config_file):
        """Test that a violated inequality exits 1 with a report"""
        assert main(["certify", "--check", "real-part"]) == EXIT_VIOLATION

        report = _report(_out_dir(temp_config_file))
        assert report["success"] is False
        split = report["data"]["inequalities"][0]["violations_by_half_plane"]
        assert split["re_lambda_nonnegative"] == 0
        assert split["re_lambda_negative"] > 0

    def test_sqrt_lambda_passes(self, temp_config_file):
        assert main(["certify", "--check", "sqrt-lambda"]) == EXIT_OK

    def test_unknown_check(self, temp_config_file):
        with pytest.raises(SystemExit):
            main(["certify", "--check", "everything"])


class TestOracleCommand:
    """Tests for dynstokes oracle"""

    def test_tight_tolerance_fails(self, temp_config_file):
        code = main(["oracle", "--set", "tolerances.oracle=1e-14"])
        assert code == EXIT_VIOLATION


@patch("src.dynstokes.cli.commands.base.RunService.run")
def test_unexpected_error_exits_one(mock_run, temp_config_file):
    """Test that a crash inside a run is reported as exit 1"""
    mock_run.side_effect = RuntimeError("boom")

    assert main(["solve"]) == EXIT_VIOLATION
    mock_run.assert_called_once_with("solve")


def test_no_command_prints_help(capsys):
    """Test that a bare invocation prints usage and exits 0"""
    assert main([]) == EXIT_OK
    assert "usage" in capsys.readouterr().out
