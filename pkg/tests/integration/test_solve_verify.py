"""
End-to-end runs of the command line on a small configuration
"""

import json
import os

import pytest

from src.dynstokes.cli.commands import main
from src.dynstokes.fields.dump import load_field


@pytest.mark.integration
class TestSolveThenVerify:
    """Solve, then verify the dumped fields with verify --from"""

    def test_round_trip(self, temp_config_file, tmp_path):
        solve_dir = tmp_path / "solve"
        verify_dir = tmp_path / "verify"
        overrides = ["--set", "grid.wall_intervals=128"]

        assert main(["solve", "--out", str(solve_dir)] + overrides) == 0
        phi = load_field(str(solve_dir / "fields"), "phi")
        assert phi.values.shape == (16, 1)

        code = main(
            ["verify", "--out", str(verify_dir), "--from", str(solve_dir)] + overrides
        )
        assert code == 0

        with open(verify_dir / "report.json") as f:
            report = json.load(f)
        reproduction = report["data"]["reproduction"]
        assert set(reproduction) == {"u_prime", "u_d", "pressure"}
        assert max(reproduction.values()) <= 1e-12

    def test_verify_from_missing_solve(self, temp_config_file, tmp_path):
        """Test that a missing dump is a failed run, not a crash"""
        code = main(["verify", "--from", str(tmp_path / "nowhere")])
        assert code == 1


@pytest.mark.integration
class TestCertifyAndSweep:
    """Table outputs of the certify and sweep commands"""

    def test_certify_tables(self, temp_config_file):
        out_dir = os.path.join(os.path.dirname(temp_config_file), "out")
        main(["certify", "--check", "all", "--set", "certify.refine=false"])

        assert os.path.exists(os.path.join(out_dir, "tables", "inequalities.csv"))
        assert os.path.exists(os.path.join(out_dir, "tables", "certificates.csv"))

    def test_sweep_proxy(self, temp_config_file):
        out_dir = os.path.join(os.path.dirname(temp_config_file), "out")
        main(["sweep", "--set", "sweep.experiment=proxy"])

        with open(os.path.join(out_dir, "report.json")) as f:
            report = json.load(f)
        assert report["command"] == "sweep"
        assert "second_order_proxy" in report["data"]
        assert os.path.exists(os.path.join(out_dir, "tables", "second_order_proxy.csv"))
