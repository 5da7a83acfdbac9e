"""
Tests for the validated run configuration
"""

import math
import unittest

from pydantic import ValidationError

from src.dynstokes.models.run_config import RunConfig


class TestRunConfig(unittest.TestCase):
    """Tests for RunConfig"""

    def test_defaults(self):
        """Test that an empty configuration validates to the defaults"""
        config = RunConfig.model_validate({})

        self.assertEqual(config.problem.dim, 2)
        self.assertEqual(config.grid.n, 64)
        self.assertEqual(config.certify.delta, 0.05)
        self.assertEqual(config.sweep.alphas, [0.0, 1.0, 10.0, 100.0])
        self.assertEqual(config.tolerances.interior, 1e-10)
        self.assertEqual(config.run.seed, 0)

    def test_params(self):
        """Test conversion of the problem section to ResolventParams"""
        config = RunConfig.model_validate(
            {"problem": {"lambda_modulus": 4.0, "lambda_angle": 1.0, "alpha": 3.0}}
        )
        params = config.problem.params()

        self.assertAlmostEqual(params.modulus, 4.0)
        self.assertAlmostEqual(params.angle, 1.0)
        self.assertEqual(params.alpha, 3.0)
        self.assertAlmostEqual(params.sector.epsilon, math.pi / 6)

    def test_negative_alpha(self):
        """Test that a negative alpha is invalid"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"problem": {"alpha": -1.0}})

    def test_angle_outside_sector(self):
        """Test that the resolvent angle has to lie inside the sector"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"problem": {"lambda_angle": 3.0}})

    def test_unknown_key(self):
        """Test that unknown keys are rejected"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"problem": {"lamda": 1.0}})
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"solver": {}})

    def test_grid_power_of_two(self):
        """Test that the tangential grid size must be a power of two"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"grid": {"n": 48}})
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"grid": {"n": 4}})

    def test_oracle_mode_length(self):
        """Test that wave vectors must have d - 1 components"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"problem": {"dim": 3}})

        config = RunConfig.model_validate(
            {"problem": {"dim": 3}, "oracle": {"modes": [[1.0, 0.5]]}}
        )
        self.assertEqual(config.oracle.modes, [[1.0, 0.5]])

    def test_zero_mode_excluded(self):
        """Test that the xi = 0 oracle mode is rejected"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"oracle": {"modes": [[0.0]]}})

    def test_delta_tilde(self):
        """Test that delta_tilde may not exceed delta"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"certify": {"delta": 0.01, "delta_tilde": 0.02}})

    def test_unknown_check(self):
        """Test that unknown certification checks are rejected"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"certify": {"check": "everything"}})

    def test_sweep_bounds(self):
        """Test sweep modulus and p validation"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"sweep": {"modulus_min": 0.5}})
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"sweep": {"modulus_min": 1e3, "modulus_max": 1e2}})
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"sweep": {"p": 1.0}})
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"sweep": {"alphas": [0.0, -1.0]}})

    def test_sweep_angles_inside_sector(self):
        """Test that sweep angles must lie inside the sector"""
        with self.assertRaises(ValidationError):
            RunConfig.model_validate({"sweep": {"angles": [0.0, 2.7]}})

    def test_worker_count(self):
        """Test the worker count fallback"""
        config = RunConfig.model_validate({"run": {"workers": 3}})
        self.assertEqual(config.run.worker_count(), 3)
        self.assertGreaterEqual(RunConfig.model_validate({}).run.worker_count(), 1)

    def test_dump_round_trip(self):
        """Test that the resolved dump validates again"""
        dumped = RunConfig.model_validate({"command": "solve"}).model_dump(mode="json")

        self.assertEqual(dumped["command"], "solve")
        self.assertEqual(RunConfig.model_validate(dumped).command, "solve")


if __name__ == "__main__":
    unittest.main()
