"""
Tests for the pointwise kernel inequalities
"""

import math
import unittest

from src.dynstokes.certify import (
    FrequencyWallGrid,
    SectorSampleGrid,
    check_e_bounds,
    check_m2_identity,
    check_real_part,
    check_se_bound,
    check_sqrt_lambda_bound,
    se_bound_constant,
)
from src.dynstokes.models.errors import InvalidParameterError
from src.dynstokes.models.params import SectorSpec


class TestInequalities(unittest.TestCase):
    """Tests for the inequality reports"""

    def setUp(self):
        """Set up the test environment"""
        # |arg lambda| < pi / 2 keeps every point in Re lambda >= 0
        self.right = SectorSampleGrid.default(
            SectorSpec(epsilon=math.pi / 2, omega=1.0),
            moduli_count=4,
            angle_count=3,
            max_modulus=1000.0,
        )
        self.full = SectorSampleGrid.default(
            SectorSpec(epsilon=math.pi / 6, omega=1.0),
            moduli_count=4,
            angle_count=5,
            max_modulus=100.0,
        )
        self.frequency_grid = FrequencyWallGrid(s_count=30, y_count=30)

    def test_real_part_right_half_plane(self):
        """Test Re q >= s where Re lambda >= 0"""
        report = check_real_part(self.right, self.frequency_grid)

        self.assertTrue(report.passed)
        self.assertEqual(report.points, 12 * 31)
        self.assertGreaterEqual(report.constants["c_epsilon"], 1.0)
        self.assertGreater(report.constants["c"], 0.0)
        self.assertGreaterEqual(report.worst["margin"], 0.0)

    def test_real_part_split_by_half_plane(self):
        """Test that violations of Re q >= s occur only for Re lambda < 0"""
        report = check_real_part(self.full, self.frequency_grid)

        self.assertFalse(report.passed)
        self.assertEqual(report.violations_by_half_plane["re_lambda_nonnegative"], 0)
        self.assertGreater(report.violations_by_half_plane["re_lambda_negative"], 0)
        self.assertLess(report.worst["lambda"].real, 0.0)
        self.assertGreater(report.constants["c_epsilon"], 0.0)

    def test_sqrt_lambda_bound(self):
        """Test sqrt|lambda| <= |q + s| on the whole sector"""
        report = check_sqrt_lambda_bound(self.full, self.frequency_grid)

        self.assertTrue(report.passed)
        self.assertLessEqual(report.constants["max_ratio"], 1.0 + 1e-12)

    def test_e_bounds(self):
        """Test |E| <= sqrt|lambda| y exp(-s y) where Re lambda >= 0"""
        report = check_e_bounds(self.right, self.frequency_grid)

        self.assertTrue(report.passed, report.worst)
        self.assertGreater(report.constants["c_tilde"], 0.0)
        self.assertIn("y_count", report.grid["frequency"])

    def test_se_bound(self):
        """Test the explicit s E bound for both orders"""
        for order in (0, 1):
            with self.subTest(order=order):
                report = check_se_bound(self.right, self.frequency_grid, delta=0.05, order=order)

                self.assertTrue(report.passed, report.worst)
                self.assertEqual(report.name, f"se_bound_k{order}")
                self.assertAlmostEqual(report.constants["bound"], se_bound_constant(1.0, 0.05, order))
                self.assertLessEqual(report.constants["max_ratio"], 1.0 + 1e-9)

    def test_se_bound_delta_range(self):
        """Test that delta must lie in (0, 1)"""
        with self.assertRaises(InvalidParameterError):
            check_se_bound(self.right, self.frequency_grid, delta=1.0)

    def test_se_bound_constant(self):
        """Test the closed form of the constants"""
        self.assertAlmostEqual(se_bound_constant(1.0, 0.0, 0), (1.0 + math.sqrt(2.0)) / math.e)
        self.assertGreater(se_bound_constant(1.0, 0.5, 1), se_bound_constant(1.0, 0.5, 0))
        with self.assertRaises(InvalidParameterError):
            se_bound_constant(1.0, 0.5, 2)

    def test_m2_identity(self):
        """Test the algebraic m2 identity on the whole sector"""
        report = check_m2_identity(self.full, self.frequency_grid)

        self.assertTrue(report.passed, report.worst)
        self.assertEqual(report.name, "m2_identity")
        self.assertLessEqual(report.constants["max_identity_residual"], 1e-12)

    def test_to_dict(self):
        """Test the report form"""
        data = check_sqrt_lambda_bound(self.right, self.frequency_grid).to_dict()

        self.assertTrue(data["passed"])
        self.assertNotIn("y_count", data["grid"]["frequency"])
        self.assertEqual(set(data["violations_by_half_plane"]), {"re_lambda_nonnegative", "re_lambda_negative"})


if __name__ == "__main__":
    unittest.main()
