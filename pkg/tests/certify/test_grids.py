"""
Tests for the certification sample grids
"""

import math
import unittest

import numpy as np

from src.dynstokes.certify import FrequencyWallGrid, SectorSampleGrid, fixed_lambda
from src.dynstokes.models.errors import InvalidParameterError
from src.dynstokes.models.params import SectorSpec


class TestSectorSampleGrid(unittest.TestCase):
    """Tests for SectorSampleGrid"""

    def setUp(self):
        """Set up the test environment"""
        self.sector = SectorSpec(epsilon=math.pi / 6, omega=2.0)

    def test_default(self):
        """Test log moduli from omega and angles reaching both extremes"""
        grid = SectorSampleGrid.default(self.sector, moduli_count=3, angle_count=5, max_modulus=200.0)
        limit = math.pi - math.pi / 6 - math.pi / 90

        np.testing.assert_allclose(grid.moduli, [2.0, 20.0, 200.0])
        self.assertAlmostEqual(grid.angles[0], -limit)
        self.assertAlmostEqual(grid.angles[-1], limit)
        self.assertAlmostEqual(grid.angles[2], 0.0)
        self.assertEqual(grid.size, 15)
        self.assertEqual(len(grid.params(alpha=1.0, dim=3)), 15)

    def test_lambdas_order(self):
        """Test that lambdas run over angles for each modulus"""
        grid = SectorSampleGrid(self.sector, (1.0, 4.0), (0.0, 1.0))
        lambdas = grid.lambdas()

        self.assertAlmostEqual(lambdas[0], 1.0)
        self.assertAlmostEqual(abs(lambdas[3]), 4.0)
        self.assertAlmostEqual(np.angle(lambdas[3]), 1.0)

    def test_angle_outside_sector(self):
        """Test that angles within the margin of the boundary are rejected"""
        with self.assertRaises(InvalidParameterError):
            SectorSampleGrid(self.sector, (1.0,), (math.pi - math.pi / 6,))

    def test_invalid_moduli(self):
        """Test that empty or nonpositive moduli are rejected"""
        with self.assertRaises(InvalidParameterError):
            SectorSampleGrid(self.sector, (), (0.0,))
        with self.assertRaises(InvalidParameterError):
            SectorSampleGrid(self.sector, (0.0,), (0.0,))
        with self.assertRaises(InvalidParameterError):
            SectorSampleGrid.default(self.sector, max_modulus=1.0)

    def test_single(self):
        """Test the one-point grid"""
        grid = SectorSampleGrid.single(self.sector, 3.0j)

        self.assertEqual(grid.size, 1)
        self.assertAlmostEqual(grid.lambdas()[0], 3.0j)
        with self.assertRaises(InvalidParameterError):
            SectorSampleGrid.single(self.sector, -3.0 + 0.1j)

    def test_fixed_lambda_without_sector(self):
        """Test that a sector through the point is chosen"""
        grid = fixed_lambda(None, -1.0 + 1.0j)

        self.assertTrue(grid.sector.contains(-1.0 + 1.0j))
        self.assertAlmostEqual(grid.lambdas()[0], -1.0 + 1.0j)


class TestFrequencyWallGrid(unittest.TestCase):
    """Tests for FrequencyWallGrid"""

    def setUp(self):
        """Set up the test environment"""
        self.grid = FrequencyWallGrid(s_min=0.1, s_max=10.0, s_count=3, y_min=1.0, y_max=100.0, y_count=3)

    def test_axes(self):
        """Test log axes with zero prepended"""
        np.testing.assert_allclose(self.grid.s_values, [0.0, 0.1, 1.0, 10.0])
        np.testing.assert_allclose(self.grid.y_values, [0.0, 1.0, 10.0, 100.0])
        self.assertEqual(self.grid.size, 16)

    def test_without_zero(self):
        """Test that include_zero=False leaves the log axes"""
        grid = FrequencyWallGrid(s_count=4, y_count=5, include_zero=False)
        self.assertEqual(grid.size, 20)

    def test_mesh(self):
        """Test the broadcastable mesh"""
        s, y = self.grid.mesh()

        self.assertEqual(s.shape, (4, 1))
        self.assertEqual(y.shape, (1, 4))

    def test_refined_contains_coarse(self):
        """Test that refinement keeps every coarse point"""
        fine = self.grid.refined()

        self.assertEqual(fine.s_count, 5)
        np.testing.assert_allclose(fine.s_values[::2], self.grid.s_values, rtol=1e-12)
        np.testing.assert_allclose(fine.y_values[::2], self.grid.y_values, rtol=1e-12)

    def test_invalid_axes(self):
        """Test axis validation"""
        with self.assertRaises(InvalidParameterError):
            FrequencyWallGrid(s_min=0.0)
        with self.assertRaises(InvalidParameterError):
            FrequencyWallGrid(y_min=2.0, y_max=1.0)
        with self.assertRaises(InvalidParameterError):
            FrequencyWallGrid(s_count=1)

    def test_dict_round_trip(self):
        """Test to_dict and from_dict"""
        self.assertEqual(FrequencyWallGrid.from_dict(self.grid.to_dict()), self.grid)


if __name__ == "__main__":
    unittest.main()
