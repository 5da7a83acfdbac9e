"""
Tests for the parameter models
"""

import cmath
import math
import unittest

import numpy as np

from src.dynstokes.models.errors import InvalidParameterError
from src.dynstokes.models.params import KernelPoint, ResolventParams, SectorSpec


class TestSectorSpec(unittest.TestCase):
    """Tests for SectorSpec"""

    def test_contains(self):
        """Test membership of points near the sector edge"""
        sector = SectorSpec(epsilon=math.pi / 6)

        self.assertTrue(sector.contains(1.0))
        self.assertTrue(sector.contains(cmath.rect(5.0, 0.8 * sector.max_angle)))
        self.assertFalse(sector.contains(cmath.rect(5.0, sector.max_angle + 1e-3)))
        self.assertFalse(sector.contains(-1.0))
        self.assertFalse(sector.contains(0.0))

    def test_invalid_epsilon(self):
        """Test that epsilon outside (0, pi) is rejected"""
        with self.assertRaises(InvalidParameterError):
            SectorSpec(epsilon=0.0)
        with self.assertRaises(InvalidParameterError):
            SectorSpec(epsilon=math.pi)

    def test_invalid_omega(self):
        """Test that a non-positive omega is rejected"""
        with self.assertRaises(InvalidParameterError):
            SectorSpec(epsilon=0.5, omega=0.0)


class TestResolventParams(unittest.TestCase):
    """Tests for ResolventParams"""

    def test_from_polar(self):
        """Test construction from modulus and angle"""
        params = ResolventParams.from_polar(100.0, 0.5, alpha=2.0, dim=3)

        self.assertAlmostEqual(params.modulus, 100.0)
        self.assertAlmostEqual(params.angle, 0.5)
        self.assertEqual(params.tdim, 2)
        self.assertEqual(params.alpha, 2.0)

    def test_negative_alpha_rejected(self):
        """Test that alpha < 0 is rejected"""
        with self.assertRaises(InvalidParameterError):
            ResolventParams(lam=1.0, alpha=-1.0)

    def test_zero_lambda_rejected(self):
        """Test that lambda = 0 is rejected"""
        with self.assertRaises(InvalidParameterError):
            ResolventParams(lam=0.0)

    def test_unsupported_dimension(self):
        """Test that dimensions other than 2 and 3 are rejected"""
        with self.assertRaises(InvalidParameterError):
            ResolventParams(lam=1.0, dim=4)

    def test_outside_sector_rejected(self):
        """Test that a point outside the given sector is rejected"""
        sector = SectorSpec(epsilon=math.pi / 2)
        with self.assertRaises(InvalidParameterError):
            ResolventParams.from_polar(10.0, 2.0, sector=sector)

    def test_negative_real_axis_rejected(self):
        """Test that a negative real lambda is rejected without a sector"""
        with self.assertRaises(InvalidParameterError):
            ResolventParams(lam=-4.0)

    def test_replace_revalidates(self):
        """Test that replace builds a new validated object"""
        params = ResolventParams(lam=10.0, alpha=1.0)

        self.assertEqual(params.replace(alpha=5.0).alpha, 5.0)
        with self.assertRaises(InvalidParameterError):
            params.replace(alpha=-5.0)

    def test_to_dict(self):
        """Test dictionary form"""
        data = ResolventParams(lam=2.0 + 1.0j).to_dict()

        self.assertEqual(data["dim"], 2)
        self.assertIsNone(data["sector"])
        self.assertAlmostEqual(data["modulus"], abs(2.0 + 1.0j))


class TestKernelPoint(unittest.TestCase):
    """Tests for KernelPoint"""

    def test_broadcast(self):
        """Test that s and y are broadcast against each other"""
        point = KernelPoint(np.array([0.0, 1.0, 2.0]), 0.5)

        self.assertEqual(point.shape, (3,))
        np.testing.assert_array_equal(point.y, [0.5, 0.5, 0.5])

    def test_negative_coordinates_rejected(self):
        """Test that negative s or y are rejected"""
        with self.assertRaises(InvalidParameterError):
            KernelPoint(-1.0, 0.0)
        with self.assertRaises(InvalidParameterError):
            KernelPoint(1.0, -0.1)
        with self.assertRaises(InvalidParameterError):
            KernelPoint(np.nan, 0.0)


if __name__ == "__main__":
    unittest.main()
