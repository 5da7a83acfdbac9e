"""
Tests for the seeded boundary data
"""

import unittest

import numpy as np

from src.dynstokes.fields import TangentialGrid, forward_dft
from src.dynstokes.models.errors import InvalidParameterError, ShapeMismatchError
from src.dynstokes.sweep import band_limited_phi, harmonic_phi, phi_family, resample_boundary


class TestBandLimitedPhi(unittest.TestCase):
    """Tests for band_limited_phi"""

    def setUp(self):
        """Set up the test environment"""
        self.tgrid = TangentialGrid(tdim=2, n=16)

    def test_real_and_normalized(self):
        """Test a real field with the requested RMS"""
        phi = band_limited_phi(self.tgrid, 2, seed=11, amplitude=3.0)

        self.assertFalse(phi.spectral)
        self.assertEqual(phi.values.shape, (16, 16, 2))
        self.assertEqual(float(np.max(np.abs(phi.values.imag))), 0.0)
        self.assertAlmostEqual(float(np.sqrt(np.mean(np.abs(phi.values) ** 2))), 3.0)

    def test_deterministic(self):
        """Test that the seed fixes the field"""
        first = band_limited_phi(self.tgrid, 1, seed=5)
        again = band_limited_phi(self.tgrid, 1, seed=5)
        other = band_limited_phi(self.tgrid, 1, seed=6)

        np.testing.assert_array_equal(first.values, again.values)
        self.assertFalse(np.allclose(first.values, other.values))

    def test_band(self):
        """Test that no coefficient lies outside the band"""
        phi = band_limited_phi(self.tgrid, 1, seed=2, band=3)
        coefficients = np.abs(forward_dft(phi).values[..., 0])
        k = self.tgrid.wavenumbers()
        radius = np.sqrt(k[:, None] ** 2 + k[None, :] ** 2)

        self.assertLess(float(coefficients[radius > 3].max()), 1e-12 * float(coefficients.max()))

    def test_invalid(self):
        """Test argument validation"""
        with self.assertRaises(InvalidParameterError):
            band_limited_phi(self.tgrid, 0, seed=1)
        with self.assertRaises(InvalidParameterError):
            band_limited_phi(self.tgrid, 1, seed=1, band=8)


class TestPhiFamily(unittest.TestCase):
    """Tests for phi_family"""

    def test_family(self):
        """Test independent reproducible members"""
        tgrid = TangentialGrid(tdim=1, n=32)
        family = phi_family(tgrid, 1, 3, seed=9)
        again = phi_family(tgrid, 1, 3, seed=9)

        self.assertEqual(len(family), 3)
        self.assertFalse(np.allclose(family[0].values, family[1].values))
        for first, second in zip(family, again):
            np.testing.assert_array_equal(first.values, second.values)


class TestHarmonicPhi(unittest.TestCase):
    """Tests for harmonic_phi and resample_boundary"""

    def setUp(self):
        """Set up the test environment"""
        self.tgrid = TangentialGrid(tdim=1, n=8)

    def test_cosine(self):
        """Test a cos(xi . x)"""
        phi = harmonic_phi(self.tgrid, [2], [0.5])
        x = self.tgrid.points()[..., 0]

        np.testing.assert_allclose(phi.values[:, 0], 0.5 * np.cos(2.0 * x), atol=1e-15)

    def test_mode_shape(self):
        """Test that the mode needs one entry per axis"""
        with self.assertRaises(ShapeMismatchError):
            harmonic_phi(self.tgrid, [1, 1], [1.0])

    def test_resample(self):
        """Test zero padding of a harmonic onto a finer grid"""
        fine = TangentialGrid(tdim=1, n=32)
        moved = resample_boundary(harmonic_phi(self.tgrid, [3], [1.0, 2.0]), fine)
        expected = harmonic_phi(fine, [3], [1.0, 2.0])

        np.testing.assert_allclose(moved.values, expected.values, atol=1e-13)

    def test_resample_only_refines(self):
        """Test that coarsening and other periods are rejected"""
        with self.assertRaises(ShapeMismatchError):
            resample_boundary(harmonic_phi(self.tgrid, [1], [1.0]), TangentialGrid(tdim=1, n=4))
        with self.assertRaises(ShapeMismatchError):
            resample_boundary(
                harmonic_phi(self.tgrid, [1], [1.0]), TangentialGrid(tdim=1, n=16, box_length=1.0)
            )


if __name__ == "__main__":
    unittest.main()
