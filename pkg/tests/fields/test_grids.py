"""
Tests for the tangential and wall-normal grids
"""

import math
import unittest

import numpy as np

from src.dynstokes.fields.grids import TangentialGrid, WallGrid, grading_log_ratio
from src.dynstokes.models.errors import InvalidParameterError


class TestTangentialGrid(unittest.TestCase):
    """Tests for TangentialGrid"""

    def test_shape_and_spacing(self):
        """Test shape, size and quadrature weight"""
        grid = TangentialGrid(tdim=2, n=16)

        self.assertEqual(grid.shape, (16, 16))
        self.assertEqual(grid.size, 256)
        self.assertAlmostEqual(grid.spacing, 2.0 * math.pi / 16)
        self.assertAlmostEqual(grid.cell_volume, (2.0 * math.pi / 16) ** 2)

    def test_invalid_sizes(self):
        """Test that n must be a power of two >= 8"""
        with self.assertRaises(InvalidParameterError):
            TangentialGrid(tdim=1, n=12)
        with self.assertRaises(InvalidParameterError):
            TangentialGrid(tdim=1, n=4)
        with self.assertRaises(InvalidParameterError):
            TangentialGrid(tdim=3, n=8)

    def test_wavenumbers(self):
        """Test FFT ordering of the mode numbers"""
        grid = TangentialGrid(tdim=1, n=8)

        np.testing.assert_array_equal(grid.wavenumbers(), [0, 1, 2, 3, -4, -3, -2, -1])

    def test_frequencies_scale_with_box(self):
        """Test that frequencies are 2 pi k / L"""
        grid = TangentialGrid(tdim=1, n=8, box_length=4.0 * math.pi)

        np.testing.assert_allclose(grid.frequencies(), 0.5 * grid.wavenumbers())

    def test_xi_layout(self):
        """Test the frequency vector array"""
        xi = TangentialGrid(tdim=2, n=8).xi()

        self.assertEqual(xi.shape, (8, 8, 2))
        np.testing.assert_array_equal(xi[1, 2], [1.0, 2.0])

    def test_derivative_xi_zeroes_nyquist(self):
        """Test that the Nyquist frequency is dropped for differentiation"""
        grid = TangentialGrid(tdim=1, n=8)

        self.assertEqual(grid.derivative_xi()[4, 0], 0.0)
        self.assertEqual(grid.xi()[4, 0], -4.0)

    def test_nyquist_mask(self):
        """Test the mask of modes with a component at -n/2"""
        mask = TangentialGrid(tdim=2, n=8).nyquist_mask()

        self.assertTrue(mask[4, 0])
        self.assertTrue(mask[1, 4])
        self.assertFalse(mask[3, 3])
        self.assertEqual(int(mask.sum()), 15)

    def test_nyquist_images(self):
        """Test that only the -n/2 components change sign"""
        grid = TangentialGrid(tdim=2, n=8)
        images = grid.nyquist_images()
        xi = grid.xi()

        self.assertEqual(len(images), 4)
        np.testing.assert_array_equal(images[0], xi)
        np.testing.assert_array_equal(images[3][4, 4], [4.0, 4.0])
        np.testing.assert_array_equal(images[1][4, 4], [-4.0, 4.0])
        np.testing.assert_array_equal(images[2][4, 1], [4.0, 1.0])
        inside = ~grid.nyquist_mask()
        for image in images:
            np.testing.assert_array_equal(image[inside], xi[inside])

    def test_refined_and_dict(self):
        """Test refinement and the dict round trip"""
        grid = TangentialGrid(tdim=1, n=8, box_length=3.0)

        self.assertEqual(grid.refined().n, 16)
        self.assertEqual(TangentialGrid.from_dict(grid.to_dict()), grid)


class TestWallGrid(unittest.TestCase):
    """Tests for WallGrid"""

    def test_uniform(self):
        """Test uniform levels"""
        grid = WallGrid.uniform(2.0, 4)

        np.testing.assert_allclose(grid.levels, [0.0, 0.5, 1.0, 1.5, 2.0])
        self.assertEqual(grid.intervals, 4)
        self.assertEqual(grid.truncation, 2.0)

    def test_graded_first_step(self):
        """Test that the first step matches the requested fraction"""
        grid = WallGrid.graded(10.0, 64, first_fraction=0.001)

        self.assertAlmostEqual(grid.first_step, 0.01, places=10)
        self.assertEqual(grid.truncation, 10.0)
        self.assertTrue(np.all(np.diff(grid.levels) > 0.0))
        # steps grow geometrically
        steps = np.diff(grid.levels)
        np.testing.assert_allclose(steps[1:] / steps[:-1], steps[1] / steps[0], rtol=1e-8)

    def test_graded_default_fraction(self):
        """Test the default fraction min(0.01, 0.25 / M)"""
        grid = WallGrid.graded(1.0, 100)
        self.assertAlmostEqual(grid.first_step, 0.0025, places=10)

        grid = WallGrid.graded(1.0, 10)
        self.assertAlmostEqual(grid.first_step, 0.01, places=10)

    def test_graded_falls_back_to_uniform(self):
        """Test that a fraction >= 1/M gives the uniform grid"""
        grid = WallGrid.graded(1.0, 4, first_fraction=0.5)
        self.assertEqual(grid, WallGrid.uniform(1.0, 4))

    def test_invalid_levels(self):
        """Test level validation"""
        with self.assertRaises(InvalidParameterError):
            WallGrid([0.0])
        with self.assertRaises(InvalidParameterError):
            WallGrid([0.1, 0.2])
        with self.assertRaises(InvalidParameterError):
            WallGrid([0.0, 0.5, 0.5])
        with self.assertRaises(InvalidParameterError):
            WallGrid.graded(1.0, 8, first_fraction=1.5)

    def test_levels_read_only(self):
        """Test that levels cannot be modified in place"""
        grid = WallGrid.uniform(1.0, 2)
        with self.assertRaises(ValueError):
            grid.levels[1] = 0.7

    def test_trapezoid_weights(self):
        """Test that the trapezoid rule integrates linear functions exactly"""
        grid = WallGrid.graded(3.0, 20, first_fraction=0.01)
        weights = grid.trapezoid_weights()

        self.assertAlmostEqual(float(weights.sum()), 3.0)
        self.assertAlmostEqual(float(weights @ grid.levels), 4.5)

    def test_refined(self):
        """Test that refinement inserts midpoints"""
        grid = WallGrid.uniform(1.0, 2).refined()

        np.testing.assert_allclose(grid.levels, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_dict_round_trip(self):
        """Test the dict round trip and hashing"""
        grid = WallGrid.graded(5.0, 16)
        copy = WallGrid.from_dict(grid.to_dict())

        self.assertEqual(copy, grid)
        self.assertEqual(hash(copy), hash(grid))

    def test_grading_log_ratio(self):
        """Test the grading equation"""
        log_ratio = grading_log_ratio(50, 0.002)
        value = math.expm1(log_ratio) / math.expm1(50 * log_ratio)

        self.assertAlmostEqual(value, 0.002, places=12)


if __name__ == "__main__":
    unittest.main()
