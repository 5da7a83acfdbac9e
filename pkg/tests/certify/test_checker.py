"""
Tests for the multiplier certification sweeps
"""

import math
import unittest

from src.dynstokes.certify import (
    FrequencyWallGrid,
    SectorSampleGrid,
    certify_m,
    certify_mstar,
    check_product_lemma,
    max_order,
)
from src.dynstokes.models.errors import InvalidParameterError
from src.dynstokes.models.params import SectorSpec


class TestCertify(unittest.TestCase):
    """Tests for certify_mstar and certify_m"""

    def setUp(self):
        """Set up the test environment"""
        self.sector = SectorSpec(epsilon=math.pi / 6, omega=1.0)
        self.sector_grid = SectorSampleGrid.default(
            self.sector, moduli_count=3, angle_count=3, max_modulus=100.0
        )
        self.frequency_grid = FrequencyWallGrid(s_count=12, y_count=12)

    def _mstar(self, symbol_id, k=0, **kwargs):
        kwargs.setdefault("refine", False)
        return certify_mstar(
            symbol_id,
            k,
            sector_grid=self.sector_grid,
            frequency_grid=self.frequency_grid,
            **kwargs,
        )

    def test_max_order(self):
        """Test the certified orders per dimension"""
        self.assertEqual(max_order(2), 1)
        self.assertEqual(max_order(3), 2)
        with self.assertRaises(InvalidParameterError):
            max_order(4)

    def test_m3_sup(self):
        """Test that the weighted exp(-y q) attains 1 at the wall and stays bounded"""
        cert = self._mstar("m3")

        self.assertGreaterEqual(cert.empirical_sup, 1.0)
        self.assertLess(cert.empirical_sup, 3.0)
        self.assertTrue(cert.finite)
        self.assertTrue(cert.uniform)
        self.assertEqual(len(cert.per_lambda), 9)
        self.assertEqual(set(cert.argmax), {"lambda", "s", "y"})
        self.assertIsNone(cert.refinement_drift)
        self.assertFalse(cert.stable())

    def test_refinement(self):
        """Test the drift between the grid and its refinement"""
        cert = self._mstar("m1", k=1, refine=True)

        self.assertIsNotNone(cert.refined_sup)
        self.assertGreaterEqual(cert.refined_sup, cert.empirical_sup * (1.0 - 1e-9))
        self.assertTrue(math.isfinite(cert.refinement_drift))
        self.assertEqual(cert.to_dict()["refined_sup"], cert.refined_sup)

    def test_fixed_lambda_symbol(self):
        """Test that non-uniform symbols are certified at lambda = omega"""
        cert = self._mstar("s_dy_m0")

        self.assertFalse(cert.uniform)
        self.assertEqual(cert.sector_grid.lambdas(), [1.0 + 0.0j])
        self.assertEqual(len(cert.per_lambda), 1)

    def test_explicit_lambda(self):
        """Test certification at a given resolvent point"""
        cert = self._mstar("m3", lam=2.0j)

        self.assertFalse(cert.uniform)
        self.assertEqual(cert.sector_grid.size, 1)

    def test_order_limits(self):
        """Test that orders beyond d - 1 are rejected"""
        with self.assertRaises(InvalidParameterError):
            self._mstar("m1", k=2, dim=2)
        with self.assertRaises(InvalidParameterError):
            self._mstar("m1", delta=-0.1)

    def test_grid_below_omega(self):
        """Test that uniform sweeps must start at omega"""
        grid = SectorSampleGrid(self.sector, (0.5, 2.0), (0.0,))
        with self.assertRaises(InvalidParameterError):
            certify_mstar("m3", 0, sector_grid=grid, frequency_grid=self.frequency_grid)

    def test_m_symbols(self):
        """Test the unit symbol of kind m"""
        value = certify_m(
            "one", 0, sector_grid=self.sector_grid, frequency_grid=self.frequency_grid, refine=False
        )
        slope = certify_m(
            "one", 1, sector_grid=self.sector_grid, frequency_grid=self.frequency_grid, refine=False
        )

        self.assertAlmostEqual(value.empirical_sup, 1.0)
        self.assertEqual(value.delta, 0.0)
        self.assertEqual(slope.empirical_sup, 0.0)

    def test_workers_deterministic(self):
        """Test that threaded sweeps give identical results"""
        serial = self._mstar("m1", k=1)
        threaded = self._mstar("m1", k=1, workers=3)

        self.assertEqual(serial.empirical_sup, threaded.empirical_sup)
        self.assertEqual(serial.per_lambda, threaded.per_lambda)


class TestProductLemma(unittest.TestCase):
    """Tests for check_product_lemma"""

    def setUp(self):
        """Set up the test environment"""
        sector = SectorSpec(epsilon=math.pi / 6, omega=1.0)
        common = dict(
            sector_grid=SectorSampleGrid.default(sector, moduli_count=2, angle_count=3, max_modulus=10.0),
            frequency_grid=FrequencyWallGrid(s_count=10, y_count=10),
            refine=False,
        )
        self.one = certify_m("one", 0, **common)
        self.m3 = certify_mstar("m3", 0, delta=0.05, **common)

    def test_unit_factor(self):
        """Test that multiplying by one and reweighting keep the sup of m3"""
        product = check_product_lemma(self.one, self.m3, delta_tilde=0.02, refine=False)
        reweighted = product.companions[0]

        self.assertAlmostEqual(product.empirical_sup, self.m3.empirical_sup)
        self.assertAlmostEqual(reweighted.delta, 0.03)
        self.assertAlmostEqual(reweighted.empirical_sup, self.m3.empirical_sup, places=10)
        self.assertEqual(len(product.to_dict()["companions"]), 1)

    def test_invalid_inputs(self):
        """Test argument validation"""
        with self.assertRaises(InvalidParameterError):
            check_product_lemma(self.m3, self.one, delta_tilde=0.0)
        with self.assertRaises(InvalidParameterError):
            check_product_lemma(self.one, self.m3, delta_tilde=0.1)


if __name__ == "__main__":
    unittest.main()
