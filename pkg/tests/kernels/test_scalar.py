"""
Tests for the scalar radial kernels
"""

import cmath
import unittest

import mpmath
import numpy as np

from src.dynstokes.kernels import scalar
from src.dynstokes.models.errors import InvalidParameterError
from src.dynstokes.models.params import KernelPoint, ResolventParams

mpmath.mp.dps = 40


def reference_m0(lam, alpha, s, y):
    """m0 from its definition in 40-digit arithmetic"""
    lam = mpmath.mpc(lam.real, lam.imag)
    s = mpmath.mpf(s)
    y = mpmath.mpf(y)
    q = mpmath.sqrt(lam + s * s)
    p = (q + s) / (alpha + lam + q + s)
    return complex(p * (mpmath.exp(-y * q) - mpmath.exp(-y * s)) / lam)


def reference_dy_m0(lam, alpha, s, y, order):
    lam_mp = mpmath.mpc(lam.real, lam.imag)
    return complex(
        mpmath.diff(
            lambda t: (
                (mpmath.sqrt(lam_mp + s * s) + s)
                / (alpha + lam_mp + mpmath.sqrt(lam_mp + s * s) + s)
                * (mpmath.exp(-t * mpmath.sqrt(lam_mp + s * s)) - mpmath.exp(-t * s))
                / lam_mp
            ),
            mpmath.mpf(y),
            order,
        )
    )


class TestScalarKernels(unittest.TestCase):
    """Tests for m0 through m4 and their derivatives"""

    def setUp(self):
        """Set up the test environment"""
        self.params = ResolventParams(lam=cmath.rect(50.0, 1.2), alpha=3.0)

    def test_expm1_c_small_argument(self):
        """Test that expm1_c keeps relative accuracy near zero"""
        z = 1e-12 + 2e-12j
        value = complex(scalar.expm1_c(z))

        self.assertAlmostEqual(abs(value - z) / abs(z), 0.0, delta=1e-10)

    def test_expm1_c_matches_exp(self):
        """Test expm1_c against exp(z) - 1 away from zero"""
        z = np.array([1.0 + 2.0j, -3.0 + 0.5j])
        np.testing.assert_allclose(scalar.expm1_c(z), np.exp(z) - 1.0, rtol=1e-14)

    def test_sqrt_shifted_principal(self):
        """Test that q is the principal root with positive real part"""
        q = scalar.sqrt_shifted(self.params, np.array([0.0, 1.0, 10.0]))

        np.testing.assert_allclose(q * q, self.params.lam + np.array([0.0, 1.0, 100.0]))
        self.assertTrue(np.all(q.real > 0.0))

    def test_sqrt_shifted_negative_s(self):
        """Test that s < 0 is rejected"""
        with self.assertRaises(InvalidParameterError):
            scalar.sqrt_shifted(self.params, -1.0)

    def test_m0_against_high_precision(self):
        """Test m0 against a 40-digit evaluation of its definition"""
        for s, y in [(0.0, 0.1), (1e-3, 1e-6), (2.0, 0.5), (30.0, 0.01), (0.5, 3.0)]:
            expected = reference_m0(self.params.lam, self.params.alpha, s, y)
            value = complex(scalar.m0(self.params, KernelPoint(s, y)))
            self.assertLess(abs(value - expected), 1e-12 * abs(expected))

    def test_m0_small_y_no_cancellation(self):
        """Test that m0 keeps relative accuracy when E nearly cancels"""
        expected = reference_m0(self.params.lam, self.params.alpha, 5.0, 1e-10)
        value = complex(scalar.m0(self.params, (5.0, 1e-10)))

        self.assertLess(abs(value - expected) / abs(expected), 1e-12)

    def test_m0_vanishes_at_wall(self):
        """Test m0(s, 0) = 0"""
        values = scalar.m0(self.params, KernelPoint(np.linspace(0.0, 10.0, 5), 0.0))
        np.testing.assert_array_equal(values, 0.0)

    def test_m0_quotient_form(self):
        """Test that m0 agrees with its unsimplified quotient form"""
        point = KernelPoint(np.array([0.5, 2.0, 8.0]), np.array([0.3, 0.7, 1.1]))
        np.testing.assert_allclose(
            scalar.m0(self.params, point),
            scalar.m0_quotient_form(self.params, point),
            rtol=1e-10,
        )

    def test_m1_is_lambda_s_m0(self):
        """Test m1 = lambda s m0"""
        point = KernelPoint(np.array([0.1, 1.0, 10.0]), 0.4)
        np.testing.assert_allclose(
            scalar.m1(self.params, point),
            self.params.lam * point.s * scalar.m0(self.params, point),
            rtol=1e-13,
        )

    def test_m2_identity(self):
        """Test m2 = -m1 - lambda m3 / D"""
        point = KernelPoint(np.array([0.0, 0.2, 3.0, 40.0]), np.array([0.05, 1.0, 0.2, 0.01]))
        expected = -scalar.m1(self.params, point) - self.params.lam * scalar.m3(
            self.params, point
        ) / scalar.denominator(self.params, point)

        np.testing.assert_allclose(scalar.m2(self.params, point), expected, rtol=1e-12)

    def test_dy_m0_against_high_precision(self):
        """Test normal derivatives of m0 up to third order"""
        lam, alpha = self.params.lam, self.params.alpha
        for order in (1, 2, 3):
            for s, y in [(0.5, 0.2), (4.0, 0.05)]:
                expected = reference_dy_m0(lam, alpha, s, y, order)
                value = complex(scalar.dy_m0(self.params, KernelPoint(s, y), order=order))
                self.assertLess(abs(value - expected), 1e-11 * abs(expected))

    def test_dy_m0_order_zero(self):
        """Test that order 0 returns m0"""
        point = KernelPoint(1.0, 0.5)
        self.assertEqual(
            complex(scalar.dy_m0(self.params, point, order=0)),
            complex(scalar.m0(self.params, point)),
        )

    def test_dy_m0_negative_order(self):
        """Test that negative orders are rejected"""
        with self.assertRaises(InvalidParameterError):
            scalar.dy_m0(self.params, KernelPoint(1.0, 0.5), order=-1)

    def test_m4(self):
        """Test m4 = m3 / (lambda + alpha + q)"""
        point = KernelPoint(2.0, 0.3)
        q = scalar.sqrt_shifted(self.params, 2.0)
        expected = np.exp(-0.3 * q) / (self.params.lam + self.params.alpha + q)

        self.assertAlmostEqual(complex(scalar.m4(self.params, point)), complex(expected))

    def test_radial_derivatives(self):
        """Test ds_p, ds_m3, ds_sE and ds_m1 against central differences"""
        y, h = 0.4, 1e-6
        for s in (0.7, 5.0):
            for kernel, derivative in [
                (scalar.p_factor, scalar.ds_p),
                (scalar.m3, scalar.ds_m3),
                (lambda p, pt: pt.s * scalar.big_e(p, pt), scalar.ds_sE),
                (scalar.m1, scalar.ds_m1),
            ]:
                fd = (
                    kernel(self.params, KernelPoint(s + h, y))
                    - kernel(self.params, KernelPoint(s - h, y))
                ) / (2.0 * h)
                exact = complex(derivative(self.params, KernelPoint(s, y)))
                self.assertLess(abs(complex(fd) - exact), 1e-6 * max(abs(exact), 1.0))

    def test_big_e_negative_real_part(self):
        """Test E for a resolvent point with Re lambda < 0"""
        params = ResolventParams(lam=cmath.rect(20.0, 2.4), alpha=0.0)
        s, y = 1.5, 0.8
        q = cmath.sqrt(params.lam + s * s)
        expected = cmath.exp(-y * q) - cmath.exp(-y * s)

        self.assertLess(abs(complex(scalar.big_e(params, (s, y))) - expected), 1e-13)

    def test_rejects_bad_point(self):
        """Test that non-point arguments are rejected"""
        with self.assertRaises(InvalidParameterError):
            scalar.m0(self.params, [1.0, 2.0])


if __name__ == "__main__":
    unittest.main()
