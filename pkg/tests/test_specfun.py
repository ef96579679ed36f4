""" Special functions tests """

import math
import unittest

import numpy as np
from scipy.special import expi, expn, gammaln

from ehcrn.errors import DomainError
from ehcrn.specfun import binomial, expint_ei, expint_ei_scaled, \
    expint_en, expint_en_scaled, ln_gamma


class ExponentialIntegralTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_en_against_scipy(self):
        for _ in range(200):
            n = int(self.rng.integers(1, 13))
            x = float(10.0 ** self.rng.uniform(-6.0, 2.5))
            expected = expn(n, x)
            self.assertAlmostEqual(expint_en(n, x) / expected, 1.0,
                                   delta=1e-10, msg=f'E_{n}({x})')

    def test_en_scaled_against_scipy(self):
        for n in (1, 2, 5, 11):
            for x in (1e-4, 0.5, 0.999, 1.0, 3.0, 50.0):
                expected = expn(n, x) * math.exp(x)
                self.assertAlmostEqual(expint_en_scaled(n, x) / expected,
                                       1.0, delta=1e-10)

    def test_en_recurrence(self):
        for n in range(1, 13):
            for x in np.logspace(-6, 2, 40):
                identity = n * expint_en_scaled(n + 1, x) + \
                    x * expint_en_scaled(n, x)
                self.assertAlmostEqual(identity, 1.0, delta=1e-10)

    def test_en_scaled_bounds(self):
        for n in (1, 3, 8):
            for x in (0.01, 1.0, 10.0, 400.0, 5000.0):
                value = expint_en_scaled(n, x)
                self.assertGreater(value, 1.0 / (x + n))
                if n > 1:
                    self.assertLessEqual(value, 1.0 / (x + n - 1))

    def test_en_large_argument(self):
        self.assertEqual(expint_en(2, 800.0), 0.0)
        self.assertAlmostEqual(expint_en_scaled(2, 800.0) * 800.0, 1.0,
                               delta=5e-3)

    def test_ei_against_scipy(self):
        for x in np.concatenate([np.logspace(-6, 2.5, 60), [39.9, 40.1]]):
            x = float(x)
            self.assertAlmostEqual(expint_ei(x) / expi(x), 1.0,
                                   delta=1e-10, msg=f'Ei({x})')
            self.assertAlmostEqual(
                expint_ei_scaled(x) / (expi(x) * math.exp(-x)), 1.0,
                delta=1e-10)

    def test_ei_overflow(self):
        self.assertEqual(expint_ei(800.0), math.inf)
        self.assertTrue(math.isfinite(expint_ei_scaled(800.0)))

    def test_domain(self):
        with self.assertRaises(DomainError):
            expint_en(1, 0.0)
        with self.assertRaises(DomainError):
            expint_en(0, 1.0)
        with self.assertRaises(DomainError):
            expint_en_scaled(1.5, 1.0)
        with self.assertRaises(DomainError):
            expint_ei(-1.0)
        with self.assertRaises(ValueError):
            expint_ei_scaled(0.0)


class GammaBinomialTests(unittest.TestCase):
    def test_ln_gamma(self):
        for x in (0.1, 1.0, 2.5, 10.0, 170.0, 1e4):
            self.assertAlmostEqual(ln_gamma(x), float(gammaln(x)),
                                   delta=1e-12 * max(1.0, abs(gammaln(x))))
        with self.assertRaises(DomainError):
            ln_gamma(0.0)

    def test_binomial(self):
        self.assertEqual(binomial(5, 2), 10)
        self.assertEqual(binomial(10, 0), 1)
        self.assertEqual(binomial(64, 32), 1832624140942590534)
        for n in range(1, 20):
            self.assertEqual(sum(binomial(n, k) for k in range(n + 1)),
                             2 ** n)

    def test_binomial_errors(self):
        with self.assertRaises(DomainError):
            binomial(3, 4)
        with self.assertRaises(DomainError):
            binomial(3, -1)
        with self.assertRaises(OverflowError):
            binomial(65, 2)


if __name__ == '__main__':
    unittest.main()
