""" Closed-form outage and throughput tests """

import math
import sys
import unittest
import warnings
from dataclasses import replace
from unittest import mock

from ehcrn.analytic import OutageTier, TransmissionMode, \
    alternating_en_sum, alternating_en_sum_approx, compute_t, \
    direct_link_outage, high_margin_terms, mean_interference_term, \
    outage, p1_exact, p2_full, p2_no_direct, p2_no_rp, p3, p_full, \
    p_high_margin, p_no_direct, q2, surrogate_throughput, tau_direct, \
    tau_gap_direct, tau_incremental, tau_incremental_gap_limit, throughput
from ehcrn.errors import ConsistencyError, DomainError, RegimeWarning, \
    StabilityError
from ehcrn.model import EHScheme, lambdas_from_geometry
from tests.unit_tests_utils import DISTANT_PRIMARY, \
    OPTIMUM_GEOMETRY, base_derived, base_lambdas, quad_p1, \
    quad_p2_distant_primary, quad_p2_no_direct_distant_primary, quad_p3, \
    quad_direct_outage_relay_decodes


class OutageComponentTests(unittest.TestCase):
    def setUp(self):
        self.lam = base_lambdas()

    def test_p1_against_quadrature(self):
        for n in (1, 2, 4):
            for scheme in EHScheme:
                dp = base_derived(n_antennas=n, scheme=scheme)
                self.assertAlmostEqual(p1_exact(dp, self.lam),
                                       quad_p1(dp, self.lam), delta=1e-9)

    def test_p3_against_quadrature(self):
        for n in (1, 3):
            dp = base_derived(n_antennas=n, rate=2.0)
            self.assertAlmostEqual(p3(dp, self.lam), quad_p3(dp, self.lam),
                                   delta=1e-9)

    def test_q2(self):
        dp = base_derived()
        expected = 1.0 / (1.0 + self.lam.sd * dp.psi / self.lam.sp)
        self.assertAlmostEqual(q2(dp, self.lam), expected)
        # relay decoding is almost sure for many antennas
        dp = base_derived(n_antennas=10)
        self.assertAlmostEqual(p3(dp, self.lam), q2(dp, self.lam),
                               delta=1e-12)

    def test_mean_interference_term(self):
        dp = base_derived()
        m = mean_interference_term(dp, self.lam)
        self.assertGreater(m, 0.0)
        self.assertLess(m, dp.gamma_th)

    def test_mean_interference_series_branch(self):
        # kappa = psi lambda_sd / lambda_sp crosses 1e-3 between the points
        lam_low = replace(self.lam, sd=self.lam.sp * 0.999e-3 / 0.5)
        lam_high = replace(self.lam, sd=self.lam.sp * 1.001e-3 / 0.5)
        dp = base_derived(i_over_n0=6.0)
        self.assertAlmostEqual(dp.psi, 0.5)
        low = mean_interference_term(dp, lam_low)
        high = mean_interference_term(dp, lam_high)
        self.assertAlmostEqual(low / high, 1.0, delta=1e-3)

    def test_t_range(self):
        dp = base_derived(n_antennas=2)
        t = compute_t(dp, self.lam)
        t_nd = compute_t(dp, self.lam, direct=False)
        self.assertGreaterEqual(t, 0.0)
        self.assertLess(t, 1.0)
        self.assertGreater(t_nd, t)
        expected_nd = 1.0 - 1.0 / (1.0 + self.lam.rd * dp.psi / self.lam.rp)
        self.assertAlmostEqual(t_nd, expected_nd)

    def test_p2_distant_primary_against_quadrature(self):
        lam = lambdas_from_geometry(DISTANT_PRIMARY)
        for n in (1, 2, 3):
            for scheme in EHScheme:
                dp = base_derived(n_antennas=n, scheme=scheme)
                reference = quad_p2_distant_primary(dp, lam)
                self.assertAlmostEqual(p2_no_rp(dp, lam) / reference, 1.0,
                                       delta=1e-5, msg=f'L={n} {scheme}')

    def test_p2_no_direct_against_quadrature(self):
        lam = lambdas_from_geometry(DISTANT_PRIMARY)
        for n in (1, 2, 3):
            dp = base_derived(n_antennas=n)
            reference = quad_p2_no_direct_distant_primary(dp, lam)
            self.assertAlmostEqual(p2_no_direct(dp, lam, t=0.0) / reference,
                                   1.0, delta=1e-5)

    def test_p2_full_reduces_to_distant_primary(self):
        for n in (1, 2, 4):
            dp = base_derived(n_antennas=n)
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', RegimeWarning)
                single = p2_no_rp(dp, self.lam)
            self.assertAlmostEqual(p2_full(dp, self.lam, t=0.0), single,
                                   delta=1e-12)

    def test_p2_full_continuous_in_t(self):
        dp = base_derived(n_antennas=2)
        far = replace(self.lam, rp=1e9)
        self.assertAlmostEqual(p2_full(dp, far), p2_full(dp, far, t=0.0),
                               delta=1e-6)

    def test_direct_link_outage(self):
        for n in (1, 2):
            dp = base_derived(n_antennas=n)
            breakdown = direct_link_outage(dp, self.lam)
            self.assertAlmostEqual(
                breakdown.p2, quad_direct_outage_relay_decodes(dp, self.lam),
                delta=1e-9)
            self.assertAlmostEqual(breakdown.p, 1.0 - q2(dp, self.lam),
                                   delta=1e-12)

    def test_unsupported_antennas(self):
        dp = base_derived(n_antennas=11)
        with self.assertRaises(StabilityError):
            p2_full(dp, self.lam)
        with self.assertRaises(StabilityError):
            p_no_direct(dp, self.lam)


class OutageTierTests(unittest.TestCase):
    def setUp(self):
        self.lam = base_lambdas()

    def test_breakdown(self):
        dp = base_derived(n_antennas=2)
        breakdown = p_full(dp, self.lam)
        self.assertIs(breakdown.tier, OutageTier.FULL)
        self.assertAlmostEqual(breakdown.p, breakdown.p1 + breakdown.p2)
        self.assertGreaterEqual(breakdown.p, 0.0)
        self.assertLessEqual(breakdown.p, 1.0)

    def test_dispatch(self):
        dp = base_derived()
        self.assertIs(outage(dp, self.lam).tier, OutageTier.FULL)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', RegimeWarning)
            self.assertIs(outage(dp, self.lam, OutageTier.NO_RP).tier,
                          OutageTier.NO_RP)
        self.assertIs(outage(dp, self.lam, OutageTier.HIGH_MARGIN).tier,
                      OutageTier.HIGH_MARGIN)
        self.assertIs(outage(dp, self.lam, OutageTier.NO_DIRECT).tier,
                      OutageTier.NO_DIRECT)
        self.assertIs(outage(dp, self.lam, direct=False).tier,
                      OutageTier.NO_DIRECT)

    def test_decreasing_in_antennas(self):
        for db in (0.0, 6.0, 12.0):
            values = [p_full(base_derived(n_antennas=n,
                                          i_over_n0=10 ** (db / 10)),
                             self.lam).p for n in (1, 2, 3)]
            self.assertGreater(values[0], values[1])
            self.assertGreater(values[1], values[2])

    def test_direct_link_helps(self):
        for n in (1, 2, 3):
            dp = base_derived(n_antennas=n)
            self.assertLess(p_full(dp, self.lam).p,
                            p_no_direct(dp, self.lam).p)

    def test_no_rp_regime_warning(self):
        lam = replace(self.lam, rp=self.lam.rd)
        with self.assertWarns(RegimeWarning):
            p2_no_rp(base_derived(), lam)

    def test_high_margin_regime_warning(self):
        dp = base_derived(rate=3.0, i_over_n0=1.0)
        with self.assertWarns(RegimeWarning):
            p_high_margin(dp, replace(self.lam, sp=1.0))

    def test_alternating_sum(self):
        for x in (0.72, 3.0):
            for n in (1, 2, 4, 8):
                value = alternating_en_sum(x, n)
                self.assertGreaterEqual(value, 0.0)
                self.assertLessEqual(value, 1.0)
                approx = alternating_en_sum_approx(x, n)
                self.assertGreater(approx, 0.0)
                self.assertLess(approx, 1.0)

    def test_high_margin_terms(self):
        dp = base_derived(n_antennas=2)
        terms = high_margin_terms(dp, self.lam)
        breakdown = p_high_margin(dp, self.lam)
        self.assertAlmostEqual(breakdown.p,
                               terms.t11 * terms.t12 + terms.t2)
        self.assertAlmostEqual(terms.f1, terms.t12 - 1.0)
        self.assertAlmostEqual(terms.f2, -terms.t2)
        no_direct = p_high_margin(dp, self.lam, direct=False)
        self.assertAlmostEqual(no_direct.p, terms.t12 + terms.t2)


class ThroughputTests(unittest.TestCase):
    def setUp(self):
        self.lam = base_lambdas()

    def test_cooperative(self):
        for scheme in EHScheme:
            dp = base_derived(scheme=scheme, n_antennas=2)
            report = throughput(dp, self.lam)
            self.assertIs(report.mode, TransmissionMode.COOPERATIVE)
            self.assertAlmostEqual(
                report.tau, 0.5 * dp.rate * dp.zeta * (1.0 - report.outage.p))
            self.assertIsNone(report.components)

    def test_no_direct_below_cooperative(self):
        dp = base_derived(n_antennas=2)
        self.assertLess(
            throughput(dp, self.lam, mode=TransmissionMode.NO_DIRECT).tau,
            throughput(dp, self.lam).tau)

    def test_direct_only(self):
        dp = base_derived(rate=2.0)
        report = throughput(dp, self.lam, mode=TransmissionMode.DIRECT_ONLY)
        self.assertAlmostEqual(report.tau, tau_direct(dp, self.lam))
        self.assertAlmostEqual(report.tau, 2.0 * q2(dp, self.lam))

    def test_incremental(self):
        for scheme in EHScheme:
            for n in (1, 2, 4):
                dp = base_derived(scheme=scheme, n_antennas=n)
                report = tau_incremental(dp, self.lam)
                q1, direct_good, both_good = report.components
                p = report.outage.p
                self.assertAlmostEqual(q1, 1.0 - p - both_good)
                self.assertAlmostEqual(
                    report.tau,
                    dp.zeta * (0.5 * dp.rate * q1 + dp.rate * direct_good))
                self.assertGreaterEqual(report.tau,
                                        throughput(dp, self.lam).tau)
                self.assertEqual(
                    throughput(dp, self.lam,
                               mode=TransmissionMode.INCREMENTAL), report)

    def test_incremental_from_cooperative(self):
        for scheme in EHScheme:
            for n in (1, 2, 5):
                dp = base_derived(scheme=scheme, n_antennas=n, rate=2.0)
                cooperative = throughput(dp, self.lam)
                self.assertAlmostEqual(
                    tau_incremental(dp, self.lam).tau,
                    cooperative.tau - 0.5 * dp.zeta * dp.rate *
                    quad_p3(dp, self.lam) + dp.zeta * dp.rate *
                    q2(dp, self.lam), delta=1e-8)

    def test_incremental_forms_must_agree(self):
        dp = base_derived(n_antennas=2)
        wrong = p3(dp, self.lam) + 1e-3
        with mock.patch.object(sys.modules['ehcrn.analytic.throughput'],
                               'p3', return_value=wrong):
            with self.assertRaises(ConsistencyError):
                tau_incremental(dp, self.lam)

    def test_incremental_gap_limit(self):
        dp = base_derived(n_antennas=8)
        gap = tau_incremental(dp, self.lam).tau - \
            throughput(dp, self.lam).tau
        limit = tau_incremental_gap_limit(dp, self.lam)
        self.assertAlmostEqual(gap / limit, 1.0, delta=0.02)
        self.assertAlmostEqual(limit, 0.5 * dp.zeta * tau_direct(dp,
                                                                 self.lam))

    def test_incremental_needs_direct_link(self):
        with self.assertRaises(DomainError):
            tau_incremental(base_derived(), self.lam, OutageTier.NO_DIRECT)

    def test_gap_from_direct_link(self):
        dp = base_derived(n_antennas=2)
        cooperative = throughput(dp, self.lam, OutageTier.HIGH_MARGIN)
        relay_only = throughput(dp, self.lam, OutageTier.HIGH_MARGIN,
                                TransmissionMode.NO_DIRECT)
        self.assertAlmostEqual(tau_gap_direct(dp, self.lam),
                               cooperative.tau - relay_only.tau, delta=1e-12)

    def test_tau_bounds(self):
        for n in (1, 3):
            for mode in TransmissionMode:
                dp = base_derived(n_antennas=n, rate=2.5)
                tau = throughput(dp, self.lam, mode=mode).tau
                self.assertGreaterEqual(tau, 0.0)
                self.assertLessEqual(tau, dp.rate)

    def test_surrogate(self):
        lam = lambdas_from_geometry(OPTIMUM_GEOMETRY)
        for scheme in EHScheme:
            dp = base_derived(scheme=scheme)
            value = surrogate_throughput(dp, lam)
            self.assertTrue(math.isfinite(value))
            self.assertLessEqual(value, 0.5 * dp.rate)
            self.assertGreaterEqual(
                value, surrogate_throughput(dp, lam,
                                            TransmissionMode.NO_DIRECT))
            self.assertAlmostEqual(
                surrogate_throughput(dp, lam, TransmissionMode.INCREMENTAL),
                value + 0.5 * dp.zeta * dp.rate * q2(dp, lam), delta=1e-12)
        with self.assertRaises(DomainError):
            surrogate_throughput(base_derived(n_antennas=2), lam)
        with self.assertRaises(DomainError):
            surrogate_throughput(base_derived(), lam,
                                 TransmissionMode.DIRECT_ONLY)


if __name__ == '__main__':
    unittest.main()
