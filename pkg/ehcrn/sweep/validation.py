################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 24-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Agreement suite between the closed forms and the Monte Carlo oracle.

Each check reproduces one experiment family at desk scale and reports
whether the analytic and empirical results agree within the stated
tolerance. Empirical tolerances are ``max(relative, 3 standard errors)``.
"""

import logging
import math
import warnings
from dataclasses import replace
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, \
    Tuple, Union, TYPE_CHECKING

import numpy as np
from scipy.special import expi, expn

from ehcrn.analytic import OutageTier, TransmissionMode, compute_t, \
    alternating_en_sum, high_margin_argument, outage, p2_full, p2_no_rp, \
    p_full, p_no_direct, throughput, tau_incremental_gap_limit
from ehcrn.errors import EhcrnError
from ehcrn.model import EHScheme, ProtocolConfig, SystemGeometry, \
    db_to_linear, derive, lambdas_from_geometry
from ehcrn.montecarlo import Combining, MonteCarloEstimate, estimate
from ehcrn.optimize import audit_closed_forms, analytic_objective, \
    rho_star_numeric
from ehcrn.specfun import expint_ei, expint_en, expint_en_scaled

if TYPE_CHECKING:
    from ehcrn.logging import SweepLogger

logger = logging.getLogger(__name__)

BASE_GEOMETRY = SystemGeometry()
BASE_CONFIG = ProtocolConfig(scheme=EHScheme.PS, rho=0.4, eta=0.7,
                             n_antennas=1, rate=1.0,
                             i_over_n0=db_to_linear(6.0))
OPTIMUM_CONFIG = replace(BASE_CONFIG, rate=3.0)
OPTIMUM_GEOMETRY = replace(BASE_GEOMETRY, d_sr=1.5)
# relay moved along the S-D line, primary receiver 4 away from S and R
RELAY_LINE_GEOMETRY = replace(BASE_GEOMETRY, d_sd=4.0, d_sp=4.0, d_rp=4.0)
RELAY_POSITIONS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5)
RHO_GRID = np.linspace(0.01, 0.99, 99)
LIMIT_RATE = 1e8


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _agrees(analytic: float, mc: MonteCarloEstimate, relative: float,
            n_se: float = 3.0) -> bool:
    return abs(analytic - mc.value) <= max(relative * mc.value,
                                           n_se * mc.std_error)


def _single_peak(values: Sequence[float], flat: float = 1e-12) -> bool:
    steps = np.diff(np.asarray(values, dtype=float))
    signs = [s for s in np.sign(steps[np.abs(steps) > flat]) if s != 0]
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return changes <= 1


def random_operating_point(rng: np.random.Generator,
                           max_antennas: int = 4) \
        -> Tuple[ProtocolConfig, SystemGeometry]:
    """ Draws a random operating point of moderate size. """
    d_sr, d_rd, d_sp, d_rp = rng.uniform(0.8, 3.0, 4)
    geometry = SystemGeometry(d_sr=d_sr, d_rd=d_rd, d_sp=d_sp, d_rp=d_rp,
                              d_sd=d_sr + d_rd, epsilon=4.0)
    config = ProtocolConfig(
        scheme=EHScheme.PS if rng.random() < 0.5 else EHScheme.TS,
        rho=rng.uniform(0.1, 0.9), eta=rng.uniform(0.5, 1.0),
        n_antennas=int(rng.integers(1, max_antennas + 1)),
        rate=rng.uniform(0.5, 2.0),
        i_over_n0=db_to_linear(rng.uniform(0.0, 20.0)))
    return config, geometry


class ValidationSuite:
    """
    Runs the agreement checks and reports each result to the loggers
    through the `after_check` callback.
    """

    def __init__(self, trials: int = 10 ** 6,
                 optimize_trials: int = 10 ** 5, seed: int = 0,
                 workers: Optional[int] = None,
                 loggers: Union['SweepLogger',
                                Sequence['SweepLogger']] = None):
        self.trials = trials
        self.optimize_trials = optimize_trials
        self.seed = seed
        self.workers = workers
        if loggers is None:
            loggers = []
        elif not isinstance(loggers, Sequence):
            loggers = [loggers]
        self.loggers = loggers
        self._cache: Dict[tuple, Dict[str, MonteCarloEstimate]] = {}

    @property
    def checks(self) -> List[Tuple[str, Callable[[], CheckResult]]]:
        return [
            ('outage_vs_snr', self.check_outage_vs_snr),
            ('approximation_tiers', self.check_approximation_tiers),
            ('throughput_vs_rho', self.check_throughput_vs_rho),
            ('closed_form_optimum', self.check_closed_form_optimum),
            ('incremental_gain', self.check_incremental_gain),
            ('event_algebra', self.check_event_algebra),
            ('throughput_vs_antennas', self.check_throughput_vs_antennas),
            ('mrc_over_sc', self.check_mrc_over_sc),
            ('special_functions', self.check_special_functions),
            ('limit_consistency', self.check_limit_consistency),
        ]

    def run(self) -> List[CheckResult]:
        results = []
        for name, check in self.checks:
            logger.info('running check %s', name)
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter('ignore')
                    result = check()
            except (EhcrnError, ArithmeticError, ValueError) as e:
                result = CheckResult(name, False,
                                     f'{type(e).__name__}: {e}')
            for sweep_logger in self.loggers:
                sweep_logger.after_check(self, result)
            results.append(result)
        return results

    def _estimate(self, config: ProtocolConfig, geometry: SystemGeometry,
                  mode: TransmissionMode = TransmissionMode.COOPERATIVE,
                  combining: Combining = Combining.MRC,
                  trials: Optional[int] = None) \
            -> Dict[str, MonteCarloEstimate]:
        trials = trials or self.trials
        key = (config, geometry, mode, combining, trials)
        if key not in self._cache:
            self._cache[key] = estimate(config, geometry, mode, combining,
                                        trials, self.seed,
                                        workers=self.workers)
        return self._cache[key]

    def _snr_grid(self):
        for n in (1, 2, 3):
            for db in range(0, 21, 2):
                yield n, db, replace(BASE_CONFIG, n_antennas=n,
                                     i_over_n0=db_to_linear(db))

    def check_outage_vs_snr(self) -> CheckResult:
        lam = lambdas_from_geometry(BASE_GEOMETRY)
        misses = []
        by_snr = {}
        for n, db, config in self._snr_grid():
            analytic = p_full(derive(config), lam).p
            mc = self._estimate(config, BASE_GEOMETRY)['p']
            if not _agrees(analytic, mc, 0.03):
                misses.append(f'L={n} {db}dB: {analytic:.4g} vs '
                              f'{mc.value:.4g}')
            by_snr.setdefault(db, []).append(analytic)
        not_decreasing = [db for db, ps in by_snr.items()
                          if any(b >= a for a, b in zip(ps, ps[1:]))]
        if not_decreasing:
            misses.append(f'not decreasing in L at {not_decreasing} dB')
        return CheckResult('outage_vs_snr', not misses,
                           '; '.join(misses) or '33 points agree')

    def check_approximation_tiers(self) -> CheckResult:
        lam = lambdas_from_geometry(BASE_GEOMETRY)
        misses = []
        for n, db, config in self._snr_grid():
            dp = derive(config)
            mc = self._estimate(config, BASE_GEOMETRY)['p']
            no_rp = outage(dp, lam, OutageTier.NO_RP).p
            if not _agrees(no_rp, mc, 0.03):
                misses.append(f'no_rp L={n} {db}dB')
            if db >= 10:
                high = outage(dp, lam, OutageTier.HIGH_MARGIN).p
                if not _agrees(high, mc, 0.06):
                    misses.append(f'high_margin L={n} {db}dB')
        return CheckResult('approximation_tiers', not misses,
                           '; '.join(misses) or 'all tiers agree')

    def _argmax(self, objective: Callable[[float], float]) \
            -> Tuple[float, List[float]]:
        values = [objective(float(rho)) for rho in RHO_GRID]
        return float(RHO_GRID[int(np.argmax(values))]), values

    def check_throughput_vs_rho(self) -> CheckResult:
        lam = lambdas_from_geometry(OPTIMUM_GEOMETRY)
        misses = []
        peaks = {}
        modes = (TransmissionMode.COOPERATIVE, TransmissionMode.NO_DIRECT,
                 TransmissionMode.INCREMENTAL)
        for scheme in EHScheme:
            config = replace(OPTIMUM_CONFIG, scheme=scheme)
            for mode in modes:
                rho_a, values = self._argmax(
                    analytic_objective(config, lam, mode))
                if not _single_peak(values):
                    misses.append(f'{scheme.value}/{mode.value} not '
                                  f'unimodal')

                def empirical(rho, config=config, mode=mode):
                    return self._estimate(replace(config, rho=rho),
                                          OPTIMUM_GEOMETRY, mode,
                                          trials=self.optimize_trials)[
                        'tau'].value
                rho_mc, _ = self._argmax(empirical)
                if abs(rho_a - rho_mc) > 0.05:
                    misses.append(f'{scheme.value}/{mode.value} argmax '
                                  f'{rho_a:.2f} vs {rho_mc:.2f}')
                peaks[scheme, mode] = rho_a
        cooperative = TransmissionMode.COOPERATIVE
        if not peaks[EHScheme.TS, cooperative] < \
                peaks[EHScheme.PS, cooperative]:
            misses.append('TS optimum is not below PS optimum')
        return CheckResult('throughput_vs_rho', not misses,
                           '; '.join(misses) or 'peaks agree')

    def check_closed_form_optimum(self) -> CheckResult:
        rng = np.random.default_rng(self.seed)
        points = [(OPTIMUM_CONFIG, OPTIMUM_GEOMETRY)]
        while len(points) < 6:
            config, geometry = random_operating_point(rng, max_antennas=1)
            lam = lambdas_from_geometry(geometry)
            if lam.sp / derive(config).psi >= 20.0:
                points.append((config, geometry))
        misses = []
        widest = 0.0
        for k, (config, geometry) in enumerate(points):
            lam = lambdas_from_geometry(geometry)
            for record in audit_closed_forms(config, lam, surrogate=True):
                if record.discrepancy > 0.05:
                    misses.append(f'point {k} {record.variant.label}: '
                                  f'{record.discrepancy:.3f}')
                exact = rho_star_numeric(analytic_objective(
                    replace(config, scheme=record.variant.scheme), lam,
                    record.variant.mode))
                widest = max(widest, abs(record.closed_form.rho_star -
                                         exact.rho_star))
        return CheckResult('closed_form_optimum', not misses,
                           '; '.join(misses) or
                           f'all within 0.05 of the approximate optimum, '
                           f'{widest:.3f} from the exact one at most')

    def check_incremental_gain(self) -> CheckResult:
        lam = lambdas_from_geometry(BASE_GEOMETRY)
        misses = []
        for scheme in EHScheme:
            for n in (1, 2, 4):
                for rho in (0.2, 0.4, 0.6, 0.8):
                    dp = derive(replace(BASE_CONFIG, scheme=scheme, rho=rho,
                                        n_antennas=n))
                    # raises ConsistencyError beyond 1e-8
                    incremental = throughput(dp, lam, mode=TransmissionMode
                                             .INCREMENTAL)
                    if incremental.tau < throughput(dp, lam).tau:
                        misses.append(f'{scheme.value} L={n} rho={rho}')
        dp = derive(replace(BASE_CONFIG, n_antennas=8))
        gap = throughput(dp, lam, mode=TransmissionMode.INCREMENTAL).tau - \
            throughput(dp, lam).tau
        limit = tau_incremental_gap_limit(dp, lam)
        if abs(gap - limit) > 0.02 * limit:
            misses.append(f'L=8 gap {gap:.4g} vs limit {limit:.4g}')
        return CheckResult('incremental_gain', not misses,
                           '; '.join(misses) or 'gain matches')

    def check_event_algebra(self) -> CheckResult:
        config = replace(BASE_CONFIG, n_antennas=2)
        lam = lambdas_from_geometry(BASE_GEOMETRY)
        dp = derive(config)
        misses = []
        for mode in (TransmissionMode.COOPERATIVE,
                     TransmissionMode.INCREMENTAL):
            est = self._estimate(config, BASE_GEOMETRY, mode)
            hits = {k: round(v.value * v.trials) for k, v in est.items()
                    if k != 'tau'}
            n = est['p'].trials
            if hits['p'] != hits['p1'] + hits['p2']:
                misses.append(f'{mode.value}: p != p1 + p2')
            if hits['q1'] + hits['p'] + hits['p3'] != n:
                misses.append(f'{mode.value}: q1 + p + p3 != 1')
        report = throughput(dp, lam, mode=TransmissionMode.INCREMENTAL)
        est = self._estimate(config, BASE_GEOMETRY,
                             TransmissionMode.INCREMENTAL)
        for name in ('p3', 'q2'):
            analytic = getattr(report.components, name)
            if not _agrees(analytic, est[name], 0.0):
                misses.append(f'{name}: {analytic:.5g} vs '
                              f'{est[name].value:.5g}')
        return CheckResult('event_algebra', not misses,
                           '; '.join(misses) or 'identities hold')

    def check_throughput_vs_antennas(self) -> CheckResult:
        misses = []
        for n in range(1, 9):
            config = replace(BASE_CONFIG, n_antennas=n, rate=4.5)
            tau = self._estimate(config, BASE_GEOMETRY)['tau'].value
            tau_in = self._estimate(config, BASE_GEOMETRY,
                                    TransmissionMode.INCREMENTAL)[
                'tau'].value
            if tau_in < tau:
                misses.append(f'L={n}: tau_in < tau')
            if n == 1:
                tau_dir = self._estimate(config, BASE_GEOMETRY,
                                         TransmissionMode.DIRECT_ONLY)[
                    'tau'].value
                if not tau < tau_dir < tau_in:
                    misses.append(f'L=1: expected tau < tau_dir < tau_in, '
                                  f'got {tau:.4g}, {tau_dir:.4g}, '
                                  f'{tau_in:.4g}')
        return CheckResult('throughput_vs_antennas', not misses,
                           '; '.join(misses) or 'ordering holds')

    def check_mrc_over_sc(self, positions: Sequence[float] =
                          RELAY_POSITIONS) -> CheckResult:
        config = replace(BASE_CONFIG, n_antennas=2, rate=4.0,
                         i_over_n0=db_to_linear(9.0))
        # bits a successful block delivers
        step = 0.5 * config.rate * derive(config).zeta
        misses = []
        smallest = math.inf
        for d_sr in positions:
            geometry = replace(RELAY_LINE_GEOMETRY, d_sr=d_sr,
                               d_rd=RELAY_LINE_GEOMETRY.d_sd - d_sr)
            mrc = self._estimate(config, geometry)['tau']
            sc = self._estimate(config, geometry,
                                combining=Combining.SC)['tau']
            # on shared draws MRC succeeds whenever SC does, so the gap is
            # step times the fraction of blocks only MRC delivers
            share = min(max((mrc.value - sc.value) / step, 0.0), 1.0)
            spread = 3.0 * step * math.sqrt(share * (1.0 - share) /
                                            mrc.trials)
            gap = mrc.value - sc.value
            if not gap > spread:
                misses.append(f'd_sr={d_sr}: {mrc.value:.4g} vs '
                              f'{sc.value:.4g}')
            smallest = min(smallest, gap)
        return CheckResult('mrc_over_sc', not misses,
                           '; '.join(misses) or
                           f'MRC ahead everywhere, by {smallest:.4g} at '
                           f'least')

    def check_special_functions(self) -> CheckResult:
        misses = []
        for n in range(1, 13):
            for x in np.logspace(-6, 2, 50):
                identity = n * expint_en_scaled(n + 1, x) + \
                    x * expint_en_scaled(n, x)
                if abs(identity - 1.0) > 1e-10:
                    misses.append(f'recurrence n={n} x={x:.3g}')
        rng = np.random.default_rng(self.seed)
        for _ in range(100):
            n = int(rng.integers(1, 13))
            x = float(10.0 ** rng.uniform(-3.0, 2.0))
            if abs(expint_en(n, x) - expn(n, x)) > 1e-10 * expn(n, x):
                misses.append(f'E_{n}({x:.4g})')
            if abs(expint_ei(x) - expi(x)) > 1e-10 * abs(expi(x)):
                misses.append(f'Ei({x:.4g})')
        x = high_margin_argument(derive(BASE_CONFIG),
                                 lambdas_from_geometry(BASE_GEOMETRY))
        sums = [alternating_en_sum(x, n) for n in (2, 4, 8, 12)]
        if any(not 0.0 <= s <= 1.0 for s in sums) or sums[-1] < 0.99:
            misses.append(f'antenna sum {sums}')
        return CheckResult('special_functions', not misses,
                           '; '.join(misses[:10]) or 'all within 1e-10')

    def check_limit_consistency(self) -> CheckResult:
        rng = np.random.default_rng(self.seed)
        misses = 0
        for _ in range(50):
            config, geometry = random_operating_point(rng)
            dp = derive(config)
            lam = lambdas_from_geometry(geometry)
            far_primary = replace(lam, rp=LIMIT_RATE)
            far_direct = replace(lam, sd=LIMIT_RATE)
            if abs(p2_no_rp(dp, lam) -
                   p2_full(dp, far_primary,
                           compute_t(dp, far_primary))) > 1e-4:
                misses += 1
            if abs(p_no_direct(dp, lam).p - p_full(dp, far_direct).p) > \
                    1e-4:
                misses += 1
        return CheckResult('limit_consistency', misses == 0,
                           f'{misses} of 100 comparisons off by more '
                           f'than 1e-4')


def validate(trials: int = 10 ** 6, optimize_trials: int = 10 ** 5,
             seed: int = 0, workers: Optional[int] = None,
             loggers=None) -> List[CheckResult]:
    """ Runs the whole agreement suite, see :class:`ValidationSuite`. """
    return ValidationSuite(trials, optimize_trials, seed, workers,
                           loggers).run()


__all__ = [
    'CheckResult',
    'ValidationSuite',
    'random_operating_point',
    'validate'
]
