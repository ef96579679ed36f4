""" Sweep configuration, runner and validation suite tests """

import io
import math
import unittest
import warnings
from dataclasses import replace

import numpy as np

from ehcrn.analytic import OutageTier, TransmissionMode
from ehcrn.errors import ConfigParseError, ConfigValidationError, \
    RegimeWarning
from ehcrn.logging import CSVLogger, SweepLogger
from ehcrn.model import EHScheme, SystemGeometry, db_to_linear, \
    lambdas_from_geometry
from ehcrn.montecarlo import Combining
from ehcrn.optimize import analytic_objective
from ehcrn.sweep import CheckResult, EngineKind, OPTIMIZE_HEADER, \
    ResultRow, STATUS_UNAVAILABLE, SWEEP_HEADER, SweepAxis, SweepRunner, \
    SweepSpec, ValidationSuite, format_value, parse_config, render, \
    random_operating_point, row_fields, run_optimize, run_sweep

OUTAGE_VS_SNR = """
# outage against the interference temperature
scheme = ps
rho = 0.4
eta = 0.7
L = 2
rs = 1
i_over_n0_db = 6
d_sr = 1.2
d_rd = 1.8
d_sp = 3
d_rp = 3
axis = i_over_n0_db
values = 0:2:20
"""


class RecordingLogger(SweepLogger):
    def __init__(self):
        super().__init__()
        self.rows = []
        self.checks = []
        self.events = []

    def log_row(self, row):
        self.rows.append(row)

    def log_check(self, check):
        self.checks.append(check)

    def before_sweep(self, runner, **kwargs):
        self.events.append('before_sweep')

    def after_point(self, runner, value, rows, **kwargs):
        self.events.append(('point', value, len(rows)))

    def after_sweep(self, runner, rows, **kwargs):
        self.events.append('after_sweep')


class ParseConfigTests(unittest.TestCase):
    def test_minimal(self):
        spec = parse_config(OUTAGE_VS_SNR)
        self.assertIs(spec.config.scheme, EHScheme.PS)
        self.assertEqual(spec.config.n_antennas, 2)
        self.assertAlmostEqual(spec.config.i_over_n0, db_to_linear(6.0))
        self.assertEqual(spec.geometry, SystemGeometry())
        self.assertIs(spec.axis, SweepAxis.I_OVER_N0_DB)
        self.assertEqual(spec.values, tuple(float(x)
                                            for x in range(0, 21, 2)))
        self.assertEqual(spec.modes, (TransmissionMode.COOPERATIVE,))
        self.assertEqual(spec.engines, (EngineKind.ANALYTIC,))
        self.assertEqual(spec.trials, 10 ** 6)

    def test_keys_are_case_insensitive(self):
        spec = parse_config('SCHEME = TS\nRho = 0.3  # comment\n')
        self.assertIs(spec.config.scheme, EHScheme.TS)
        self.assertEqual(spec.config.rho, 0.3)

    def test_lists_are_normalized(self):
        spec = parse_config('modes = incremental, cooperative, incremental\n'
                            'engines = montecarlo, analytic\n'
                            'combining = SC\ntier = no_rp\n')
        self.assertEqual(spec.modes, (TransmissionMode.COOPERATIVE,
                                      TransmissionMode.INCREMENTAL))
        self.assertEqual(spec.engines, (EngineKind.ANALYTIC,
                                        EngineKind.MONTECARLO))
        self.assertIs(spec.combining, Combining.SC)
        self.assertIs(spec.tier, OutageTier.NO_RP)

    def test_default_value_is_base_point(self):
        spec = parse_config('axis = rho\nrho = 0.25\n')
        self.assertEqual(spec.values, (0.25,))

    def test_rho_out_of_range(self):
        with self.assertRaises(ConfigValidationError) as cm:
            parse_config('rho = 1.0\n')
        self.assertIn('rho must lie in (0,1)', str(cm.exception))

    def test_unknown_key(self):
        with self.assertRaises(ConfigParseError) as cm:
            parse_config('rho = 0.4\nfoo = 1\n')
        self.assertEqual(cm.exception.key, 'foo')
        self.assertEqual(cm.exception.lineno, 2)
        self.assertIn('foo', str(cm.exception))

    def test_malformed(self):
        with self.assertRaises(ConfigParseError):
            parse_config('rho 0.4\n')
        with self.assertRaises(ConfigParseError):
            parse_config('L = 2.5\n')
        with self.assertRaises(ConfigParseError):
            parse_config('values = 0:2\n')
        with self.assertRaises(ConfigParseError):
            parse_config('modes = sometimes\n')

    def test_repeated_key(self):
        with self.assertRaises(ConfigParseError) as cm:
            parse_config('i_over_n0_db = 3\ni_over_n0 = 2\n')
        self.assertEqual(cm.exception.lineno, 2)

    def test_validation(self):
        with self.assertRaises(ConfigValidationError):
            parse_config('modes =\n')
        with self.assertRaises(ConfigValidationError):
            parse_config('values = 3, 1\n')
        with self.assertRaises(ConfigValidationError):
            parse_config('trials = 10\n')
        with self.assertRaises(ConfigValidationError):
            parse_config('axis = rho\nvalues = 0.5, 1.0\n')
        with self.assertRaises(ConfigValidationError):
            parse_config('axis = l\nvalues = 1, 1.5\n')

    def test_round_trip(self):
        specs = [
            parse_config(OUTAGE_VS_SNR),
            SweepSpec(),
            SweepSpec(axis=SweepAxis.D_SR, values=(0.5, 1.0, 2.5),
                      collinear=True, modes=tuple(TransmissionMode),
                      engines=tuple(EngineKind), combining=Combining.SC,
                      tier=OutageTier.HIGH_MARGIN, trials=5000, seed=11),
            SweepSpec(axis=SweepAxis.RS, values=(1.0, 2.0), reoptimize=True),
        ]
        for spec in specs:
            self.assertEqual(parse_config(render(spec)), spec)

    def test_collinear_point(self):
        spec = SweepSpec(axis=SweepAxis.D_SR, values=(0.5, 2.0),
                         collinear=True)
        _, geometry = spec.point(0.5)
        self.assertEqual(geometry.d_rd, 2.5)
        self.assertEqual(geometry.d_sd, 3.0)
        spec = replace(spec, collinear=False)
        _, geometry = spec.point(0.5)
        self.assertEqual(geometry.d_rd, 1.8)


class ResultRowTests(unittest.TestCase):
    def test_format(self):
        self.assertEqual(format_value(None), '')
        self.assertEqual(format_value(math.nan), '')
        self.assertEqual(format_value(1.0 / 3.0), '0.333333333333')
        self.assertEqual(format_value('ps'), 'ps')
        self.assertEqual(format_value(1e6 * math.sqrt(2.0)), '1414213.56237')
        failed = ResultRow(axis=1.0, mode='cooperative', engine='analytic',
                           status='error: boom')
        self.assertEqual(row_fields(failed)[3:8], [''] * 5)

    def test_fields(self):
        row = ResultRow(axis=2.0, mode='cooperative', engine='analytic',
                        p1=0.1, p2=0.2, p=0.3, tau=0.35)
        self.assertEqual(len(row_fields(row)), len(SWEEP_HEADER))
        self.assertEqual(len(row_fields(row, True)), len(OPTIMIZE_HEADER))
        self.assertEqual(row_fields(row)[-2:], ['', 'ok'])
        self.assertFalse(row.failed)
        self.assertFalse(replace(row, status=STATUS_UNAVAILABLE).failed)
        self.assertTrue(replace(row, status='error: boom').failed)


class RunnerTests(unittest.TestCase):
    def test_row_order(self):
        spec = SweepSpec(values=(0.0, 10.0),
                         modes=(TransmissionMode.INCREMENTAL,
                                TransmissionMode.COOPERATIVE),
                         engines=(EngineKind.MONTECARLO,
                                  EngineKind.ANALYTIC),
                         trials=2000)
        recorder = RecordingLogger()
        rows = run_sweep(spec, recorder, workers=2)
        self.assertEqual(rows, recorder.rows)
        self.assertEqual(
            [(r.axis, r.mode, r.engine) for r in rows],
            [(v, m, e) for v in (0.0, 10.0)
             for m in ('cooperative', 'incremental')
             for e in ('analytic', 'montecarlo')])
        self.assertEqual(recorder.events,
                         ['before_sweep', ('point', 0.0, 4),
                          ('point', 10.0, 4), 'after_sweep'])
        for row in rows:
            self.assertEqual(row.status, 'ok')
            self.assertEqual(row.std_error is None,
                             row.engine == 'analytic')

    def test_workers_do_not_change_rows(self):
        spec = SweepSpec(values=(0.0, 6.0), engines=tuple(EngineKind),
                         trials=3000)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            self.assertEqual(run_sweep(spec), run_sweep(spec, workers=3))

    def test_fail_soft(self):
        spec = SweepSpec(axis=SweepAxis.L, values=(1.0, 11.0),
                         modes=(TransmissionMode.COOPERATIVE,
                                TransmissionMode.DIRECT_ONLY))
        rows = run_sweep(spec, RecordingLogger())
        self.assertEqual(len(rows), 4)
        failed = [row for row in rows if row.failed]
        self.assertEqual(len(failed), 1)
        self.assertEqual((failed[0].axis, failed[0].mode),
                         (11.0, 'cooperative'))
        self.assertIn('StabilityError', failed[0].status)
        self.assertTrue(math.isnan(failed[0].tau))

    def test_rows_by_point(self):
        spec = SweepSpec(axis=SweepAxis.RHO, values=(0.2, 0.4))
        runner = SweepRunner(spec, RecordingLogger())
        runner.run()
        rows = runner.get_rows()
        self.assertEqual(sorted(rows), [0.2, 0.4])
        self.assertEqual(len(rows[0.2]), 1)

    def test_no_logger_warning(self):
        with self.assertWarns(UserWarning):
            SweepRunner(SweepSpec())

    def test_csv_is_deterministic(self):
        spec = SweepSpec(values=(0.0, 4.0), engines=tuple(EngineKind),
                         trials=2000, seed=5)
        outputs = []
        for workers in (None, 2):
            buffer = io.StringIO()
            run_sweep(spec, CSVLogger(buffer), workers=workers)
            outputs.append(buffer.getvalue())
        self.assertEqual(outputs[0], outputs[1])
        lines = outputs[0].splitlines()
        self.assertTrue(lines[0].startswith('# ehcrn '))
        header = lines.index(','.join(SWEEP_HEADER))
        self.assertTrue(all(line.startswith('# ') for line in lines[:header]))
        self.assertEqual(len(lines) - header - 1, 4)


class OptimizeRunTests(unittest.TestCase):
    def test_single_antenna(self):
        spec = SweepSpec(modes=(TransmissionMode.COOPERATIVE,
                                TransmissionMode.INCREMENTAL,
                                TransmissionMode.DIRECT_ONLY))
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', RegimeWarning)
            rows = run_optimize(spec, RecordingLogger())
        self.assertEqual([(r.axis, r.method) for r in rows],
                         [('ps', 'closed_form'), ('ps', 'golden_section'),
                          ('in-ps', 'closed_form'),
                          ('in-ps', 'golden_section')])
        self.assertEqual(rows[0].rho_star, rows[2].rho_star)
        for row in rows:
            self.assertEqual(row.status, 'ok')
            self.assertGreater(row.rho_star, 0.0)
            self.assertLess(row.rho_star, 1.0)

    def test_multiple_antennas(self):
        spec = SweepSpec(config=replace(SweepSpec().config, n_antennas=2),
                         engines=tuple(EngineKind), optimize_trials=2000)
        rows = run_optimize(spec, RecordingLogger())
        self.assertEqual(len(rows), 3)
        self.assertEqual(rows[0].status, STATUS_UNAVAILABLE)
        self.assertFalse(rows[0].failed)
        self.assertEqual([r.engine for r in rows[1:]],
                         ['analytic', 'montecarlo'])
        self.assertIsNotNone(rows[2].std_error)

    def test_along_rate_axis(self):
        spec = SweepSpec(config=replace(SweepSpec().config, n_antennas=2),
                         axis=SweepAxis.RS, values=(1.0, 2.0, 3.0),
                         modes=(TransmissionMode.COOPERATIVE,
                                TransmissionMode.INCREMENTAL),
                         reoptimize=True)
        recorder = RecordingLogger()
        rows = run_optimize(spec, recorder)
        self.assertEqual(
            [(r.axis, r.mode) for r in rows],
            [(v, m) for v in (1.0, 2.0, 3.0)
             for m in ('cooperative', 'incremental') for _ in range(2)])
        for closed in rows[::2]:
            self.assertEqual(
                (closed.method, closed.status),
                ('closed_form', STATUS_UNAVAILABLE))
        self.assertEqual(recorder.events[1], ('point', 1.0, 4))
        for row in rows[1::2]:
            self.assertEqual(row.status, 'ok')
            self.assertIn(row.method, ('golden_section', 'grid_refine'))
            config, _ = spec.point(row.axis)
            objective = analytic_objective(config,
                                           lambdas_from_geometry(
                                               spec.geometry),
                                           TransmissionMode(row.mode))
            self.assertAlmostEqual(row.tau, objective(row.rho_star))
            for rho in (0.1, 0.5, 0.9):
                self.assertGreaterEqual(row.tau + 1e-12, objective(rho))

    def test_along_axis_matches_base_point(self):
        base = SweepSpec(engines=(EngineKind.ANALYTIC,))
        along = replace(base, axis=SweepAxis.D_SR,
                        values=(base.geometry.d_sr,), reoptimize=True)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', RegimeWarning)
            single = run_optimize(base, RecordingLogger())
            swept = run_optimize(along, RecordingLogger())
        self.assertEqual([replace(r, axis=None) for r in single],
                         [replace(r, axis=None) for r in swept])

    def test_reoptimize_needs_other_axis(self):
        with self.assertRaises(ConfigValidationError):
            SweepSpec(axis=SweepAxis.RHO, reoptimize=True)
        with self.assertRaises(ConfigValidationError):
            parse_config('axis = rho\nreoptimize = true\n')

    def test_csv_header(self):
        buffer = io.StringIO()
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', RegimeWarning)
            run_optimize(SweepSpec(), CSVLogger(buffer))
        lines = buffer.getvalue().splitlines()
        self.assertTrue(lines[0].endswith(' optimize'))
        self.assertIn(','.join(OPTIMIZE_HEADER), lines)


class ValidationSuiteTests(unittest.TestCase):
    class _Suite(ValidationSuite):
        @property
        def checks(self):
            return [('passes', lambda: CheckResult('passes', True, 'fine')),
                    ('raises', self._explode)]

        def _explode(self):
            raise ArithmeticError('diverged')

    def test_dispatch(self):
        recorder = RecordingLogger()
        results = self._Suite(trials=1000, loggers=recorder).run()
        self.assertEqual(recorder.checks, results)
        self.assertEqual([r.passed for r in results], [True, False])
        self.assertEqual(results[1].name, 'raises')
        self.assertIn('ArithmeticError: diverged', results[1].detail)

    def test_checks_are_listed(self):
        names = [name for name, _ in ValidationSuite().checks]
        self.assertEqual(len(names), 10)
        self.assertEqual(len(set(names)), 10)

    def test_incremental_gain_check(self):
        result = ValidationSuite().check_incremental_gain()
        self.assertTrue(result.passed, result.detail)

    def test_closed_form_optimum_check(self):
        result = ValidationSuite().check_closed_form_optimum()
        self.assertTrue(result.passed, result.detail)

    def test_mrc_over_sc_check(self):
        suite = ValidationSuite(trials=200000)
        result = suite.check_mrc_over_sc(positions=(1.0, 2.0, 3.0))
        self.assertTrue(result.passed, result.detail)

    def test_throughput_vs_antennas_check(self):
        result = ValidationSuite(
            trials=300000).check_throughput_vs_antennas()
        self.assertTrue(result.passed, result.detail)

    def test_random_operating_points(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            config, geometry = random_operating_point(rng, max_antennas=2)
            self.assertIn(config.n_antennas, (1, 2))
            self.assertTrue(0.1 <= config.rho <= 0.9)
            self.assertAlmostEqual(geometry.d_sd, geometry.d_sr + geometry.d_rd)


if __name__ == '__main__':
    unittest.main()
