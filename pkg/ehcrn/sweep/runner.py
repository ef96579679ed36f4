################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 20-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

import logging
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from copy import copy
from dataclasses import replace
from typing import List, Optional, Sequence, Union, TYPE_CHECKING

from ehcrn.analytic import TransmissionMode, outage, throughput
from ehcrn.errors import EhcrnError
from ehcrn.model import ProtocolConfig, SystemGeometry, derive, \
    lambdas_from_geometry
from ehcrn.montecarlo import estimate, monte_carlo_objective
from ehcrn.optimize import RhoVariant, analytic_objective, \
    rho_star_closed_form, rho_star_numeric
from ehcrn.sweep.config import EngineKind, SweepSpec
from ehcrn.sweep.results import ResultRow, STATUS_UNAVAILABLE

if TYPE_CHECKING:
    from ehcrn.logging import SweepLogger

logger = logging.getLogger(__name__)

_ROW_ERRORS = (EhcrnError, ArithmeticError, ValueError)


def _failed_row(axis, mode: str, engine: str, error: Exception,
                method: Optional[str] = None) -> ResultRow:
    logger.warning('row (%s, %s, %s) failed: %s', axis, mode, engine, error)
    return ResultRow(axis=axis, mode=mode, engine=engine, method=method,
                     status=f'error: {type(error).__name__}: {error}')


class SweepRunner:
    """
    Evaluates a sweep and dispatches its progress to the loggers.

    Rows of one axis point are evaluated by a thread pool when ``workers``
    is greater than 1. They are always emitted in the order
    (axis value, mode, engine). A row whose evaluation raises is kept with
    the error in its status column, the other rows are not affected.

    The runner keeps every emitted row, grouped by axis value, in
    `rows_by_point`.
    """

    def __init__(self, spec: SweepSpec,
                 loggers: Union['SweepLogger',
                                Sequence['SweepLogger']] = None,
                 workers: Optional[int] = None):
        """
        Creates a runner.

        :param spec: The validated sweep.
        :param loggers: The loggers to report the rows to.
        :param workers: Thread-pool size for rows and Monte Carlo chunks.
        """
        self.spec = spec
        self.workers = workers
        if loggers is None:
            loggers = []
        elif not isinstance(loggers, Sequence):
            loggers = [loggers]
        self.loggers: Sequence['SweepLogger'] = loggers
        if len(self.loggers) == 0:
            warnings.warn('No loggers specified, results will not be logged')

        self.optimizing = False
        self.points: List = list(spec.values)
        self.rows_by_point = defaultdict(list)

    def _notify(self, callback: str, *args):
        for sweep_logger in self.loggers:
            getattr(sweep_logger, callback)(self, *args)

    def _map(self, job, tasks) -> list:
        if self.workers is not None and self.workers > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                return list(executor.map(job, tasks))
        return [job(task) for task in tasks]

    def _evaluate(self, value: float, mode: TransmissionMode,
                  engine: EngineKind) -> ResultRow:
        spec = self.spec
        try:
            config, geometry = spec.point(value)
            if engine is EngineKind.ANALYTIC:
                report = throughput(derive(config),
                                    lambdas_from_geometry(geometry),
                                    spec.tier, mode)
                return ResultRow(axis=value, mode=mode.value,
                                 engine=engine.value, p1=report.outage.p1,
                                 p2=report.outage.p2, p=report.outage.p,
                                 tau=report.tau)
            est = estimate(config, geometry, mode, spec.combining,
                           spec.trials, spec.seed, workers=self.workers)
            return ResultRow(axis=value, mode=mode.value, engine=engine.value,
                             p1=est['p1'].value, p2=est['p2'].value,
                             p=est['p'].value, tau=est['tau'].value,
                             std_error=est['p'].std_error)
        except _ROW_ERRORS as e:
            return _failed_row(value, mode.value, engine.value, e)

    def _emit(self, point, rows: List[ResultRow]) -> None:
        for row in rows:
            self.rows_by_point[point].append(row)
            self._notify('after_row', row)
        self._notify('after_point', point, rows)

    def run(self) -> List[ResultRow]:
        """
        Evaluates every (axis value, mode, engine) combination.

        :return: The rows, in output order.
        """
        spec = self.spec
        all_rows = []
        self._notify('before_sweep')
        for value in self.points:
            self._notify('before_point', value)
            tasks = [(value, mode, engine) for mode in spec.modes
                     for engine in spec.engines]
            rows = self._map(lambda task: self._evaluate(*task), tasks)
            self._emit(value, rows)
            all_rows += rows
        self._notify('after_sweep', all_rows)
        return all_rows

    def _optimum_rows(self, mode: TransmissionMode, config: ProtocolConfig,
                      geometry: SystemGeometry, label) -> List[ResultRow]:
        spec = self.spec
        lam = lambdas_from_geometry(geometry)
        variant = RhoVariant.of(config.scheme, mode)
        rows = []

        def analytic_row(optimum, method: str) -> ResultRow:
            breakdown = outage(derive(replace(config, rho=optimum.rho_star)),
                               lam, spec.tier,
                               direct=mode is not TransmissionMode.NO_DIRECT)
            return ResultRow(axis=label, mode=mode.value,
                             engine=EngineKind.ANALYTIC.value,
                             p1=breakdown.p1, p2=breakdown.p2,
                             p=breakdown.p, tau=optimum.tau_at_star,
                             rho_star=optimum.rho_star, method=method)

        if config.n_antennas == 1:
            try:
                closed = rho_star_closed_form(variant, config, lam, spec.tier)
                rows.append(analytic_row(closed, closed.method.value))
            except _ROW_ERRORS as e:
                rows.append(_failed_row(label, mode.value, 'analytic', e,
                                        'closed_form'))
        else:
            rows.append(ResultRow(axis=label, mode=mode.value,
                                  engine=EngineKind.ANALYTIC.value,
                                  status=STATUS_UNAVAILABLE,
                                  method='closed_form'))

        if EngineKind.ANALYTIC in spec.engines:
            try:
                numeric = rho_star_numeric(
                    analytic_objective(config, lam, mode, spec.tier),
                    workers=self.workers)
                rows.append(analytic_row(numeric, numeric.method.value))
            except _ROW_ERRORS as e:
                rows.append(_failed_row(label, mode.value, 'analytic', e,
                                        'numeric'))

        if EngineKind.MONTECARLO in spec.engines:
            try:
                numeric = rho_star_numeric(monte_carlo_objective(
                    config, geometry, mode, spec.optimize_trials, spec.seed,
                    spec.combining, workers=self.workers))
                est = estimate(replace(config, rho=numeric.rho_star),
                               geometry, mode, spec.combining,
                               spec.optimize_trials, spec.seed,
                               workers=self.workers)
                rows.append(ResultRow(
                    axis=label, mode=mode.value,
                    engine=EngineKind.MONTECARLO.value, p1=est['p1'].value,
                    p2=est['p2'].value, p=est['p'].value,
                    tau=est['tau'].value, std_error=est['p'].std_error,
                    rho_star=numeric.rho_star, method=numeric.method.value))
            except _ROW_ERRORS as e:
                rows.append(_failed_row(label, mode.value, 'montecarlo', e,
                                        'numeric'))
        return rows

    def run_optimize(self) -> List[ResultRow]:
        """
        Finds the optimal rho of every requested mode.

        By default only the base operating point is optimized, the axis
        values are ignored and the axis column holds the variant label
        (``ps``, ``nd-ts``, ...). With ``reoptimize`` set in the spec, rho
        is optimized again at every axis value and the axis column holds
        that value.

        :return: The rows, in output order.
        """
        spec = self.spec
        self.optimizing = True
        modes = [m for m in spec.modes
                 if m is not TransmissionMode.DIRECT_ONLY]
        if len(modes) < len(spec.modes):
            logger.info('direct_only does not depend on rho, skipped')
        if spec.reoptimize:
            self.points = list(spec.values)
        else:
            self.points = [RhoVariant.of(spec.config.scheme, m).label
                           for m in modes]
        all_rows = []
        self._notify('before_sweep')
        for k, point in enumerate(self.points):
            self._notify('before_point', point)
            if spec.reoptimize:
                config, geometry = spec.point(point)
                groups = self._map(
                    lambda mode: self._optimum_rows(mode, config, geometry,
                                                    point), modes)
                rows = [row for group in groups for row in group]
            else:
                rows = self._optimum_rows(modes[k], spec.config,
                                          spec.geometry, point)
            self._emit(point, rows)
            all_rows += rows
        self._notify('after_sweep', all_rows)
        return all_rows

    def get_rows(self):
        """
        Return a shallow copy of the dictionary of emitted rows, keyed by
        axis value.
        """
        return copy(self.rows_by_point)


def run_sweep(spec: SweepSpec, loggers=None,
              workers: Optional[int] = None) -> List[ResultRow]:
    """ Evaluates a sweep, see :class:`SweepRunner`. """
    return SweepRunner(spec, loggers, workers).run()


def run_optimize(spec: SweepSpec, loggers=None,
                 workers: Optional[int] = None) -> List[ResultRow]:
    """ Optimizes rho, see :meth:`SweepRunner.run_optimize`. """
    return SweepRunner(spec, loggers, workers).run_optimize()


__all__ = ['SweepRunner', 'run_sweep', 'run_optimize']
