################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 18-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################
import sys
from typing import List, TYPE_CHECKING

from ehcrn.logging.sweep_logger import SweepLogger

if TYPE_CHECKING:
    from ehcrn.sweep.results import ResultRow
    from ehcrn.sweep.runner import SweepRunner
    from ehcrn.sweep.validation import CheckResult

_QUANTITIES = ('p1', 'p2', 'p', 'tau', 'std_error', 'rho_star')


class TextLogger(SweepLogger):
    """
    The `TextLogger` class provides logging facilities printed to a user
    specified file. The logger writes the results of every axis point once
    all of its rows are available, one ``name = value`` line per quantity.

    .. note::
        Rows that failed are reported with their status instead of their
        values. Use a :class:`CSVLogger` to keep a machine-readable copy of
        the results.
    """
    def __init__(self, file=sys.stdout):
        """
        Creates an instance of `TextLogger` class.

        :param file: destination file to which print results
            (default=sys.stdout).
        """
        super().__init__()
        self.file = file
        self.row_vals = {}

    def log_row(self, row: 'ResultRow') -> None:
        prefix = f'{row.mode}/{row.engine}'
        if row.method is not None:
            prefix += f'/{row.method}'
        if row.status != 'ok':
            self.row_vals[f'{prefix}/status'] = row.status
            return
        for quantity in _QUANTITIES:
            val = getattr(row, quantity)
            if val is not None:
                self.row_vals[f'{prefix}/{quantity}'] = val

    def log_check(self, check: 'CheckResult') -> None:
        verdict = 'PASS' if check.passed else 'FAIL'
        print(f'\t{check.name} = {verdict} ({check.detail})',
              file=self.file, flush=True)

    def _val_to_str(self, val):
        if isinstance(val, float):
            return f'{val:.4f}'
        return str(val)

    def print_current_results(self):
        for name in sorted(self.row_vals):
            val = self._val_to_str(self.row_vals[name])
            print(f'\t{name} = {val}', file=self.file, flush=True)

    def before_sweep(self, runner: 'SweepRunner', **kwargs):
        super().before_sweep(runner, **kwargs)
        print(f'-- >> Start of sweep over {runner.spec.axis.value} << --',
              file=self.file, flush=True)

    def after_point(self, runner: 'SweepRunner', value,
                    rows: List['ResultRow'], **kwargs):
        super().after_point(runner, value, rows, **kwargs)
        by_variant = runner.optimizing and not runner.spec.reoptimize
        axis = 'variant' if by_variant else runner.spec.axis.value
        print(f'> {axis} = {self._val_to_str(value)} ended.', file=self.file,
              flush=True)
        self.print_current_results()
        self.row_vals = {}

    def after_sweep(self, runner: 'SweepRunner', rows: List['ResultRow'],
                    **kwargs):
        super().after_sweep(runner, rows, **kwargs)
        print('-- >> End of sweep << --', file=self.file, flush=True)


__all__ = ['TextLogger']
