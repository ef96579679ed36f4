################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 19-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################
import csv
import sys
from typing import List, TYPE_CHECKING

from ehcrn.logging.sweep_logger import SweepLogger
from ehcrn.sweep.config import render
from ehcrn.sweep.results import OPTIMIZE_HEADER, SWEEP_HEADER, row_fields

if TYPE_CHECKING:
    from ehcrn.sweep.results import ResultRow
    from ehcrn.sweep.runner import SweepRunner


class CSVLogger(SweepLogger):
    """
    Writes the result rows of a sweep as CSV.

    The file starts with a block of ``#`` comment lines holding the tool
    version and the full configuration, followed by the header and one
    line per row, in row order. Nothing time-dependent is written, so the
    same spec and seed always give the same bytes.
    """

    def __init__(self, file=sys.stdout):
        """
        :param file: an open text file the CSV is written to. It should be
            opened with ``newline=''``.
        """
        super().__init__()
        self.file = file
        self._writer = csv.writer(file, lineterminator='\n')
        self._with_optimum = False

    def before_sweep(self, runner: 'SweepRunner', **kwargs):
        from ehcrn import __version__
        self._with_optimum = runner.optimizing
        command = 'optimize' if runner.optimizing else 'sweep'
        self.file.write(f'# ehcrn {__version__} {command}\n')
        for line in render(runner.spec).splitlines():
            if not line.startswith('#'):
                self.file.write(f'# {line}\n')
        self._writer.writerow(OPTIMIZE_HEADER if self._with_optimum
                              else SWEEP_HEADER)

    def log_row(self, row: 'ResultRow') -> None:
        self._writer.writerow(row_fields(row, self._with_optimum))

    def after_sweep(self, runner: 'SweepRunner', rows: List['ResultRow'],
                    **kwargs):
        self.file.flush()


__all__ = ['CSVLogger']
