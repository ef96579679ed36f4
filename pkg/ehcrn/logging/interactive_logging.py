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

from tqdm import tqdm

from ehcrn.logging.text_logging import TextLogger

if TYPE_CHECKING:
    from ehcrn.sweep.results import ResultRow
    from ehcrn.sweep.runner import SweepRunner


class InteractiveLogger(TextLogger):
    """
    The `InteractiveLogger` class provides logging facilities for the
    console standard output. The logger shows a progress bar over the axis
    points of a sweep and prints the results of each point as soon as they
    become available.
    """

    def __init__(self):
        super().__init__(file=sys.stdout)
        self._pbar = None

    def before_sweep(self, runner: 'SweepRunner', **kwargs):
        super().before_sweep(runner, **kwargs)
        self._progress.total = len(runner.points)

    def after_point(self, runner: 'SweepRunner', value,
                    rows: List['ResultRow'], **kwargs):
        self._progress.update()
        self._progress.refresh()
        super().after_point(runner, value, rows, **kwargs)

    def after_sweep(self, runner: 'SweepRunner', rows: List['ResultRow'],
                    **kwargs):
        self._end_progress()
        super().after_sweep(runner, rows, **kwargs)

    @property
    def _progress(self):
        if self._pbar is None:
            self._pbar = tqdm(leave=True, position=0, file=sys.stdout)
        return self._pbar

    def _end_progress(self):
        if self._pbar is not None:
            self._pbar.close()
            self._pbar = None


__all__ = ['InteractiveLogger']
