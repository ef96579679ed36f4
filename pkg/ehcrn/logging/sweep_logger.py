from abc import ABC
from typing import List, TYPE_CHECKING

from ehcrn.core import SweepCallbacks

if TYPE_CHECKING:
    from ehcrn.sweep.results import ResultRow
    from ehcrn.sweep.runner import SweepRunner
    from ehcrn.sweep.validation import CheckResult


class SweepLogger(SweepCallbacks[None], ABC):
    """
    The base class for the sweep loggers.

    Sweep loggers receive events, under the form of callback calls, from
    the :class:`SweepRunner`, carrying a reference to the runner as well as
    the rows produced so far.

    Each child class should implement the `log_row` method, which specifies
    how to report a result row to the user. The `log_row` method is invoked
    by default on each `after_row` callback. Child classes may override the
    other callbacks to customize the logger behavior.

    Make sure, when overriding callbacks, to call the proper `super` method.
    """

    def __init__(self):
        super().__init__()

    def log_row(self, row: 'ResultRow') -> None:
        """
        Reports one result row. Invoked once per row, in output order.

        :param row: The row to be logged.
        :return: None
        """
        pass

    def log_check(self, check: 'CheckResult') -> None:
        """
        Reports the outcome of one validation check.

        :param check: The check result.
        :return: None
        """
        pass

    def after_row(self, runner: 'SweepRunner', row: 'ResultRow', **kwargs):
        self.log_row(row)

    def after_check(self, runner: 'SweepRunner', check: 'CheckResult',
                    **kwargs):
        self.log_check(check)

    def before_point(self, runner: 'SweepRunner', value, **kwargs):
        pass

    def after_point(self, runner: 'SweepRunner', value,
                    rows: List['ResultRow'], **kwargs):
        pass


__all__ = ['SweepLogger']
