from abc import ABC
from typing import Generic, TypeVar

CallbackResult = TypeVar('CallbackResult')


class SweepCallbacks(Generic[CallbackResult], ABC):
    """
    Sweep callbacks provide access before/after each phase of a parameter
    sweep. Subclasses can override the desired callbacks to customize
    how the sweep is reported. In ehcrn, callbacks are used by
    :class:`SweepLogger` to implement text, progress-bar and CSV output.

    The :class:`SweepRunner` loop follows the structure shown below::

        sweep
            point  # for each axis value
                row  # for each (mode, engine) pair
        check  # for each validation check, `validate` runs only

    The callbacks receive the runner as first argument.
    """

    def __init__(self):
        pass

    def before_sweep(self, *args, **kwargs) -> CallbackResult:
        """ Called before the first axis point by the `SweepRunner`. """
        pass

    def before_point(self, *args, **kwargs) -> CallbackResult:
        """ Called before the rows of an axis point are evaluated. """
        pass

    def after_row(self, *args, **kwargs) -> CallbackResult:
        """ Called once per result row, in output order. """
        pass

    def after_point(self, *args, **kwargs) -> CallbackResult:
        """ Called after all the rows of an axis point were emitted. """
        pass

    def after_sweep(self, *args, **kwargs) -> CallbackResult:
        """ Called after the last axis point by the `SweepRunner`. """
        pass

    def after_check(self, *args, **kwargs) -> CallbackResult:
        """ Called after each check of the validation suite. """
        pass


__all__ = ['SweepCallbacks']
