"""
The :py:mod:`logging` module provides the loggers that report the results
of a parameter sweep: plain text on a file (:py:mod:`text_logging`), a
console progress bar (:py:mod:`interactive_logging`) and the CSV result
file (:py:mod:`csv_logger`). Loggers do not compute anything, they only
receive the rows produced by the :class:`SweepRunner` through callbacks.
"""

from .sweep_logger import *
from .text_logging import TextLogger
from .interactive_logging import InteractiveLogger
from .csv_logger import CSVLogger
