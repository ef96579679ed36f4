"""
The :py:mod:`sweep` module turns a run configuration into result rows.
:py:mod:`config` parses and validates the configuration,
:py:mod:`runner` evaluates it and dispatches the rows to the loggers and
:py:mod:`validation` holds the analytic against Monte Carlo agreement
suite.
"""

from .results import *
from .config import *
from .runner import *
from .validation import *
