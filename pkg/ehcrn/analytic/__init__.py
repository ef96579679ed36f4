"""
The :py:mod:`analytic` module provides the closed-form evaluators of the
outage probability (:py:mod:`outage`) and of the throughput of every
transmission mode (:py:mod:`throughput`). All functions take the
:class:`DerivedParams` of an operating point and the :class:`ChannelRates`
of the geometry.
"""

from .outage import *
from .throughput import *
