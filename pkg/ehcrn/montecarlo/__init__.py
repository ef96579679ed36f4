"""
The :py:mod:`montecarlo` module is the independent oracle of the closed
forms. :py:mod:`channels` draws the fading gains, :py:mod:`trial` applies
the relay protocol to each draw and :py:mod:`simulator` turns batches of
trials into :class:`MonteCarloEstimate` values.
"""

from .estimators import *
from .channels import *
from .trial import *
from .simulator import *
