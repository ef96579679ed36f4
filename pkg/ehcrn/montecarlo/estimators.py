################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 12-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

import math
from typing import List, NamedTuple, Optional, SupportsFloat, TypeVar

from typing_extensions import Protocol

TResult = TypeVar('TResult')


class MonteCarloEstimate(NamedTuple):
    """
    An empirical estimate.

    For a probability ``std_error = sqrt(value (1 - value) / trials)``. For a
    mean it is the sample standard deviation over ``sqrt(trials)``.
    """
    value: float
    trials: int
    std_error: float


class Metric(Protocol[TResult]):
    """
    Definition of a standalone estimator.

    An estimator exposes methods to reset its internal state and to emit a
    result. Emitting a result does not reset the internal state. Concrete
    estimators expose an `update` method that consumes one chunk of trials.
    """

    def result(self) -> Optional[TResult]:
        """
        Obtains the value of the estimator.

        :return: The current estimate.
        """
        pass

    def reset(self) -> None:
        """
        Resets the estimator internal state.

        :return: None.
        """
        pass


class EventCounter(Metric[MonteCarloEstimate]):
    """
    Frequency of an event over a sequence of trial chunks.

    Counts are integers, so the result does not depend on the order in
    which chunks are added.
    """

    def __init__(self):
        super().__init__()
        self.hits: int = 0
        self.trials: int = 0

    def update(self, hits: int, trials: int) -> None:
        """
        Adds one chunk.

        :param hits: How many trials of the chunk saw the event.
        :param trials: The chunk size.
        :return: None.
        """
        self.hits += int(hits)
        self.trials += int(trials)

    def result(self) -> MonteCarloEstimate:
        if self.trials == 0:
            return MonteCarloEstimate(0.0, 0, 0.0)
        value = self.hits / self.trials
        return MonteCarloEstimate(
            value=value, trials=self.trials,
            std_error=math.sqrt(value * (1.0 - value) / self.trials))

    def reset(self) -> None:
        self.hits = 0
        self.trials = 0


class MeanEstimator(Metric[MonteCarloEstimate]):
    """
    Sample mean of a per-trial quantity, with its standard error.

    Chunk sums are kept and added with :func:`math.fsum`, which is exact
    up to the final rounding, so the order of the chunks does not matter.
    """

    def __init__(self):
        super().__init__()
        self.sums: List[float] = []
        self.squares: List[float] = []
        self.trials: int = 0

    def update(self, total: SupportsFloat, squares: SupportsFloat,
               trials: int) -> None:
        """
        Adds one chunk.

        :param total: The sum of the quantity over the chunk.
        :param squares: The sum of its squares.
        :param trials: The chunk size.
        :return: None.
        """
        self.sums.append(float(total))
        self.squares.append(float(squares))
        self.trials += int(trials)

    def result(self) -> MonteCarloEstimate:
        n = self.trials
        if n == 0:
            return MonteCarloEstimate(0.0, 0, 0.0)
        total = math.fsum(self.sums)
        mean = total / n
        if n == 1:
            return MonteCarloEstimate(mean, n, 0.0)
        variance = (math.fsum(self.squares) - total * mean) / (n - 1)
        return MonteCarloEstimate(value=mean, trials=n,
                                  std_error=math.sqrt(max(variance, 0.0) / n))

    def reset(self) -> None:
        self.sums = []
        self.squares = []
        self.trials = 0


__all__ = [
    'MonteCarloEstimate',
    'Metric',
    'EventCounter',
    'MeanEstimator'
]
