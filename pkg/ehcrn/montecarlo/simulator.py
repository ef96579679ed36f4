################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 14-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Monte Carlo estimation of the outage and throughput of an operating point.

Trials are split into fixed-size chunks. Chunk ``k`` draws from the
``k``-th child of ``SeedSequence(seed)``, so the estimates only depend on
``(config, geometry, mode, combining, trials, seed, chunk_size)`` and not
on how many threads evaluate the chunks.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, Dict, NamedTuple, Optional

import numpy as np

from ehcrn.analytic import TransmissionMode
from ehcrn.errors import DomainError
from ehcrn.model import ProtocolConfig, SystemGeometry, derive, \
    lambdas_from_geometry
from ehcrn.montecarlo.channels import draw
from ehcrn.montecarlo.estimators import EventCounter, MeanEstimator, \
    MonteCarloEstimate
from ehcrn.montecarlo.trial import Combining, evaluate_trial

logger = logging.getLogger(__name__)

MIN_TRIALS = 1000
DEFAULT_CHUNK_SIZE = 2 ** 16
EVENTS = ('p1', 'p2', 'p', 'q1', 'q2', 'p3')


class _ChunkTally(NamedTuple):
    trials: int
    hits: Dict[str, int]
    bits: float
    bits_squared: float


def _run_chunk(seed_seq: np.random.SeedSequence, size: int,
               config: ProtocolConfig, geometry: SystemGeometry,
               mode: TransmissionMode, combining: Combining) -> _ChunkTally:
    rng = np.random.default_rng(seed_seq)
    dp = derive(config)
    cd = draw(lambdas_from_geometry(geometry), config.n_antennas, rng, size)
    out = evaluate_trial(cd, dp, mode, combining)
    relay_miss = ~out.relay_decoded
    events = {
        'p1': out.outage & relay_miss,
        'p2': out.outage & out.relay_decoded,
        'p': out.outage,
        'q1': ~out.direct_ok & out.relay_decoded & out.combined_ok,
        'q2': out.direct_ok,
        'p3': out.direct_ok & out.relay_decoded,
    }
    hits = {name: int(np.count_nonzero(mask))
            for name, mask in events.items()}
    return _ChunkTally(trials=size, hits=hits,
                       bits=math.fsum(out.bits),
                       bits_squared=math.fsum(out.bits * out.bits))


def estimate(config: ProtocolConfig, geometry: SystemGeometry,
             mode: TransmissionMode = TransmissionMode.COOPERATIVE,
             combining: Combining = Combining.MRC,
             trials: int = 10 ** 6, seed: int = 0,
             chunk_size: int = DEFAULT_CHUNK_SIZE,
             workers: Optional[int] = None) -> Dict[str, MonteCarloEstimate]:
    """
    Estimates every event probability and the throughput of a mode.

    Events, all over the same trial set:

    * ``p1``: outage and the relay fails to decode;
    * ``p2``: outage and the relay decodes;
    * ``p``: outage, so ``p = p1 + p2`` exactly;
    * ``q1``: the direct link fails, the relay decodes and the combined
      signal succeeds;
    * ``q2``: the direct link succeeds;
    * ``p3``: the direct link succeeds and the relay decodes.

    ``tau`` is the mean number of bits per channel use.

    :param config: The operating point.
    :param geometry: The node placement.
    :param mode: The transmission mode.
    :param combining: The combining at the destination.
    :param trials: The number of trials, at least 1000.
    :param seed: The root seed.
    :param chunk_size: Trials per chunk.
    :param workers: Thread-pool size; sequential when None or 1.
    :return: A dictionary mapping the names above and ``tau`` to estimates.
    """
    if trials < MIN_TRIALS:
        raise DomainError(f'trials must be at least {MIN_TRIALS}, got '
                          f'{trials}')
    if chunk_size < 1:
        raise DomainError(f'chunk_size must be positive, got {chunk_size}')
    n_chunks = -(-trials // chunk_size)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [min(chunk_size, trials - k * chunk_size)
             for k in range(n_chunks)]

    def job(k: int) -> _ChunkTally:
        return _run_chunk(children[k], sizes[k], config, geometry, mode,
                          combining)

    logger.debug('estimating %s over %d trials in %d chunks', mode.value,
                 trials, n_chunks)
    if workers is not None and workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            tallies = list(executor.map(job, range(n_chunks)))
    else:
        tallies = [job(k) for k in range(n_chunks)]

    counters = {name: EventCounter() for name in EVENTS}
    bits = MeanEstimator()
    for tally in tallies:
        for name in EVENTS:
            counters[name].update(tally.hits[name], tally.trials)
        bits.update(tally.bits, tally.bits_squared, tally.trials)

    results = {name: counter.result() for name, counter in counters.items()}
    results['tau'] = bits.result()
    return results


def monte_carlo_objective(config: ProtocolConfig, geometry: SystemGeometry,
                          mode: TransmissionMode =
                          TransmissionMode.COOPERATIVE,
                          trials: int = 10 ** 5, seed: int = 0,
                          combining: Combining = Combining.MRC,
                          workers: Optional[int] = None) \
        -> Callable[[float], float]:
    """
    Empirical throughput as a function of rho.

    Every rho uses the same seed, so the channel draws are common to all
    points and the empirical curve is smooth in rho.

    :return: A callable mapping rho to the estimated tau.
    """
    def objective(rho: float) -> float:
        point = replace(config, rho=rho)
        return estimate(point, geometry, mode, combining, trials, seed,
                        workers=workers)['tau'].value
    return objective


__all__ = ['estimate', 'monte_carlo_objective']
