################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 12-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

from typing import NamedTuple

import numpy as np

from ehcrn.model import ChannelRates


class ChannelDraw(NamedTuple):
    """
    A batch of quasi-static channel realizations, one per trial.

    Every field holds channel power gains. ``h_rd`` and ``g_rp`` have one
    column per relay antenna.
    """
    g_sp: np.ndarray
    h_sr_sum: np.ndarray
    h_sd: np.ndarray
    h_rd: np.ndarray
    g_rp: np.ndarray

    @property
    def size(self) -> int:
        return len(self.g_sp)


def draw(lam: ChannelRates, n_antennas: int, rng: np.random.Generator,
         size: int = 1) -> ChannelDraw:
    """
    Draws Rayleigh-fading power gains.

    Each gain is exponential with mean ``1 / lambda``. The S-R gain is the
    sum over the relay antennas, hence Gamma distributed with shape L.
    The draw order is fixed, so a seeded generator yields a reproducible
    sequence.

    :param lam: The channel rates.
    :param n_antennas: The number of relay antennas L.
    :param rng: The generator to draw from.
    :param size: The number of trials.
    :return: The channel batch.
    """
    g_sp = rng.exponential(1.0 / lam.sp, size)
    h_sr = rng.exponential(1.0 / lam.sr, (size, n_antennas))
    h_sd = rng.exponential(1.0 / lam.sd, size)
    h_rd = rng.exponential(1.0 / lam.rd, (size, n_antennas))
    g_rp = rng.exponential(1.0 / lam.rp, (size, n_antennas))
    return ChannelDraw(g_sp=g_sp, h_sr_sum=h_sr.sum(axis=1), h_sd=h_sd,
                       h_rd=h_rd, g_rp=g_rp)


__all__ = ['ChannelDraw', 'draw']
