################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 13-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Per-trial decision logic of the relay network, vectorized over a batch of
channel realizations.

Noise power is 1, so powers and SNRs share the same scale.
"""

from enum import Enum
from typing import NamedTuple

import numpy as np

from ehcrn.analytic import TransmissionMode
from ehcrn.model import DerivedParams
from ehcrn.montecarlo.channels import ChannelDraw


class Combining(Enum):
    """ Destination combining of the relayed and direct signals. """
    MRC = 'mrc'
    SC = 'sc'


class TrialOutcome(NamedTuple):
    """
    Outcome of each trial of a batch.

    ``dest_snr`` is the SNR the mode decodes from. ``direct_ok`` is
    ``Gamma_d1 >= gamma_th`` and ``combined_ok`` says whether the combined
    SNR including the direct branch reaches the threshold, whatever the
    mode.
    """
    relay_decoded: np.ndarray
    direct_ok: np.ndarray
    combined_ok: np.ndarray
    dest_snr: np.ndarray
    outage: np.ndarray
    bits: np.ndarray


def combine(relayed: np.ndarray, direct: np.ndarray,
            combining: Combining) -> np.ndarray:
    """ MRC adds the branch SNRs, SC keeps the larger one. """
    if combining is Combining.MRC:
        return relayed + direct
    return np.maximum(relayed, direct)


def evaluate_trial(cd: ChannelDraw, dp: DerivedParams,
                   mode: TransmissionMode = TransmissionMode.COOPERATIVE,
                   combining: Combining = Combining.MRC) -> TrialOutcome:
    """
    Applies power control, energy harvesting, antenna selection and the
    decode-and-forward decision to each trial.

    The source transmits with ``P_s = I / g_sp``. The relay harvests
    ``beta P_s ||h_sr||^2`` and antenna ``j`` transmits with
    ``min(harvested, I / g_rp[j])``. The antenna maximizing the received
    power is selected, ties going to the lowest index.

    Without the direct link the source still transmits in the first phase
    but the destination drops the direct branch. With incremental relaying
    a direct-link success delivers ``zeta Rs`` bits, otherwise the two-hop
    transmission delivers ``0.5 zeta Rs`` on success.

    :param cd: The channel batch.
    :param dp: The derived parameters of the operating point.
    :param mode: The transmission mode.
    :param combining: The combining at the destination.
    :return: The outcome of every trial.
    """
    interference = dp.i_over_n0
    p_s = interference / cd.g_sp
    harvested = dp.beta * p_s * cd.h_sr_sum
    p_r = np.minimum(harvested[:, None], interference / cd.g_rp)
    hop2 = p_r * cd.h_rd
    selected = np.argmax(hop2, axis=1)
    snr_d2 = np.take_along_axis(hop2, selected[:, None], axis=1)[:, 0]

    snr_r = dp.xi * p_s * cd.h_sr_sum
    snr_d1 = p_s * cd.h_sd
    gamma_th = dp.gamma_th

    relay_decoded = snr_r >= gamma_th
    direct_ok = snr_d1 >= gamma_th
    with_direct = combine(snr_d2, snr_d1, combining)
    combined_ok = with_direct >= gamma_th

    hop_bits = 0.5 * dp.zeta * dp.rate
    if mode is TransmissionMode.DIRECT_ONLY:
        dest_snr = snr_d1
        outage = ~direct_ok
        bits = np.where(direct_ok, dp.rate, 0.0)
    elif mode is TransmissionMode.NO_DIRECT:
        dest_snr = combine(snr_d2, np.zeros_like(snr_d1), combining)
        outage = ~relay_decoded | (dest_snr < gamma_th)
        bits = np.where(outage, 0.0, hop_bits)
    else:
        dest_snr = with_direct
        outage = ~relay_decoded | ~combined_ok
        bits = np.where(outage, 0.0, hop_bits)
        if mode is TransmissionMode.INCREMENTAL:
            bits = np.where(direct_ok, dp.zeta * dp.rate, bits)
    return TrialOutcome(relay_decoded=relay_decoded, direct_ok=direct_ok,
                        combined_ok=combined_ok, dest_snr=dest_snr,
                        outage=outage, bits=bits)


__all__ = ['Combining', 'TrialOutcome', 'combine', 'evaluate_trial']
