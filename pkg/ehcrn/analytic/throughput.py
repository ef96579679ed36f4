################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 07-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Throughput of the cooperative, relay-only, incremental and direct-only
transmission modes.

A two-hop block delivers ``Rs`` bits over two phases, so the cooperative
throughput is ``tau = 0.5 Rs zeta (1 - p)``. With incremental relaying the
destination first tries the direct link and asks for the relay only when
it fails.
"""

from enum import Enum
from typing import NamedTuple, Optional

from ehcrn.analytic.outage import OutageBreakdown, OutageTier, \
    alternating_en_sum, direct_link_outage, outage, p1_exact, \
    harvest_shortfall, high_margin_argument
from ehcrn.errors import ConsistencyError, DomainError
from ehcrn.model import ChannelRates, DerivedParams, EHScheme

CONSISTENCY_TOLERANCE = 1e-8


class TransmissionMode(Enum):
    """ How the destination uses the direct and relayed signals. """
    COOPERATIVE = 'cooperative'
    NO_DIRECT = 'no_direct'
    INCREMENTAL = 'incremental'
    DIRECT_ONLY = 'direct_only'


class IncrementalComponents(NamedTuple):
    """
    Event probabilities of incremental relaying.

    ``q1``: the direct link fails, the relay decodes and the combined
    signal succeeds. ``q2``: the direct link succeeds. ``p3``: the direct
    link succeeds and the relay decodes.
    """
    q1: float
    q2: float
    p3: float


class ThroughputReport(NamedTuple):
    """ Throughput of one mode, with the outage it was computed from. """
    tau: float
    mode: TransmissionMode
    outage: OutageBreakdown
    components: Optional[IncrementalComponents] = None


class HighMarginTerms(NamedTuple):
    """
    Pieces of the high-margin outage ``T11 T12 + T2``.

    ``f1 = T12 - 1`` and ``f2 = -T2`` are the rho-dependent parts of the
    high-margin throughput.
    """
    t11: float
    t12: float
    t2: float
    f1: float
    f2: float


def _clamp_tau(tau: float, rate: float) -> float:
    return min(max(tau, 0.0), rate)


def q2(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    Probability that the direct link alone succeeds,
    ``(1 + lambda_sd psi / lambda_sp) ** -1``.
    """
    return 1.0 / (1.0 + lam.sd * dp.psi / lam.sp)


def _relay_miss_ratio(dp: DerivedParams, lam: ChannelRates) -> float:
    ratio = 1.0 + lam.sd * dp.xi / lam.sr + lam.sp * dp.xi / \
        (lam.sr * dp.psi)
    return ratio ** -dp.n_antennas


def p3(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    Probability that the direct link succeeds and the relay decodes.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :return: ``q2 (1 - (1 + lambda_sd xi / lambda_sr + lambda_sp xi /
        (lambda_sr psi)) ** -L)``.
    """
    return q2(dp, lam) * (1.0 - _relay_miss_ratio(dp, lam))


def _p3_series(dp: DerivedParams, lam: ChannelRates) -> float:
    # sum over k < L of lambda_sp a^k / (a + b) ** (k + 1),
    # a = lambda_sr psi / xi, b = lambda_sd psi + lambda_sp
    a = lam.sr * dp.psi / dp.xi
    total = a + lam.sd * dp.psi + lam.sp
    term = lam.sp / total
    value = 0.0
    for _ in range(dp.n_antennas):
        value += term
        term *= a / total
    return value


def tau_direct(dp: DerivedParams, lam: ChannelRates) -> float:
    """ Throughput of the direct link when the relay is absent. """
    return dp.rate * q2(dp, lam)


def throughput(dp: DerivedParams, lam: ChannelRates,
               tier: OutageTier = OutageTier.FULL,
               mode: TransmissionMode = TransmissionMode.COOPERATIVE) \
        -> ThroughputReport:
    """
    Throughput of a transmission mode.

    The cooperative and relay-only modes use ``0.5 Rs zeta (1 - p)`` with
    ``p`` from the selected outage tier. Incremental relaying delegates to
    :func:`tau_incremental`. The direct-only mode is ``Rs q2``.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param tier: The outage closed form to use.
    :param mode: The transmission mode.
    :return: The throughput report, tau clamped to [0, Rs].
    """
    if mode is TransmissionMode.INCREMENTAL:
        return tau_incremental(dp, lam, tier)
    if mode is TransmissionMode.DIRECT_ONLY:
        return ThroughputReport(tau=_clamp_tau(tau_direct(dp, lam), dp.rate),
                                mode=mode,
                                outage=direct_link_outage(dp, lam))
    direct = mode is TransmissionMode.COOPERATIVE and \
        tier is not OutageTier.NO_DIRECT
    breakdown = outage(dp, lam, tier, direct=direct)
    tau = 0.5 * dp.rate * dp.zeta * (1.0 - breakdown.p)
    return ThroughputReport(tau=_clamp_tau(tau, dp.rate), mode=mode,
                            outage=breakdown)


def tau_incremental(dp: DerivedParams, lam: ChannelRates,
                    tier: OutageTier = OutageTier.FULL) -> ThroughputReport:
    """
    Throughput of incremental relaying,
    ``zeta (0.5 Rs q1 + Rs q2)`` with ``q1 = 1 - p - p3``.

    The same value is obtained from the cooperative throughput as
    ``tau - 0.5 zeta Rs p3 + zeta Rs q2``, with ``p3`` summed term by term
    over the L relay antennas. Both forms are computed on unclamped values
    and must agree.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param tier: The outage closed form used for ``p``.
    :return: The report; ``outage`` is the underlying DF outage.
    :raises ConsistencyError: if the two forms disagree beyond 1e-8.
    """
    if tier is OutageTier.NO_DIRECT:
        raise DomainError('incremental relaying needs the direct link')
    breakdown = outage(dp, lam, tier)
    p_raw = breakdown.p1 + breakdown.p2_raw
    direct_good = q2(dp, lam)
    both_good = p3(dp, lam)
    q1 = 1.0 - p_raw - both_good
    decomposed = dp.zeta * (0.5 * dp.rate * q1 + dp.rate * direct_good)
    cooperative = 0.5 * dp.rate * dp.zeta * (1.0 - p_raw)
    related = cooperative - 0.5 * dp.zeta * dp.rate * _p3_series(dp, lam) + \
        dp.zeta * dp.rate * direct_good
    if abs(decomposed - related) > CONSISTENCY_TOLERANCE:
        raise ConsistencyError(f'incremental throughput forms disagree: '
                               f'{decomposed!r} vs {related!r}')
    components = IncrementalComponents(q1=max(q1, 0.0), q2=direct_good,
                                       p3=both_good)
    return ThroughputReport(tau=_clamp_tau(decomposed, dp.rate),
                            mode=TransmissionMode.INCREMENTAL,
                            outage=breakdown, components=components)


def high_margin_terms(dp: DerivedParams, lam: ChannelRates) \
        -> HighMarginTerms:
    """ Terms of the high-margin outage with the direct link. """
    t11 = 1.0 / (1.0 + lam.sp / (lam.sd * dp.psi))
    t12 = 1.0 - alternating_en_sum(high_margin_argument(dp, lam),
                                   dp.n_antennas)
    t2 = harvest_shortfall(dp, lam) * p1_exact(dp, lam)
    return HighMarginTerms(t11=t11, t12=t12, t2=t2, f1=t12 - 1.0, f2=-t2)


def tau_gap_direct(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    Throughput gained by combining the direct S-D link,
    ``tau - tau_nd = (Rs zeta / 2) T12 r / (1 + r)`` with
    ``r = lambda_sp / (lambda_sd psi)``.

    The gain vanishes as L grows or the direct link weakens.
    """
    terms = high_margin_terms(dp, lam)
    r = lam.sp / (lam.sd * dp.psi)
    return 0.5 * dp.rate * dp.zeta * terms.t12 * r / (1.0 + r)


def tau_incremental_gap_limit(dp: DerivedParams, lam: ChannelRates) \
        -> float:
    """ Large-L limit of ``tau_in - tau``, ``0.5 zeta tau_dir``. """
    return 0.5 * dp.zeta * tau_direct(dp, lam)


def surrogate_throughput(dp: DerivedParams, lam: ChannelRates,
                         mode: TransmissionMode =
                         TransmissionMode.COOPERATIVE) -> float:
    """
    Single-antenna throughput approximation that the closed-form optimal
    rho maximizes exactly.

    PS: ``Rs/2 (1 - A / (1 + B rho) - C rho / (1 - rho))``.
    TS: ``(1 - rho) Rs/2 (1 - A / (1 + K rho / (1 - rho)))``.
    ``A = (1 + lambda_sp / (lambda_sd psi)) ** -1``, or 1 without the direct
    link. Incremental relaying adds ``0.5 zeta Rs q2``.

    :param dp: The derived parameters of the operating point, L = 1.
    :param lam: The channel rates.
    :param mode: The transmission mode; direct-only has no surrogate.
    :return: The approximate throughput.
    """
    if dp.n_antennas != 1:
        raise DomainError(f'the surrogate throughput needs L = 1, got '
                          f'L = {dp.n_antennas}')
    if mode is TransmissionMode.DIRECT_ONLY:
        raise DomainError('the direct-only mode has no rho to optimize')
    rho, eta, psi = dp.rho, dp.eta, dp.psi
    direct = mode is not TransmissionMode.NO_DIRECT
    weight = 1.0 / (1.0 + lam.sp / (lam.sd * psi)) if direct else 1.0
    if dp.scheme is EHScheme.PS:
        b = eta * lam.sp / (psi * lam.rd * lam.sr)
        c = eta * psi * lam.sr / (lam.sp * lam.rd)
        tau = 0.5 * dp.rate * (1.0 - weight / (1.0 + b * rho)
                               - c * rho / (1.0 - rho))
    else:
        k = 2.0 * eta * lam.sp / (psi * lam.rd * lam.sr)
        tau = 0.5 * (1.0 - rho) * dp.rate * \
            (1.0 - weight / (1.0 + k * rho / (1.0 - rho)))
    if mode is TransmissionMode.INCREMENTAL:
        tau += 0.5 * dp.zeta * dp.rate * q2(dp, lam)
    return tau


__all__ = [
    'TransmissionMode',
    'IncrementalComponents',
    'ThroughputReport',
    'HighMarginTerms',
    'q2',
    'p3',
    'tau_direct',
    'throughput',
    'tau_incremental',
    'high_margin_terms',
    'tau_gap_direct',
    'tau_incremental_gap_limit',
    'surrogate_throughput'
]
