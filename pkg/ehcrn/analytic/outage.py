################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 06-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Closed-form outage probability of the decode-and-forward relay.

The overall outage splits as ``p = p1 + p2`` where ``p1`` is the
probability that the relay fails to decode and ``p2`` the probability that
the relay decodes but the destination, combining the relayed and direct
signals, stays below threshold.

Four evaluation tiers are available:

* ``FULL``: exact p1 and the double-sum p2, where only the direct-link
  interference term inside ``t`` is replaced by its conditional mean;
* ``NO_RP``: the same expression in the limit of a distant primary
  receiver (``t = 0``);
* ``HIGH_MARGIN``: the compact approximation valid when
  ``lambda_sp / psi >> 1``;
* ``NO_DIRECT``: the direct S-D branch is unusable.

Symbols follow the system model: ``a = lambda_rp / beta``,
``b = psi lambda_rd / beta``, ``c = psi lambda_sd``,
``d = lambda_rd / (beta lambda_sd)``, ``g = xi / psi``.
"""

import logging
import math
import warnings
from enum import Enum
from typing import List, NamedTuple, Optional

from ehcrn.errors import RegimeWarning, StabilityError
from ehcrn.model import ChannelRates, DerivedParams
from ehcrn.specfun import binomial, expint_ei_scaled, expint_en_scaled, \
    ln_gamma

logger = logging.getLogger(__name__)

MAX_SUPPORTED_ANTENNAS = 10
CANCELLATION_GUARD = 1e8
CANCELLATION_FLOOR = 1e-6
REGIME_RATIO = 10.0


class OutageTier(Enum):
    """ Which closed form produced an outage value. """
    FULL = 'full'
    NO_RP = 'no_rp'
    HIGH_MARGIN = 'high_margin'
    NO_DIRECT = 'no_direct'


class OutageBreakdown(NamedTuple):
    """
    Outage probability and its decomposition.

    ``p`` is ``p1 + p2_raw`` clamped to [0, 1]. ``p2`` is the clamped
    second component and ``p2_raw`` the value before clamping, which the
    approximation tiers may push slightly below zero.
    """
    p1: float
    p2: float
    p: float
    tier: OutageTier
    p2_raw: float


def _clamp(value: float, low: float = 0.0, high: float = 1.0) -> float:
    return min(max(value, low), high)


def _breakdown(p1: float, p2_raw: float, tier: OutageTier) \
        -> OutageBreakdown:
    return OutageBreakdown(p1=_clamp(p1), p2=_clamp(p2_raw),
                           p=_clamp(p1 + p2_raw), tier=tier, p2_raw=p2_raw)


class _GuardedSum:
    """
    Accumulates the terms of an alternating sum and checks the final value
    against the largest term.
    """

    def __init__(self, name: str):
        self.name = name
        self.terms: List[float] = []

    def add(self, term: float) -> None:
        self.terms.append(term)

    def total(self) -> float:
        if not self.terms:
            return 0.0
        result = math.fsum(self.terms)
        largest = max(abs(x) for x in self.terms)
        if largest > CANCELLATION_GUARD * max(abs(result),
                                              CANCELLATION_FLOOR):
            raise StabilityError(
                f'{self.name}: alternating sum lost too many digits '
                f'(largest term {largest:.3e}, sum {result:.3e})')
        return result


def _check_antennas(dp: DerivedParams) -> int:
    n = dp.n_antennas
    if n > MAX_SUPPORTED_ANTENNAS:
        raise StabilityError(f'the double sum supports L <= '
                             f'{MAX_SUPPORTED_ANTENNAS}, got L = {n}')
    return n


def p1_exact(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    Probability that the relay fails to decode,
    ``(lambda_sp xi / (lambda_sr psi) + 1) ** -L``.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :return: p1.
    """
    return (lam.sp * dp.xi / (lam.sr * dp.psi) + 1.0) ** -dp.n_antennas


def mean_interference_term(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    Mean direct-link SNR at the destination given that the direct link is
    in outage, ``E[Gamma_d1 | Gamma_d1 < gamma_th]``.

    The direct SNR is ``(I/N0) |h_sd|^2 / |g_sp|^2``, a scaled ratio of
    exponentials. The value lies in (0, gamma_th).

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :return: The conditional mean.
    """
    kappa = dp.psi * lam.sd / lam.sp
    if kappa < 1e-3:
        # log(1+k) - k/(1+k) = sum_{n>=2} (-1)^n (n-1)/n k^n
        excess = math.fsum((-1) ** n * (n - 1) / n * kappa ** n
                           for n in range(2, 9))
    else:
        excess = math.log1p(kappa) - kappa / (1.0 + kappa)
    return dp.i_over_n0 * (lam.sp / lam.sd) * excess * (1.0 + kappa) / kappa


def compute_t(dp: DerivedParams, lam: ChannelRates,
              direct: bool = True) -> float:
    """
    Weight of the interference-limited relay power in the outage sums.

    With the direct link ``t = 1 - 1 / (1 + lambda_rd (gamma_th - m) /
    (lambda_rp I/N0))`` where ``m`` is :func:`mean_interference_term`.
    Without it ``m = 0``, which gives ``t_nd = 1 - 1 / (1 + lambda_rd psi /
    lambda_rp)``.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param direct: Whether the direct S-D branch is combined.
    :return: t, in [0, 1).
    """
    residual = dp.gamma_th
    if direct:
        residual -= mean_interference_term(dp, lam)
    ratio = lam.rd * max(residual, 0.0) / (lam.rp * dp.i_over_n0)
    return ratio / (1.0 + ratio)


class _Coefficients:
    """ Per-operating-point constants shared by the p2 sums. """

    def __init__(self, dp: DerivedParams, lam: ChannelRates):
        self.n = dp.n_antennas
        self.a = lam.rp / dp.beta
        self.b = dp.psi * lam.rd / dp.beta
        self.c = dp.psi * lam.sd
        self.d = lam.rd / (dp.beta * lam.sd)
        self.g = dp.xi / dp.psi
        self.mu = self.c + lam.sp
        self.lam_sr = lam.sr
        self.lam_sp = lam.sp
        self.s1 = lam.sr + self.g * self.mu
        self.s2 = lam.sr + self.g * lam.sp
        self.ln_fact = ln_gamma(self.n)

    def direct_outage_term(self, alpha: float, gamma: float) -> float:
        n, g = self.n, self.g
        return (-math.exp(-g * alpha) * (self.lam_sr / self.s2) ** n
                + (self.lam_sp / self.mu) * math.exp(-g * gamma)
                * (self.lam_sr / self.s1) ** n
                + self.c / self.mu)

    def pole_row(self, alpha: float, gamma: float, delta: float,
                 denom: float) -> float:
        n, g = self.n, self.g
        decay_a, decay_g = math.exp(-g * alpha), math.exp(-g * gamma)
        inner = []
        for k in range(n - 1):
            inner.append(delta ** k * math.exp(ln_gamma(n - k - 1))
                         * (decay_g * self.s1 ** (k - n + 1)
                            - decay_a * self.s2 ** (k - n + 1)))
        inner.append(delta ** (n - 1)
                     * (decay_a * expint_ei_scaled(delta * self.s2)
                        - decay_g * expint_ei_scaled(delta * self.s1)))
        scale = math.exp(n * math.log(self.lam_sr) - self.ln_fact)
        return scale * self.lam_sp * delta ** 2 / denom * math.fsum(inner)

    def shifted_row(self, shift: float, decay: float, rate: float) -> float:
        # E[(1 - decay exp(-(rate - lam_sr) H)) / (H + shift)] / lam_sr
        n = self.n
        return (expint_en_scaled(n, shift * self.lam_sr)
                - (self.lam_sr / rate) ** (n - 1) * decay
                * expint_en_scaled(n, shift * rate))


def p2_full(dp: DerivedParams, lam: ChannelRates,
            t: Optional[float] = None) -> float:
    """
    Probability that the relay decodes and the combined destination SNR
    is below threshold, as the double sum over ``i`` in [0, L] and ``j`` in
    [0, i].

    The ``i = 0`` term is ``Pr[Gamma_r >= gamma_th, Gamma_d1 < gamma_th]``.
    Rows that vanish for ``i = 0`` or ``j = 0`` are skipped.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param t: Overrides :func:`compute_t`.
    :return: The raw p2, unclamped.
    """
    n = _check_antennas(dp)
    if t is None:
        t = compute_t(dp, lam)
    co = _Coefficients(dp, lam)
    acc = _GuardedSum('p2_full')
    for i in range(n + 1):
        for j in range(i + 1):
            weight = (-1) ** (i + j) * binomial(n, i) * binomial(i, j) * \
                t ** j
            if weight == 0.0:
                continue
            alpha = co.a * j + co.b * i
            gamma = co.a * j
            delta = co.d * i
            bracket = [co.direct_outage_term(alpha, gamma)]
            if i >= 1:
                denom = alpha + delta * lam.sp
                bracket.append(co.pole_row(alpha, gamma, delta, denom))
                a1 = alpha / lam.sp
                bracket.append(-alpha ** 2 * lam.sr / (lam.sp * denom)
                               * co.shifted_row(a1, math.exp(-co.g * alpha),
                                                co.s2))
                if j >= 1:
                    a2 = gamma / co.mu
                    bracket.append(lam.sp * lam.sr * a2 ** 2 / denom
                                   * co.shifted_row(a2,
                                                    math.exp(-co.g * gamma),
                                                    co.s1))
            acc.add(weight * math.fsum(bracket))
    return acc.total()


def p2_no_rp(dp: DerivedParams, lam: ChannelRates) -> float:
    """
    The p2 single sum in the limit of a distant primary receiver, where
    the relay power is never interference limited (``t = 0``).

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :return: The raw p2, unclamped.
    """
    n = _check_antennas(dp)
    if lam.rp / lam.rd < REGIME_RATIO:
        warnings.warn(f'lambda_rp/lambda_rd = {lam.rp / lam.rd:.3g} is below '
                      f'{REGIME_RATIO:g}, the distant-primary approximation '
                      f'may be loose', RegimeWarning)
    co = _Coefficients(dp, lam)
    acc = _GuardedSum('p2_no_rp')
    base = (lam.sr / co.s2) ** n
    acc.add(-base)
    for i in range(1, n + 1):
        alpha = co.b * i
        delta = co.d * i
        denom = i * co.d * co.mu
        decay = math.exp(-co.g * alpha)
        bracket = [-decay * base,
                   co.pole_row(alpha, 0.0, delta, denom),
                   -alpha ** 2 * lam.sr / (lam.sp * denom)
                   * co.shifted_row(alpha / lam.sp, decay, co.s2)]
        acc.add((-1) ** i * binomial(n, i) * math.fsum(bracket))
    return acc.total()


def p2_no_direct(dp: DerivedParams, lam: ChannelRates,
                 t: Optional[float] = None) -> float:
    """
    p2 when the destination only sees the relayed signal.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param t: Overrides ``t_nd`` from :func:`compute_t`.
    :return: The raw p2, unclamped.
    """
    n = _check_antennas(dp)
    if t is None:
        t = compute_t(dp, lam, direct=False)
    co = _Coefficients(dp, lam)
    acc = _GuardedSum('p2_no_direct')
    for i in range(n + 1):
        for j in range(i + 1):
            weight = (-1) ** (i + j) * binomial(n, i) * binomial(i, j) * \
                t ** j
            if weight == 0.0:
                continue
            alpha = co.a * j + co.b * i
            decay = math.exp(-co.g * alpha)
            bracket = [1.0, -decay * (lam.sr / co.s2) ** n]
            if i >= 1:
                a1 = alpha / lam.sp
                bracket.append(-a1 * lam.sr
                               * co.shifted_row(a1, decay, co.s2))
            acc.add(weight * math.fsum(bracket))
    return acc.total()


def alternating_en_sum(x: float, n_antennas: int) -> float:
    """
    ``sum_{i=1}^{L} (-1)^(i+1) C(L, i) L exp(i x) E_{L+1}(i x)``.

    The sum lies in [0, 1] and tends to 1 as L grows.

    :param x: The per-antenna argument, positive.
    :param n_antennas: L.
    :return: The sum.
    """
    acc = _GuardedSum('alternating_en_sum')
    for i in range(1, n_antennas + 1):
        acc.add((-1) ** (i + 1) * binomial(n_antennas, i) * n_antennas
                * expint_en_scaled(n_antennas + 1, i * x))
    return acc.total()


def alternating_en_sum_approx(x: float, n_antennas: int) -> float:
    """
    Gamma-ratio approximation of :func:`alternating_en_sum`,
    ``1 - Gamma(L+1) Gamma(L/x+1) / Gamma(L/x+L+1)``.
    """
    shape = n_antennas / x
    return 1.0 - math.exp(ln_gamma(n_antennas + 1) + ln_gamma(shape + 1.0)
                          - ln_gamma(shape + n_antennas + 1.0))


def high_margin_argument(dp: DerivedParams, lam: ChannelRates) -> float:
    return dp.psi * lam.rd * lam.sr / (dp.beta * lam.sp)


def harvest_shortfall(dp: DerivedParams, lam: ChannelRates) -> float:
    # probability that no relay antenna sees a usable second hop
    return 1.0 - (1.0 - math.exp(-lam.rd * dp.xi / dp.beta)) ** \
        dp.n_antennas


def p_high_margin(dp: DerivedParams, lam: ChannelRates,
                  direct: bool = True) -> OutageBreakdown:
    """
    High-margin outage approximation ``T11 T12 + T2``.

    ``T11 = (1 + lambda_sp / (lambda_sd psi)) ** -1`` (1 without the direct
    link), ``T12 = 1 -`` :func:`alternating_en_sum` and
    ``T2 = (1 - (1 - exp(-lambda_rd xi / beta)) ** L) p1``.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param direct: Whether the direct S-D branch is combined.
    :return: The outage breakdown, ``p2_raw = p - p1``.
    """
    if lam.sp / dp.psi < REGIME_RATIO:
        warnings.warn(f'lambda_sp/psi = {lam.sp / dp.psi:.3g} is below '
                      f'{REGIME_RATIO:g}, the high-margin approximation may '
                      f'be loose', RegimeWarning)
    t11 = 1.0 / (1.0 + lam.sp / (lam.sd * dp.psi)) if direct else 1.0
    t12 = 1.0 - alternating_en_sum(high_margin_argument(dp, lam),
                                   dp.n_antennas)
    p1 = p1_exact(dp, lam)
    total = t11 * t12 + harvest_shortfall(dp, lam) * p1
    return _breakdown(p1, total - p1, OutageTier.HIGH_MARGIN)


def p_full(dp: DerivedParams, lam: ChannelRates) -> OutageBreakdown:
    return _breakdown(p1_exact(dp, lam), p2_full(dp, lam), OutageTier.FULL)


def p_no_rp(dp: DerivedParams, lam: ChannelRates) -> OutageBreakdown:
    return _breakdown(p1_exact(dp, lam), p2_no_rp(dp, lam), OutageTier.NO_RP)


def p_no_direct(dp: DerivedParams, lam: ChannelRates,
                t: Optional[float] = None) -> OutageBreakdown:
    """
    Outage without the direct S-D branch, ``p_nd = p1 + p2_nd``.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param t: Overrides ``t_nd``; 0 gives the distant-primary form.
    :return: The outage breakdown.
    """
    return _breakdown(p1_exact(dp, lam), p2_no_direct(dp, lam, t),
                      OutageTier.NO_DIRECT)


def direct_link_outage(dp: DerivedParams, lam: ChannelRates) \
        -> OutageBreakdown:
    """
    Outage of the direct S-D link alone, split by the relay decoding event.

    ``p1 = Pr[Gamma_d1 < gamma_th, Gamma_r < gamma_th]`` and
    ``p2 = Pr[Gamma_d1 < gamma_th, Gamma_r >= gamma_th]``.
    """
    co = _Coefficients(dp, lam)
    p_relay = p1_exact(dp, lam)
    direct_good = (lam.sp / co.mu) * (lam.sr / co.s1) ** dp.n_antennas
    return _breakdown(p_relay - direct_good,
                      co.direct_outage_term(0.0, 0.0), OutageTier.FULL)


def outage(dp: DerivedParams, lam: ChannelRates,
           tier: OutageTier = OutageTier.FULL,
           direct: bool = True) -> OutageBreakdown:
    """
    Evaluates the outage probability with the requested tier.

    :param dp: The derived parameters of the operating point.
    :param lam: The channel rates.
    :param tier: The closed form to use.
    :param direct: False removes the direct S-D branch. The ``NO_DIRECT``
        tier implies it.
    :return: The outage breakdown.
    """
    if tier is OutageTier.HIGH_MARGIN:
        return p_high_margin(dp, lam, direct=direct)
    if tier is OutageTier.NO_DIRECT or not direct:
        if tier is OutageTier.NO_RP:
            return p_no_direct(dp, lam, t=0.0)
        return p_no_direct(dp, lam)
    if tier is OutageTier.NO_RP:
        return p_no_rp(dp, lam)
    return p_full(dp, lam)


__all__ = [
    'OutageTier',
    'OutageBreakdown',
    'p1_exact',
    'mean_interference_term',
    'compute_t',
    'p2_full',
    'p2_no_rp',
    'p2_no_direct',
    'alternating_en_sum',
    'alternating_en_sum_approx',
    'high_margin_argument',
    'harvest_shortfall',
    'p_full',
    'p_no_rp',
    'p_high_margin',
    'p_no_direct',
    'direct_link_outage',
    'outage'
]
