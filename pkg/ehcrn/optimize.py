################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 10-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Throughput-optimal energy-harvesting parameter.

For a single relay antenna the optimum has closed forms, one per
combination of EH scheme and transmission mode. For any L the optimum is
found numerically: a coarse grid selects the bracketing cell and a
golden-section search refines it.
"""

import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from enum import Enum
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from ehcrn.analytic import OutageTier, TransmissionMode, throughput, \
    surrogate_throughput
from ehcrn.errors import DomainError, RegimeWarning
from ehcrn.model import ChannelRates, EHScheme, ProtocolConfig, derive

logger = logging.getLogger(__name__)

RHO_LOWER = 0.01
RHO_UPPER = 0.99
COARSE_GRID_POINTS = 33
GOLDEN_TOLERANCE = 1e-4
FLAT_OBJECTIVE = 1e-9
AUDIT_TOLERANCE = 0.05
PHI_RATIO = 2.0 / (1.0 + math.sqrt(5.0))

Objective = Callable[[float], float]


class RhoVariant(Enum):
    """ EH scheme and transmission mode an optimum refers to. """
    PS = ('ps', EHScheme.PS, TransmissionMode.COOPERATIVE)
    TS = ('ts', EHScheme.TS, TransmissionMode.COOPERATIVE)
    NO_DIRECT_PS = ('nd-ps', EHScheme.PS, TransmissionMode.NO_DIRECT)
    NO_DIRECT_TS = ('nd-ts', EHScheme.TS, TransmissionMode.NO_DIRECT)
    INCREMENTAL_PS = ('in-ps', EHScheme.PS, TransmissionMode.INCREMENTAL)
    INCREMENTAL_TS = ('in-ts', EHScheme.TS, TransmissionMode.INCREMENTAL)

    def __init__(self, label: str, scheme: EHScheme,
                 mode: TransmissionMode):
        self.label = label
        self.scheme = scheme
        self.mode = mode

    @classmethod
    def of(cls, scheme: EHScheme, mode: TransmissionMode) -> 'RhoVariant':
        for variant in cls:
            if variant.scheme is scheme and variant.mode is mode:
                return variant
        raise DomainError(f'no optimal-rho variant for {mode.value}')


class RhoMethod(Enum):
    CLOSED_FORM = 'closed_form'
    GOLDEN_SECTION = 'golden_section'
    GRID_REFINE = 'grid_refine'


class RhoOptimum(NamedTuple):
    """
    An optimal EH parameter and the objective value there.

    ``clamped`` is set when a closed form fell outside
    ``[RHO_LOWER, RHO_UPPER]`` and was moved to the nearest bound.
    """
    rho_star: float
    tau_at_star: float
    method: RhoMethod
    clamped: bool = False


class ClosedFormAudit(NamedTuple):
    variant: RhoVariant
    closed_form: RhoOptimum
    numeric: RhoOptimum
    discrepancy: float


def analytic_objective(config: ProtocolConfig, lam: ChannelRates,
                       mode: TransmissionMode = TransmissionMode.COOPERATIVE,
                       tier: OutageTier = OutageTier.FULL) -> Objective:
    """
    Analytic throughput as a function of rho, all other parameters fixed.

    :param config: The operating point; its ``rho`` is ignored.
    :param lam: The channel rates.
    :param mode: The transmission mode.
    :param tier: The outage closed form.
    :return: A callable mapping rho to tau.
    """
    def objective(rho: float) -> float:
        dp = derive(replace(config, rho=rho))
        return throughput(dp, lam, tier, mode).tau
    return objective


def surrogate_objective(config: ProtocolConfig, lam: ChannelRates,
                        mode: TransmissionMode =
                        TransmissionMode.COOPERATIVE) -> Objective:
    """ The single-antenna throughput approximation as a function of rho. """
    def objective(rho: float) -> float:
        return surrogate_throughput(derive(replace(config, rho=rho)), lam,
                                    mode)
    return objective


def _sqrt_or_nan(value: float) -> float:
    return math.sqrt(value) if value >= 0.0 else math.nan


def _closed_form_value(variant: RhoVariant, config: ProtocolConfig,
                       lam: ChannelRates) -> float:
    psi = derive(config).psi
    eta = config.eta
    direct_weight = 1.0 + lam.sp / (lam.sd * psi)
    k = 2.0 * eta * lam.sp / (psi * lam.rd * lam.sr)

    if variant in (RhoVariant.PS, RhoVariant.INCREMENTAL_PS):
        root = math.sqrt(direct_weight)
        return (1.0 - root * psi * lam.sr / lam.sp) / \
            (1.0 + root * eta / lam.rd)
    if variant is RhoVariant.NO_DIRECT_PS:
        return (1.0 - psi * lam.sr / lam.sp) / (1.0 + eta / lam.rd)
    if variant is RhoVariant.NO_DIRECT_TS:
        # (sqrt(K) - 1) / (K - 1) without the removable singularity at K = 1
        return 1.0 / (1.0 + math.sqrt(k))
    if variant is RhoVariant.TS:
        radicand = lam.sd * lam.sp * psi / \
            ((lam.sd + lam.sp / psi) * 2.0 * eta / (lam.sr * lam.rd) - 1.0)
        return (2.0 * eta / (lam.rd * lam.sr * psi) * _sqrt_or_nan(radicand)
                - 1.0) / (k - 1.0)
    radicand = (2.0 * lam.sd * lam.sp / psi) / \
        (eta * lam.sd / (lam.rd * lam.sr) + k - 1.0)
    return (-1.0 + eta / (lam.rd * lam.sr) * _sqrt_or_nan(radicand)) / \
        (k - 1.0)


def rho_star_closed_form(variant: RhoVariant, config: ProtocolConfig,
                         lam: ChannelRates,
                         tier: OutageTier = OutageTier.FULL) -> RhoOptimum:
    """
    Closed-form optimal rho for a single relay antenna.

    The incremental PS optimum equals the cooperative PS one. A value
    outside ``[0.01, 0.99]`` is clamped and flagged; a value outside (0, 1)
    also raises a :class:`RegimeWarning`.

    :param variant: The scheme and mode. Its scheme overrides the one of
        ``config``.
    :param config: The operating point; its ``rho`` is ignored.
    :param lam: The channel rates.
    :param tier: The outage closed form used to evaluate tau at the optimum.
    :return: The optimum, with ``tau_at_star`` from the analytic throughput.
    """
    if config.n_antennas != 1:
        raise DomainError(f'the closed-form optimum needs L = 1, got '
                          f'L = {config.n_antennas}')
    config = replace(config, scheme=variant.scheme)
    raw = _closed_form_value(variant, config, lam)
    if not 0.0 < raw < 1.0:
        warnings.warn(f'closed-form rho* ({variant.label}) = {raw:.4g} lies '
                      f'outside (0,1)', RegimeWarning)
    clamped = not RHO_LOWER <= raw <= RHO_UPPER
    rho = RHO_LOWER if math.isnan(raw) else min(max(raw, RHO_LOWER),
                                                RHO_UPPER)
    tau = analytic_objective(config, lam, variant.mode, tier)(rho)
    return RhoOptimum(rho_star=rho, tau_at_star=tau,
                      method=RhoMethod.CLOSED_FORM, clamped=clamped)


def _golden_section(objective: Objective, lower: float, upper: float,
                    tol: float):
    x1 = upper - PHI_RATIO * (upper - lower)
    x2 = lower + PHI_RATIO * (upper - lower)
    f1, f2 = objective(x1), objective(x2)
    while upper - lower > tol:
        if f1 > f2:
            upper, x2, f2 = x2, x1, f1
            x1 = upper - PHI_RATIO * (upper - lower)
            f1 = objective(x1)
        else:
            lower, x1, f1 = x1, x2, f2
            x2 = lower + PHI_RATIO * (upper - lower)
            f2 = objective(x2)
    return (x1, f1) if f1 > f2 else (x2, f2)


def rho_star_numeric(objective: Objective, lower: float = RHO_LOWER,
                     upper: float = RHO_UPPER,
                     tol: float = GOLDEN_TOLERANCE,
                     grid_points: int = COARSE_GRID_POINTS,
                     workers: Optional[int] = None) -> RhoOptimum:
    """
    Maximizes a unimodal objective of rho.

    The objective is evaluated on a uniform coarse grid. The cell around
    the best grid point is refined by golden-section search down to width
    ``tol``. If the refined value does not beat the best grid value the
    grid point is returned.

    :param objective: The function to maximize.
    :param lower: The lower end of the search interval.
    :param upper: The upper end of the search interval.
    :param tol: The final bracket width.
    :param grid_points: The coarse grid size.
    :param workers: If given, the coarse grid is evaluated by a thread pool
        of this size. The refinement is sequential.
    :return: The optimum.
    """
    grid = np.linspace(lower, upper, grid_points)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            values = list(executor.map(objective, grid.tolist()))
    else:
        values = [objective(x) for x in grid.tolist()]
    values = np.asarray(values, dtype=float)
    if values.max() - values.min() < FLAT_OBJECTIVE:
        warnings.warn('objective is flat over the coarse grid, the '
                      'optimum is arbitrary', RegimeWarning)
    best = int(np.argmax(values))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, grid_points - 1)]
    rho, value = _golden_section(objective, float(left), float(right), tol)
    if value < values[best]:
        return RhoOptimum(rho_star=float(grid[best]),
                          tau_at_star=float(values[best]),
                          method=RhoMethod.GRID_REFINE)
    return RhoOptimum(rho_star=rho, tau_at_star=value,
                      method=RhoMethod.GOLDEN_SECTION)


def audit_closed_forms(config: ProtocolConfig, lam: ChannelRates,
                       variants: Optional[List[RhoVariant]] = None,
                       tolerance: float = AUDIT_TOLERANCE,
                       tier: OutageTier = OutageTier.FULL,
                       surrogate: bool = False) -> List[ClosedFormAudit]:
    """
    Compares closed-form optima with the numeric argmax of the matching
    analytic throughput, or of the approximation they are derived from.

    Discrepancies above ``tolerance`` are logged at WARNING level. The
    numeric optimum is the reference. Away from the high-margin regime the
    closed forms only locate the optimum of the approximation, so a large
    gap to the full throughput is expected there.

    :param config: A single-antenna operating point.
    :param lam: The channel rates.
    :param variants: The variants to audit, all by default.
    :param tolerance: The largest accepted distance.
    :param tier: The outage closed form of the analytic objective.
    :param surrogate: Whether to maximize :func:`surrogate_objective`
        instead of the analytic throughput.
    :return: One record per variant.
    """
    records = []
    for variant in variants or list(RhoVariant):
        point = replace(config, scheme=variant.scheme)
        closed = rho_star_closed_form(variant, point, lam, tier)
        if surrogate:
            objective = surrogate_objective(point, lam, variant.mode)
        else:
            objective = analytic_objective(point, lam, variant.mode, tier)
        numeric = rho_star_numeric(objective)
        gap = abs(closed.rho_star - numeric.rho_star)
        if gap > tolerance:
            logger.warning('closed-form rho* for %s is %.4f, numeric '
                           'argmax is %.4f', variant.label, closed.rho_star,
                           numeric.rho_star)
        records.append(ClosedFormAudit(variant=variant, closed_form=closed,
                                       numeric=numeric, discrepancy=gap))
    return records


__all__ = [
    'RhoVariant',
    'RhoMethod',
    'RhoOptimum',
    'ClosedFormAudit',
    'analytic_objective',
    'surrogate_objective',
    'rho_star_closed_form',
    'rho_star_numeric',
    'audit_closed_forms'
]
