################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 04-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
System model: node geometry, protocol configuration and the parameters
derived from them.

All downstream modules read their symbols from the types defined here.
Noise is normalized (N0 = 1), so the interference temperature is carried
as the linear ratio I/N0. Channel power gains are exponential with rate
``lambda_x = d_x ** epsilon``, i.e. mean gain ``d_x ** -epsilon``.
"""

import math
from dataclasses import dataclass
from enum import Enum

from ehcrn.errors import DomainError


class EHScheme(Enum):
    """ Energy-harvesting protocol at the relay. """
    PS = 'ps'
    """ Power splitting: a fraction rho of the received power is harvested. """
    TS = 'ts'
    """ Time switching: a fraction rho of the block is spent harvesting. """


def _check_positive(name: str, value: float) -> None:
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f'{name} must be positive and finite, got {value}')


def db_to_linear(value_db: float) -> float:
    """
    Converts a ratio expressed in dB to linear scale.

    :param value_db: The ratio in dB.
    :return: 10 ** (value_db / 10).
    """
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class ChannelRates:
    """
    Rate parameters of the exponentially distributed channel power gains.

    A gain with rate ``lam`` has mean ``1 / lam``.
    """
    sr: float
    rd: float
    sp: float
    rp: float
    sd: float

    def __post_init__(self):
        for name in ('sr', 'rd', 'sp', 'rp', 'sd'):
            _check_positive(f'lambda_{name}', getattr(self, name))


@dataclass(frozen=True)
class SystemGeometry:
    """
    Normalized node distances and the path-loss exponent.

    S is the secondary source, R the relay, D the destination and P the
    primary receiver.
    """
    d_sr: float = 1.2
    d_rd: float = 1.8
    d_sp: float = 3.0
    d_rp: float = 3.0
    d_sd: float = 3.0
    epsilon: float = 4.0

    def __post_init__(self):
        for name in ('d_sr', 'd_rd', 'd_sp', 'd_rp', 'd_sd', 'epsilon'):
            _check_positive(name, getattr(self, name))


@dataclass(frozen=True)
class ProtocolConfig:
    """
    One operating point of the network.

    :param scheme: The energy-harvesting protocol.
    :param rho: EH parameter, in the open interval (0, 1).
    :param eta: Energy conversion efficiency, in (0, 1].
    :param n_antennas: Number of relay antennas L.
    :param rate: Target rate Rs of the secondary network, in bits per
        channel use.
    :param i_over_n0: Interference temperature to noise ratio, linear.
    """
    scheme: EHScheme = EHScheme.PS
    rho: float = 0.4
    eta: float = 0.7
    n_antennas: int = 1
    rate: float = 1.0
    i_over_n0: float = db_to_linear(6.0)

    def __post_init__(self):
        if not isinstance(self.scheme, EHScheme):
            raise DomainError(f'scheme must be an EHScheme, got '
                              f'{self.scheme!r}')
        if not 0.0 < self.rho < 1.0:
            raise DomainError(f'rho must lie in (0,1), got {self.rho}')
        if not 0.0 < self.eta <= 1.0:
            raise DomainError(f'eta must lie in (0,1], got {self.eta}')
        if isinstance(self.n_antennas, bool) or \
                int(self.n_antennas) != self.n_antennas or \
                self.n_antennas < 1:
            raise DomainError(f'L must be a positive integer, got '
                              f'{self.n_antennas}')
        _check_positive('rs', self.rate)
        _check_positive('i_over_n0', self.i_over_n0)


@dataclass(frozen=True)
class DerivedParams:
    """
    Unified protocol parameters of an operating point.

    ``xi`` is the fraction of received power used for information, ``beta``
    the harvest gain and ``zeta`` the fraction of the block carrying data.
    ``gamma_th = 2 ** (2 Rs) - 1`` and ``psi = gamma_th / (I/N0)``.
    """
    xi: float
    beta: float
    zeta: float
    gamma_th: float
    psi: float
    config: ProtocolConfig

    @property
    def n_antennas(self) -> int:
        return self.config.n_antennas

    @property
    def rate(self) -> float:
        return self.config.rate

    @property
    def i_over_n0(self) -> float:
        return self.config.i_over_n0

    @property
    def eta(self) -> float:
        return self.config.eta

    @property
    def rho(self) -> float:
        return self.config.rho

    @property
    def scheme(self) -> EHScheme:
        return self.config.scheme


def lambdas_from_geometry(geometry: SystemGeometry) -> ChannelRates:
    """
    Channel rate parameters of a geometry, ``lambda_x = d_x ** epsilon``.

    :param geometry: The node placement.
    :return: The five channel rates.
    """
    eps = geometry.epsilon
    return ChannelRates(sr=geometry.d_sr ** eps,
                        rd=geometry.d_rd ** eps,
                        sp=geometry.d_sp ** eps,
                        rp=geometry.d_rp ** eps,
                        sd=geometry.d_sd ** eps)


def derive(config: ProtocolConfig) -> DerivedParams:
    """
    Maps a protocol configuration to the unified parameters.

    PS: xi = 1 - rho, beta = eta rho, zeta = 1.
    TS: xi = 1, beta = 2 eta rho / (1 - rho), zeta = 1 - rho.

    :param config: The operating point.
    :return: The derived parameters.
    """
    rho, eta = config.rho, config.eta
    if config.scheme is EHScheme.PS:
        xi, beta, zeta = 1.0 - rho, eta * rho, 1.0
    else:
        xi, beta, zeta = 1.0, 2.0 * eta * rho / (1.0 - rho), 1.0 - rho
    gamma_th = 2.0 ** (2.0 * config.rate) - 1.0
    return DerivedParams(xi=xi, beta=beta, zeta=zeta, gamma_th=gamma_th,
                         psi=gamma_th / config.i_over_n0, config=config)


__all__ = [
    'EHScheme',
    'db_to_linear',
    'ChannelRates',
    'SystemGeometry',
    'ProtocolConfig',
    'DerivedParams',
    'lambdas_from_geometry',
    'derive'
]
