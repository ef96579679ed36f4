################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 17-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Run configuration: a line-oriented ``key = value`` document.

Keys are case-insensitive and ``#`` starts a comment. Example::

    scheme = ps
    rho = 0.4
    L = 2
    i_over_n0_db = 6
    axis = i_over_n0_db
    values = 0:2:20      # start:step:stop, or a comma list
    modes = cooperative, no_direct
    engines = analytic, montecarlo
    reoptimize = false   # optimize: rho* at every axis value

:func:`render` writes a spec back so that
``parse_config(render(spec)) == spec``.
"""

import math
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Callable, Dict, Tuple

from ehcrn.analytic import OutageTier, TransmissionMode
from ehcrn.errors import ConfigParseError, ConfigValidationError, \
    DomainError
from ehcrn.model import EHScheme, ProtocolConfig, SystemGeometry, \
    db_to_linear
from ehcrn.montecarlo import Combining


class SweepAxis(Enum):
    I_OVER_N0_DB = 'i_over_n0_db'
    RHO = 'rho'
    RS = 'rs'
    L = 'l'
    D_SR = 'd_sr'


class EngineKind(Enum):
    ANALYTIC = 'analytic'
    MONTECARLO = 'montecarlo'


DEFAULT_TRIALS = 10 ** 6
DEFAULT_OPTIMIZE_TRIALS = 10 ** 5
MIN_TRIALS = 1000
_RANGE_SLACK = 1e-9


def _unique(items) -> tuple:
    # enum declaration order, duplicates dropped
    items = set(items)
    return tuple(x for x in type(next(iter(items))) if x in items) \
        if items else ()


@dataclass(frozen=True)
class SweepSpec:
    """
    A validated parameter sweep.

    ``values`` are the points of ``axis``, strictly increasing. With
    ``collinear`` set and ``axis = d_sr``, the R-D distance follows as
    ``d_sd - d_sr``. With ``reoptimize`` set, an optimization finds the
    optimal rho at every axis value instead of only at the base point.
    """
    config: ProtocolConfig = field(default_factory=ProtocolConfig)
    geometry: SystemGeometry = field(default_factory=SystemGeometry)
    axis: SweepAxis = SweepAxis.I_OVER_N0_DB
    values: Tuple[float, ...] = ()
    modes: Tuple[TransmissionMode, ...] = (TransmissionMode.COOPERATIVE,)
    engines: Tuple[EngineKind, ...] = (EngineKind.ANALYTIC,)
    tier: OutageTier = OutageTier.FULL
    combining: Combining = Combining.MRC
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    optimize_trials: int = DEFAULT_OPTIMIZE_TRIALS
    collinear: bool = False
    reoptimize: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(float(x)
                                                 for x in self.values))
        object.__setattr__(self, 'modes', _unique(self.modes))
        object.__setattr__(self, 'engines', _unique(self.engines))
        if not self.values:
            object.__setattr__(self, 'values', (self.base_value(),))
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigValidationError('axis values must be strictly '
                                        'increasing')
        if not self.modes:
            raise ConfigValidationError('at least one mode is required')
        if not self.engines:
            raise ConfigValidationError('at least one engine is required')
        for name in ('trials', 'optimize_trials'):
            if getattr(self, name) < MIN_TRIALS:
                raise ConfigValidationError(f'{name} must be at least '
                                            f'{MIN_TRIALS}')
        if self.reoptimize and self.axis is SweepAxis.RHO:
            raise ConfigValidationError('rho cannot be re-optimized along '
                                        'the rho axis')
        for value in self.values:
            self.point(value)

    def base_value(self) -> float:
        """ Value of the axis parameter in the base configuration. """
        if self.axis is SweepAxis.I_OVER_N0_DB:
            return 10.0 * math.log10(self.config.i_over_n0)
        if self.axis is SweepAxis.RHO:
            return self.config.rho
        if self.axis is SweepAxis.RS:
            return self.config.rate
        if self.axis is SweepAxis.L:
            return float(self.config.n_antennas)
        return self.geometry.d_sr

    def point(self, value: float) -> Tuple[ProtocolConfig, SystemGeometry]:
        """
        Operating point at one axis value.

        :raises ConfigValidationError: if the value violates a model
            invariant.
        """
        config, geometry = self.config, self.geometry
        try:
            if self.axis is SweepAxis.I_OVER_N0_DB:
                config = replace(config, i_over_n0=db_to_linear(value))
            elif self.axis is SweepAxis.RHO:
                config = replace(config, rho=value)
            elif self.axis is SweepAxis.RS:
                config = replace(config, rate=value)
            elif self.axis is SweepAxis.L:
                if value != int(value):
                    raise DomainError(f'L must be a positive integer, got '
                                      f'{value}')
                config = replace(config, n_antennas=int(value))
            elif self.collinear:
                geometry = replace(geometry, d_sr=value,
                                   d_rd=geometry.d_sd - value)
            else:
                geometry = replace(geometry, d_sr=value)
        except DomainError as e:
            raise ConfigValidationError(str(e)) from e
        return config, geometry


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ('true', 'yes', '1', 'on'):
        return True
    if lowered in ('false', 'no', '0', 'off'):
        return False
    raise ValueError(f'not a boolean: {text!r}')


def _parse_int(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError(f'not an integer: {text!r}')
    return int(value)


def _parse_values(text: str) -> Tuple[float, ...]:
    if ':' in text:
        parts = [float(x) for x in text.split(':')]
        if len(parts) != 3:
            raise ValueError('a range must be start:step:stop')
        start, step, stop = parts
        if step <= 0.0 or stop < start:
            raise ValueError('a range needs step > 0 and stop >= start')
        count = int(math.floor((stop - start) / step + _RANGE_SLACK))
        return tuple(start + k * step for k in range(count + 1))
    return tuple(float(x) for x in text.split(',') if x.strip())


def _enum_list(enum_type) -> Callable[[str], tuple]:
    def parse(text: str) -> tuple:
        return tuple(enum_type(x.strip().lower())
                     for x in text.split(',') if x.strip())
    return parse


_PROTOCOL_KEYS: Dict[str, Tuple[str, Callable]] = {
    'scheme': ('scheme', lambda x: EHScheme(x.lower())),
    'rho': ('rho', float),
    'eta': ('eta', float),
    'l': ('n_antennas', _parse_int),
    'rs': ('rate', float),
    'i_over_n0': ('i_over_n0', float),
    'i_over_n0_db': ('i_over_n0', lambda x: db_to_linear(float(x))),
}
_GEOMETRY_KEYS = {f.name: (f.name, float) for f in fields(SystemGeometry)}
_SWEEP_KEYS: Dict[str, Tuple[str, Callable]] = {
    'axis': ('axis', lambda x: SweepAxis(x.lower())),
    'values': ('values', _parse_values),
    'modes': ('modes', _enum_list(TransmissionMode)),
    'engines': ('engines', _enum_list(EngineKind)),
    'tier': ('tier', lambda x: OutageTier(x.lower())),
    'combining': ('combining', lambda x: Combining(x.lower())),
    'trials': ('trials', _parse_int),
    'seed': ('seed', _parse_int),
    'optimize_trials': ('optimize_trials', _parse_int),
    'collinear': ('collinear', _parse_bool),
    'reoptimize': ('reoptimize', _parse_bool),
}


def parse_config(text: str) -> SweepSpec:
    """
    Parses a run configuration.

    :param text: The configuration document.
    :return: The validated sweep.
    :raises ConfigParseError: on a malformed line, an unknown or repeated
        key, or a value of the wrong type. The error carries the line
        number and the key.
    :raises ConfigValidationError: if the values violate an invariant.
    """
    sections = {'protocol': {}, 'geometry': {}, 'sweep': {}}
    seen = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        if '=' not in content:
            raise ConfigParseError(f"expected 'key = value', got "
                                   f"{content!r}", lineno=lineno)
        key, raw = (x.strip() for x in content.split('=', 1))
        key = key.lower()
        if key in _PROTOCOL_KEYS:
            section, (name, convert) = 'protocol', _PROTOCOL_KEYS[key]
        elif key in _GEOMETRY_KEYS:
            section, (name, convert) = 'geometry', _GEOMETRY_KEYS[key]
        elif key in _SWEEP_KEYS:
            section, (name, convert) = 'sweep', _SWEEP_KEYS[key]
        else:
            raise ConfigParseError(f"unknown key '{key}'", lineno=lineno,
                                   key=key)
        if name in seen:
            raise ConfigParseError(f"'{key}' repeats line {seen[name]}",
                                   lineno=lineno, key=key)
        seen[name] = lineno
        try:
            sections[section][name] = convert(raw)
        except ValueError as e:
            raise ConfigParseError(f"invalid value for '{key}': {e}",
                                   lineno=lineno, key=key) from e

    try:
        config = ProtocolConfig(**sections['protocol'])
        geometry = SystemGeometry(**sections['geometry'])
    except DomainError as e:
        raise ConfigValidationError(str(e)) from e
    return SweepSpec(config=config, geometry=geometry, **sections['sweep'])


def render(spec: SweepSpec) -> str:
    """
    Writes a sweep back as a configuration document. Floats are written
    with ``repr`` so they parse back to the same value.
    """
    config, geometry = spec.config, spec.geometry
    lines = [
        '# operating point',
        f'scheme = {config.scheme.value}',
        f'rho = {config.rho!r}',
        f'eta = {config.eta!r}',
        f'L = {config.n_antennas}',
        f'rs = {config.rate!r}',
        f'i_over_n0 = {config.i_over_n0!r}',
        '# geometry',
    ]
    lines += [f'{f.name} = {getattr(geometry, f.name)!r}'
              for f in fields(SystemGeometry)]
    lines += [
        '# sweep',
        f'axis = {spec.axis.value}',
        'values = ' + ', '.join(repr(x) for x in spec.values),
        'modes = ' + ', '.join(x.value for x in spec.modes),
        'engines = ' + ', '.join(x.value for x in spec.engines),
        f'tier = {spec.tier.value}',
        f'combining = {spec.combining.value}',
        f'trials = {spec.trials}',
        f'seed = {spec.seed}',
        f'optimize_trials = {spec.optimize_trials}',
        f'collinear = {str(spec.collinear).lower()}',
        f'reoptimize = {str(spec.reoptimize).lower()}',
    ]
    return '\n'.join(lines) + '\n'


__all__ = [
    'SweepAxis',
    'EngineKind',
    'SweepSpec',
    'parse_config',
    'render'
]
