################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 17-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

import math
from dataclasses import dataclass
from typing import List, Optional, Union

SWEEP_HEADER = ['axis', 'mode', 'engine', 'p1', 'p2', 'p', 'tau',
                'std_error', 'status']
OPTIMIZE_HEADER = SWEEP_HEADER + ['rho_star', 'method']

STATUS_OK = 'ok'
STATUS_UNAVAILABLE = 'unavailable'

AxisValue = Union[float, str]


@dataclass(frozen=True)
class ResultRow:
    """
    One evaluated (axis value, mode, engine) combination.

    Probabilities are in [0, 1] and ``tau`` in [0, Rs] when ``status`` is
    ``'ok'``. A failed row carries NaN values and the error in ``status``.
    ``rho_star`` and ``method`` are only set by optimizer runs.
    """
    axis: AxisValue
    mode: str
    engine: str
    p1: float = math.nan
    p2: float = math.nan
    p: float = math.nan
    tau: float = math.nan
    std_error: Optional[float] = None
    status: str = STATUS_OK
    rho_star: Optional[float] = None
    method: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status not in (STATUS_OK, STATUS_UNAVAILABLE)


def format_value(value) -> str:
    """
    Renders a CSV field. Floats use 12 significant digits, None and NaN
    are empty.
    """
    if value is None:
        return ''
    if isinstance(value, float):
        if math.isnan(value):
            return ''
        return f'{value:.12g}'
    return str(value)


def row_fields(row: ResultRow, with_optimum: bool = False) -> List[str]:
    fields = [row.axis, row.mode, row.engine, row.p1, row.p2, row.p,
              row.tau, row.std_error, row.status]
    if with_optimum:
        fields += [row.rho_star, row.method]
    return [format_value(x) for x in fields]


__all__ = [
    'SWEEP_HEADER',
    'OPTIMIZE_HEADER',
    'STATUS_OK',
    'STATUS_UNAVAILABLE',
    'ResultRow',
    'format_value',
    'row_fields'
]
