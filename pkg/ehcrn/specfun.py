################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 03-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Special functions used by the closed-form evaluators.

The generalized exponential integral

    E_n(x) = int_1^inf exp(-x t) t^(-n) dt,

the exponential integral Ei(x) for positive arguments and the gamma and
binomial helpers. Every function is a pure function of real scalars.

The closed forms multiply exponential integrals by exponentials of similar
magnitude, so scaled variants are provided as well:
:func:`expint_en_scaled` returns ``exp(x) * E_n(x)`` and
:func:`expint_ei_scaled` returns ``exp(-x) * Ei(x)``. They never underflow
or overflow on the positive axis.
"""

import math

from scipy.special import gammaln

from ehcrn.errors import DomainError

EULER_GAMMA = 0.57721566490153286061
EI_ASYMP_CONVERGENCE_RADIUS = 40.0
# exp(-x) underflows to a subnormal above this value
EXP_UNDERFLOW = 745.0
EXP_OVERFLOW = 709.78
MAX_BINOMIAL_ORDER = 64

_EPS = 1e-16
_FPMIN = 1e-300
_MAX_ITERATIONS = 10000


def _check_order_and_argument(n: int, x: float) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f'E_n requires an integer order n >= 1, got {n}')
    if not x > 0.0:
        raise DomainError(f'E_n requires x > 0, got {x}')


def _e1_series(x: float) -> float:
    # E_1(x) = -gamma - ln(x) - sum_{k>=1} (-x)^k / (k k!), x < 1
    terms = [-EULER_GAMMA, -math.log(x)]
    power = 1.0
    k = 1
    while True:
        power *= -x / k
        term = -power / k
        terms.append(term)
        # E_1 > 0.2 on (0, 1), an absolute cut is relative to 5e-16
        if abs(term) < 0.1 * _EPS or k > _MAX_ITERATIONS:
            break
        k += 1
    return math.fsum(terms)


def _en_continued_fraction(n: int, x: float) -> float:
    """
    Modified Lentz evaluation of the continued fraction of E_n.

    :return: exp(x) * E_n(x). Converges quickly for x >= 1.
    """
    b = x + n
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITERATIONS):
        a = -i * (n - 1 + i)
        b += 2.0
        d = a * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + a / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f'E_{n}({x}) continued fraction did not converge')


def _en_small_argument(n: int, x: float) -> float:
    # upward recurrence from E_1, stable while x < 1 <= n
    value = _e1_series(x)
    decay = math.exp(-x)
    for k in range(1, n):
        value = (decay - x * value) / k
    return value


def expint_en(n: int, x: float) -> float:
    """
    Generalized exponential integral E_n(x).

    :param n: The order, a positive integer.
    :param x: The argument, a positive real.
    :return: E_n(x). Returns 0 when exp(-x) underflows.
    """
    _check_order_and_argument(n, x)
    if x >= EXP_UNDERFLOW:
        return 0.0
    if x < 1.0:
        return _en_small_argument(int(n), x)
    return _en_continued_fraction(int(n), x) * math.exp(-x)


def expint_en_scaled(n: int, x: float) -> float:
    """
    Scaled generalized exponential integral exp(x) * E_n(x).

    The value lies in (1/(x+n), 1/(x+n-1)] and tends to 1/x for large x.

    :param n: The order, a positive integer.
    :param x: The argument, a positive real.
    :return: exp(x) * E_n(x).
    """
    _check_order_and_argument(n, x)
    if x < 1.0:
        return _en_small_argument(int(n), x) * math.exp(x)
    return _en_continued_fraction(int(n), x)


def _ei_taylor(x: float) -> float:
    terms = [EULER_GAMMA, math.log(x)]
    power = 1.0
    series = 0.0
    k = 1
    while True:
        power *= x / k
        term = power / k
        terms.append(term)
        series += term
        if term < _EPS * series or k > _MAX_ITERATIONS:
            break
        k += 1
    return math.fsum(terms)


def _ei_asymptotic_scaled(x: float) -> float:
    # exp(-x) Ei(x) ~ (1/x) sum_k k! / x^k, truncated at the smallest term
    terms = [1.0]
    term = 1.0
    k = 1
    while True:
        following = term * k / x
        if following > term or following < _EPS:
            break
        term = following
        terms.append(term)
        k += 1
    return math.fsum(terms) / x


def expint_ei(x: float) -> float:
    """
    Exponential integral Ei(x) = -PV int_{-x}^inf exp(-t)/t dt, for x > 0.

    Uses the ascending series up to x = 40 and the asymptotic series beyond.

    :param x: The argument, a positive real.
    :return: Ei(x). Returns ``inf`` when exp(x) overflows.
    """
    if not x > 0.0:
        raise DomainError(f'Ei requires x > 0, got {x}')
    if x <= EI_ASYMP_CONVERGENCE_RADIUS:
        return _ei_taylor(x)
    if x > EXP_OVERFLOW:
        return math.inf
    return _ei_asymptotic_scaled(x) * math.exp(x)


def expint_ei_scaled(x: float) -> float:
    """
    Scaled exponential integral exp(-x) * Ei(x), for x > 0.

    :param x: The argument, a positive real.
    :return: exp(-x) * Ei(x).
    """
    if not x > 0.0:
        raise DomainError(f'Ei requires x > 0, got {x}')
    if x <= EI_ASYMP_CONVERGENCE_RADIUS:
        return _ei_taylor(x) * math.exp(-x)
    return _ei_asymptotic_scaled(x)


def ln_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function.

    :param x: A positive real.
    :return: ln(Gamma(x)).
    """
    if not x > 0.0:
        raise DomainError(f'ln_gamma requires x > 0, got {x}')
    return float(gammaln(x))


def binomial(n: int, k: int) -> int:
    """
    Binomial coefficient C(n, k) in exact integer arithmetic.

    :param n: A non-negative integer, at most 64.
    :param k: An integer with 0 <= k <= n.
    :return: C(n, k).
    """
    if int(n) != n or int(k) != k or not 0 <= k <= n:
        raise DomainError(f'binomial requires 0 <= k <= n, got ({n}, {k})')
    if n > MAX_BINOMIAL_ORDER:
        raise OverflowError(f'binomial order {n} exceeds the supported range '
                            f'(n <= {MAX_BINOMIAL_ORDER})')
    return math.comb(int(n), int(k))


__all__ = [
    'expint_en',
    'expint_en_scaled',
    'expint_ei',
    'expint_ei_scaled',
    'ln_gamma',
    'binomial'
]
