################################################################################
# Copyright (c) 2021 ehcrn contributors.                                       #
# Copyrights licensed under the MIT License.                                   #
# See the accompanying LICENSE file for terms.                                 #
#                                                                              #
# Date: 03-05-2021                                                             #
# Author(s): ehcrn contributors                                                #
################################################################################

"""
Exceptions raised by the package.

All of them derive from :class:`EhcrnError`. Most of them also derive from
the built-in exception a caller would naturally catch (``ValueError`` for bad
inputs, ``ArithmeticError`` for numerical failures).
"""

from typing import Optional


class EhcrnError(Exception):
    """ Base class of every error raised by this package. """


class DomainError(EhcrnError, ValueError):
    """
    An argument lies outside the mathematical domain of the function, or a
    value type was built with fields violating its invariants.
    """


class StabilityError(EhcrnError, ArithmeticError):
    """
    An alternating sum lost too many significant digits to be trusted.
    """


class ConsistencyError(EhcrnError, ArithmeticError):
    """
    Two algebraically equivalent evaluations of the same quantity disagree.
    """


class RegimeWarning(UserWarning):
    """
    An approximation is evaluated outside the regime it was derived for.
    """


class ConfigError(EhcrnError, ValueError):
    """ Base class of the run-configuration errors. """


class ConfigParseError(ConfigError):
    """
    The configuration text is malformed or names an unknown key.
    """
    def __init__(self, message: str, lineno: Optional[int] = None,
                 key: Optional[str] = None):
        """
        Creates a parse error.

        :param message: The error description.
        :param lineno: The 1-based line of the offending entry, if any.
        :param key: The offending key, if any.
        """
        if lineno is not None:
            message = f'line {lineno}: {message}'
        super().__init__(message)
        self.lineno = lineno
        self.key = key


class ConfigValidationError(ConfigError):
    """
    The configuration is well formed but violates an invariant.
    """


__all__ = [
    'EhcrnError',
    'DomainError',
    'StabilityError',
    'ConsistencyError',
    'RegimeWarning',
    'ConfigError',
    'ConfigParseError',
    'ConfigValidationError'
]
