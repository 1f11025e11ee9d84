"""
Local exceptions raised by the arithmetic and selectivity engines.

Domain errors also inherit from ValueError so that callers treating bad
input generically keep working; configuration errors inherit from
Django's ImproperlyConfigured.

"""

from __future__ import annotations

from typing import TYPE_CHECKING

from django.core.exceptions import ImproperlyConfigured

if TYPE_CHECKING:
    from .selectivity import SubgroupData


class SelectivityError(Exception):
    """Base class for all errors raised by this app."""

    pass


class DomainError(SelectivityError, ValueError):
    """Error raised when an argument lies outside an operation's domain."""

    pass


class UnsupportedError(DomainError):
    """Error raised for valid input the engine does not handle (char 2 roots)."""

    pass


class BadPrimeError(DomainError):
    """Error raised when a prime lies in the bad-prime set of a tower."""

    pass


class HypothesisError(DomainError):
    """Error raised when the local theory is handed a prime ramified in L."""

    pass


class RamifiedInLError(HypothesisError):
    """Error raised when a residue factorization has repeated factors."""

    pass


class ConfigurationError(SelectivityError, ImproperlyConfigured):
    """Error raised when a configuration is valid but contradicts itself."""

    pass


class MissingSplittingDataError(ConfigurationError):
    """Error raised when a ramified prime of B has no splitting data."""

    pass


class InconclusiveScanError(SelectivityError):
    """Error raised when the Frobenius scan runs out of primes."""

    def __init__(self, message: str, partial: SubgroupData | None = None) -> None:
        super().__init__(message)
        self.partial = partial


class InternalConsistencyError(SelectivityError):
    """Error raised when a self-check on computed data fails."""

    pass
