"""Exception types shared across the lab.

The CLI maps these onto exit codes: bad specs / bad arguments / bad run
configuration exit 2, domain violations exit 3, range overflows exit 4.
"""

from __future__ import annotations


class CheblabError(Exception):
    """Base class for all library errors."""


class SpecStringError(CheblabError, ValueError):
    """A context/form/curve spec string failed to parse or validate."""


class ArgumentError(CheblabError, ValueError):
    """An operation was called with arguments outside its contract."""


class DomainError(CheblabError, ValueError):
    """Mathematically undefined request (e.g. modulus sharing a ramified prime)."""


class RangeOverflowError(CheblabError, OverflowError):
    """A requested bound does not fit the supported integer range."""


class ConfigError(CheblabError, ValueError):
    """An inconsistent run configuration (grids, cutoffs, strict-mode bounds)."""
