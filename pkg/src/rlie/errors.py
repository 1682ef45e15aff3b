"""Exception types shared by every module.

The CLI maps these onto exit codes, so library code raises the most
specific one that applies.
"""

from __future__ import annotations


class RlieError(Exception):
    """Base class for all library errors."""


class InputError(RlieError, ValueError):
    """Malformed or mathematically invalid input (bad prime, Jacobi failure, ...)."""


class CapacityError(RlieError):
    """An enumeration would exceed the configured budget."""


class ConsistencyError(RlieError):
    """Two independent computations disagreed, or a self-check failed."""


class HypothesisViolation(RlieError):
    """The hypotheses of an operation do not hold for the given input."""


class NotRestrictable(InputError):
    """The algebra carries no p-operation."""
