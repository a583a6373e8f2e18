"""Exception hierarchy shared by the computation modules."""

from __future__ import annotations


class DelannoyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DelannoyError, ValueError):
    """An argument lies outside the domain of the function."""


class MethodRefusal(DelannoyError):
    """A method declined to evaluate an input (cap or applicability)."""


class CapExceededError(MethodRefusal):
    """Input size exceeds a configured safety cap."""


class NotApplicableError(MethodRefusal):
    """The method is not defined for this input, e.g. off-diagonal cells."""


class InvariantViolation(DelannoyError, AssertionError):
    """An internal exactness check failed. Always indicates a bug."""
