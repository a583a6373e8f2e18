"""Exact Delannoy numbers computed several independent ways."""

from .detexpr import central_via_det, central_via_qi_det, delannoy_via_det
from .errors import (
    CapExceededError,
    DelannoyError,
    DomainError,
    InvariantViolation,
    MethodRefusal,
    NotApplicableError,
)
from .integral import central_via_integral
from .methods import DelannoyMethod, recurrence3
from .verify import bench_methods, verify_grid

__all__ = [
    "CapExceededError",
    "DelannoyError",
    "DelannoyMethod",
    "DomainError",
    "InvariantViolation",
    "MethodRefusal",
    "NotApplicableError",
    "bench_methods",
    "central_via_det",
    "central_via_integral",
    "central_via_qi_det",
    "delannoy_via_det",
    "recurrence3",
    "verify_grid",
]
