"""Floating-point quadrature of the integral form of central Delannoy numbers.

The representation is

    D(n) = (1/pi) int_a^b dt / (sqrt((t - a)(b - t)) t^(n+1)),   a, b = 3 -+ 2 sqrt 2.

Both endpoints carry an inverse square-root singularity. Put
``t = 3 + 2 sqrt2 cos(theta)`` with ``theta`` running from ``pi`` to 0. Then

    t - a = 2 sqrt2 (1 + cos theta),   b - t = 2 sqrt2 (1 - cos theta),
    (t - a)(b - t) = 8 sin^2 theta,    dt = -2 sqrt2 sin theta dtheta,

so the weight cancels against the Jacobian and

    D(n) = (1/pi) int_0^pi (3 + 2 sqrt2 cos theta)^-(n+1) dtheta.

The new integrand is smooth, even and 2 pi-periodic, so the midpoint rule on
``[0, pi]`` converges geometrically.

Near ``theta = pi`` the base ``3 + 2 sqrt2 cos theta`` loses digits to
cancellation, and the power ``n + 1`` amplifies that. It is evaluated as
``a + 4 sqrt2 cos^2(theta/2)`` instead, using ``a = 1/(3 + 2 sqrt2)``; every
term is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .methods import recurrence3

SQRT2 = math.sqrt(2.0)
LOWER = 1.0 / (3.0 + 2.0 * SQRT2)

__all__ = ["QuadratureEstimate", "central_via_integral", "midpoint_value", "relative_error_vs_exact"]


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    nodes: int
    abs_error_bound: float

    def __post_init__(self) -> None:
        if self.nodes < 1:
            raise DomainError("nodes must be >= 1")
        if not self.abs_error_bound >= 0:
            raise DomainError("abs_error_bound must be >= 0")


def midpoint_value(n: int, nodes: int) -> float:
    """Midpoint rule with ``nodes`` points for the substituted integral."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if nodes < 1:
        raise DomainError(f"nodes must be >= 1, got {nodes}")
    h = math.pi / nodes
    power = -(n + 1)
    samples = [
        (LOWER + 4.0 * SQRT2 * math.cos((k + 0.5) * h / 2.0) ** 2) ** power for k in range(nodes)
    ]
    # fsum is correctly rounded, hence independent of summation order
    return math.fsum(samples) / nodes


def central_via_integral(n: int, nodes: int) -> QuadratureEstimate:
    """Estimate ``D(n)``; the error bound is the gap to the doubled-node rule."""
    value = midpoint_value(n, nodes)
    finer = midpoint_value(n, 2 * nodes)
    return QuadratureEstimate(value, nodes, abs(finer - value))


def relative_error_vs_exact(n: int, nodes: int) -> float:
    exact = float(recurrence3(n, n))
    return abs(central_via_integral(n, nodes).value - exact) / exact
