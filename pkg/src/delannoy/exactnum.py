"""Exact integer combinatorics.

Python's ``int`` is already an arbitrary-precision signed integer and
``fractions.Fraction`` an always-reduced rational with positive
denominator, so both are used directly as the value types.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

BigInt = int
BigRat = Fraction

__all__ = [
    "BigInt",
    "BigRat",
    "binomial",
    "double_factorial",
    "factorial",
    "falling_factorial",
]


def falling_factorial(z: int, n: int) -> int:
    """Return ``z (z-1) ... (z-n+1)``, with the empty product 1 for ``n = 0``."""
    if n < 0:
        raise DomainError(f"falling factorial order must be >= 0, got {n}")
    if 0 <= z:
        # perm() is 0 once a zero factor appears, i.e. n > z
        return math.perm(z, n)
    return math.prod(range(z, z - n, -1))


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial argument must be >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient ``<n>_k / k!`` for any integer ``n``.

    >>> binomial(8, 3), binomial(3, 5), binomial(-2, 3)
    (56, 0, -4)
    """
    if k < 0:
        raise DomainError(f"binomial lower argument must be >= 0, got {k}")
    if n >= 0:
        return math.comb(n, k)
    num = falling_factorial(n, k)
    den = math.factorial(k)
    quotient, rem = divmod(num, den)
    assert rem == 0
    return quotient


def double_factorial(m: int) -> int:
    """``m!! = m (m-2) (m-4) ...`` with ``0!! = (-1)!! = 1``."""
    if m < -1:
        raise DomainError(f"double factorial argument must be >= -1, got {m}")
    return math.prod(range(m, 0, -2))
