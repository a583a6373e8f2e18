"""Delannoy numbers as Hessenberg determinants.

Two constructions are provided:

* ``build_qi_matrix(p, q)``: the ``(q+1) x (q+1)`` matrix whose first column
  is ``(<p>_0, ..., <p>_q)`` and whose entry at row ``i``, column ``j + 1``
  (``1 <= j <= q``) is ``(-1)^(i-j) C(i-1, j-1) <p+1>_(i-j)`` for ``i >= j``
  and 0 otherwise. Its determinant equals ``(-1)^q q! D(p, q)``.
* ``CentralANMatrix``: the Toeplitz-Hessenberg matrix ``(a_{i-j+1})`` with
  ones on the superdiagonal, whose determinant equals ``(-1)^n D(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InvariantViolation
from .exactnum import binomial, double_factorial, factorial, falling_factorial
from .hessenberg import HessMatrix, det_cahill

__all__ = [
    "CentralANMatrix",
    "QiMatrix",
    "an_coefficient",
    "build_central_an_matrix",
    "build_qi_matrix",
    "central_via_det",
    "central_via_qi_det",
    "delannoy_via_det",
    "qi_determinant",
    "symmetry_scale_identity",
]


@dataclass(frozen=True)
class QiMatrix:
    p: int
    q: int
    matrix: HessMatrix


@dataclass(frozen=True)
class CentralANMatrix:
    n: int
    matrix: HessMatrix


def _check_nonneg(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 0:
            raise DomainError(f"{name} must be >= 0, got {value}")


def build_qi_matrix(p: int, q: int) -> QiMatrix:
    _check_nonneg(p=p, q=q)
    rows = []
    for i in range(1, q + 2):
        row = [falling_factorial(p, i - 1)]
        for j in range(1, q + 1):
            if j > i:
                # above the superdiagonal; <z>_k with k < 0 is never evaluated
                row.append(0)
            else:
                d = i - j
                sign = -1 if d % 2 else 1
                row.append(sign * binomial(i - 1, j - 1) * falling_factorial(p + 1, d))
        rows.append(row)
    return QiMatrix(p, q, HessMatrix.from_rows(rows))


def qi_determinant(p: int, q: int) -> int:
    """Raw determinant of ``build_qi_matrix(p, q)``; an integer by construction."""
    det = det_cahill(build_qi_matrix(p, q).matrix)
    if det.denominator != 1:
        raise InvariantViolation(f"integer matrix for ({p},{q}) gave determinant {det}")
    return det.numerator


def delannoy_via_det(p: int, q: int) -> int:
    det = qi_determinant(p, q)
    value, rem = divmod(det, factorial(q))
    if rem:
        raise InvariantViolation(f"determinant {det} for ({p},{q}) is not divisible by {q}!")
    if q % 2:
        value = -value
    if value <= 0:
        raise InvariantViolation(f"determinant expression gave non-positive D({p},{q}) = {value}")
    return value


def central_via_qi_det(n: int) -> int:
    return delannoy_via_det(n, n)


@lru_cache(maxsize=None)
def an_coefficient(n: int) -> Fraction:
    """Coefficient ``a_n`` of the Toeplitz-Hessenberg determinant for ``D(n)``.

    ``a_n = (-1)^(n+1) 6^-n sum_{l=1}^{n} (-1)^l 36^l (2l-3)!!/(2l)!! C(l, n-l)``

    >>> an_coefficient(1), an_coefficient(2)
    (Fraction(-3, 1), Fraction(-4, 1))
    """
    if n < 1:
        raise DomainError(f"a_n is defined for n >= 1, got {n}")
    total = Fraction(0)
    for ell in range(1, n + 1):
        c = binomial(ell, n - ell)
        if c == 0:
            continue
        term = Fraction(36**ell * double_factorial(2 * ell - 3), double_factorial(2 * ell)) * c
        total += -term if ell % 2 else term
    total /= 6**n
    return total if n % 2 else -total


def build_central_an_matrix(n: int) -> CentralANMatrix:
    _check_nonneg(n=n)
    a = [None] + [an_coefficient(k) for k in range(1, n + 1)]
    rows = []
    for i in range(1, n + 1):
        rows.append([a[i - j + 1] if j <= i else (1 if j == i + 1 else 0) for j in range(1, n + 1)])
    return CentralANMatrix(n, HessMatrix.from_rows(rows))


def central_via_det(n: int) -> int:
    """Central Delannoy number from the rational Toeplitz-Hessenberg determinant.

    ``n = 0`` gives the empty determinant, 1.
    """
    det = det_cahill(build_central_an_matrix(n).matrix)
    if det.denominator != 1:
        raise InvariantViolation(f"a_n determinant for n={n} is not an integer: {det}")
    value = det.numerator
    return -value if n % 2 else value


def symmetry_scale_identity(p: int, q: int) -> bool:
    """Check ``|Qi(p,q)| = (-1)^(p-q) (q!/p!) |Qi(q,p)|`` exactly."""
    lhs = Fraction(qi_determinant(p, q))
    rhs = Fraction(factorial(q), factorial(p)) * qi_determinant(q, p)
    if (p - q) % 2:
        rhs = -rhs
    return lhs == rhs
