"""Lower-Hessenberg determinants over the rationals.

A square matrix ``E = (e_ij)`` is lower Hessenberg when ``e_ij = 0`` for
``j > i + 1``. Its leading principal minors ``Q_0 = 1, Q_1, ..., Q_n``
satisfy (1-indexed)::

    Q_n = sum_{r=1}^{n} (-1)^(n-r) e_{n,r} (prod_{j=r}^{n-1} e_{j,j+1}) Q_{r-1}

which gives the determinant in O(n^2) multiplications. A first-row cofactor
expansion is kept as an independent oracle for small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapExceededError, DomainError

COFACTOR_CAP = 10

__all__ = ["COFACTOR_CAP", "HessMatrix", "det_cahill", "det_cofactor", "leading_minors"]


@dataclass(frozen=True)
class HessMatrix:
    """Dense square lower-Hessenberg matrix with exact rational entries.

    ``rows`` is 0-indexed internally; :meth:`e` gives the 1-indexed view
    used in the recursion.
    """

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise DomainError(f"row {i} has length {len(row)}, expected {n}")
            for j in range(i + 2, n):
                if row[j] != 0:
                    raise DomainError(
                        f"entry ({i + 1},{j + 1}) = {row[j]} lies above the superdiagonal"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int | Fraction]]) -> HessMatrix:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def empty(cls) -> HessMatrix:
        return cls(())

    @property
    def n(self) -> int:
        return len(self.rows)

    def e(self, i: int, j: int) -> Fraction:
        """Entry ``e_{i,j}`` with 1-based indices."""
        return self.rows[i - 1][j - 1]

    def scale_row(self, i: int, s: int | Fraction) -> HessMatrix:
        """Copy with the 0-indexed row ``i`` multiplied by ``s``."""
        s = Fraction(s)
        rows = list(self.rows)
        rows[i] = tuple(s * x for x in rows[i])
        return HessMatrix(tuple(rows))


def leading_minors(m: HessMatrix) -> list[Fraction]:
    """Return ``[Q_0, Q_1, ..., Q_n]`` for ``m``."""
    q = [Fraction(1)]
    for n in range(1, m.n + 1):
        total = Fraction(0)
        # walk r = n, n-1, ..., 1 so the superdiagonal product grows by one factor per step
        superdiag = Fraction(1)
        sign = 1
        for r in range(n, 0, -1):
            if r < n:
                superdiag *= m.e(r, r + 1)
                sign = -sign
            if superdiag == 0:
                break
            entry = m.e(n, r)
            if entry:
                total += sign * entry * superdiag * q[r - 1]
        q.append(total)
    return q


def det_cahill(m: HessMatrix) -> Fraction:
    """Determinant of a lower-Hessenberg matrix via the minor recursion."""
    return leading_minors(m)[-1]


def det_cofactor(m: HessMatrix, cap: int = COFACTOR_CAP) -> Fraction:
    """Determinant by recursive first-row cofactor expansion.

    Only meant as a test oracle: cost grows factorially, hence ``cap``.
    """
    if m.n > cap:
        raise CapExceededError(f"cofactor expansion refused for dimension {m.n} > cap {cap}")
    return _cofactor([list(row) for row in m.rows])


def _cofactor(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return a[0][0]
    total = Fraction(0)
    for j, pivot in enumerate(a[0]):
        if pivot == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = pivot * _cofactor(minor)
        total += -term if j % 2 else term
    return total
