"""Non-determinant strategies for computing Delannoy numbers.

Each function here reaches ``D(p, q)`` by a different route so that any
two of them can serve as a cross-check on each other. ``qi_recursion`` in
particular never touches the three-term recurrence.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable

from .detexpr import central_via_det, delannoy_via_det
from .errors import CapExceededError, DomainError, InvariantViolation, NotApplicableError
from .exactnum import binomial, factorial, falling_factorial

LATTICE_CAP = 22

__all__ = [
    "LATTICE_CAP",
    "DelannoyMethod",
    "MemoTable",
    "central_gf_series",
    "central_matrix_reformulation_check",
    "central_qi_relation",
    "gf_bivariate",
    "lattice_brute",
    "qi_recursion",
    "recurrence3",
    "sum_binom_2i",
    "sum_binom_conv",
]


def _check(p: int, q: int) -> None:
    if p < 0 or q < 0:
        raise DomainError(f"Delannoy indices must be >= 0, got ({p},{q})")


class MemoTable:
    """Grid ``values[p][q] = D(p, q)`` filled by the three-term recurrence."""

    def __init__(self, max_p: int, max_q: int):
        _check(max_p, max_q)
        self.max_p = max_p
        self.max_q = max_q
        grid = [[1] * (max_q + 1) for _ in range(max_p + 1)]
        for p in range(1, max_p + 1):
            prev, row = grid[p - 1], grid[p]
            for q in range(1, max_q + 1):
                row[q] = prev[q] + prev[q - 1] + row[q - 1]
        self._values = tuple(tuple(row) for row in grid)

    @property
    def values(self) -> tuple[tuple[int, ...], ...]:
        return self._values

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        return self._values[p][q]


def recurrence3(p: int, q: int) -> int:
    _check(p, q)
    return MemoTable(p, q)[p, q]


def sum_binom_2i(p: int, q: int) -> int:
    _check(p, q)
    return sum(binomial(p, i) * binomial(q, i) << i for i in range(p + 1))


def sum_binom_conv(p: int, q: int) -> int:
    _check(p, q)
    return sum(binomial(q, i) * binomial(p + q - i, q) for i in range(q + 1))


def lattice_brute(p: int, q: int, cap: int = LATTICE_CAP) -> int:
    """Count lattice paths (0,0) -> (p,q) with E, N and NE steps one by one.

    Once a coordinate has reached its target the rest of the path is forced,
    so the walk stops there and counts that single completion.
    """
    _check(p, q)
    if p + q > cap:
        raise CapExceededError(f"lattice walk refused for p+q = {p + q} > cap {cap}")
    count = 0
    stack = [(0, 0)]
    while stack:
        x, y = stack.pop()
        if x == p or y == q:
            count += 1
            continue
        stack.append((x + 1, y))
        stack.append((x, y + 1))
        stack.append((x + 1, y + 1))
    return count


def _mul_truncated(a: list[list[int]], b: list[list[int]], p: int, q: int) -> list[list[int]]:
    """Product of two bivariate polynomials keeping only x^i y^j with i<=p, j<=q."""
    out = [[0] * (q + 1) for _ in range(p + 1)]
    b_terms = [(i, j, c) for i, row in enumerate(b) for j, c in enumerate(row) if c]
    for i, row in enumerate(a):
        for j, c in enumerate(row):
            if not c:
                continue
            for bi, bj, bc in b_terms:
                if i + bi <= p and j + bj <= q:
                    out[i + bi][j + bj] += c * bc
    return out


def gf_bivariate(p: int, q: int) -> int:
    """Coefficient of ``x^p y^q`` in ``1/(1 - x - y - xy)``.

    Expands the geometric series ``sum_k (x + y + xy)^k`` up to ``k = p + q``,
    the largest power that can still contribute to that monomial.
    """
    _check(p, q)
    step = [[0] * (q + 1) for _ in range(p + 1)]
    if p >= 1:
        step[1][0] = 1
    if q >= 1:
        step[0][1] = 1
    if p >= 1 and q >= 1:
        step[1][1] = 1
    power = [[0] * (q + 1) for _ in range(p + 1)]
    power[0][0] = 1
    coeff = power[p][q]
    for _ in range(p + q):
        power = _mul_truncated(power, step, p, q)
        coeff += power[p][q]
    return coeff


def qi_recursion(p: int, q: int) -> int:
    """``D(p,q) = C(p,q) + (-1)^(q-1) sum_{r<q} (-1)^r C(p+1, q-r) D(p,r)``.

    Builds the fixed-``p`` row ``D(p,0), ..., D(p,q)`` left to right.
    """
    _check(p, q)
    row = [1]
    for s in range(1, q + 1):
        acc = 0
        for r in range(s):
            term = binomial(p + 1, s - r) * row[r]
            acc += -term if r % 2 else term
        # (-1)^(s-1)
        row.append(binomial(p, s) + (acc if s % 2 else -acc))
    return row[q]


def central_qi_relation(n: int, table: MemoTable | None = None) -> int:
    """``D(n) = 1 + (-1)^(n+1) sum_{r<n} (-1)^r C(n+1, r+1) D(n, r)``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if table is None or table.max_p < n or table.max_q < n:
        table = MemoTable(n, n)
    acc = 0
    for r in range(n):
        term = binomial(n + 1, r + 1) * table[n, r]
        acc += -term if r % 2 else term
    # (-1)^(n+1)
    return 1 + (acc if n % 2 else -acc)


def central_matrix_reformulation_check(n: int, table: MemoTable | None = None) -> bool:
    """Verify ``(D(1..n)) = 1 - M v`` with ``M[k][j] = <k+1>_j D(k-j, k)``, ``v_j = (-1)^j/j!``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if table is None or table.max_p < n or table.max_q < n:
        table = MemoTable(n, n)
    v = [Fraction((-1) ** j, factorial(j)) for j in range(1, n + 1)]
    for k in range(1, n + 1):
        mv = sum(
            (falling_factorial(k + 1, j) * table[k - j, k] * v[j - 1] for j in range(1, k + 1)),
            Fraction(0),
        )
        if Fraction(table[k, k]) != 1 - mv:
            return False
    return True


def central_gf_series(n_max: int) -> list[int]:
    """First ``n_max + 1`` coefficients of ``1/sqrt(1 - 6x + x^2)``.

    Solves ``S^2 (1 - 6x + x^2) = 1`` degree by degree: with ``U = S^2`` the
    identity forces ``U_k = 6 U_{k-1} - U_{k-2}`` (``U_0 = 1``), and
    ``U_k = 2 S_k + sum_{0<i<k} S_i S_{k-i}`` then fixes ``S_k``.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    s = [1]
    u = [1]
    for k in range(1, n_max + 1):
        u.append(6 * u[k - 1] - (u[k - 2] if k >= 2 else 0))
        rest = u[k] - sum(s[i] * s[k - i] for i in range(1, k))
        sk, odd = divmod(rest, 2)
        if odd:
            raise InvariantViolation(f"series coefficient {k} is not an integer: {rest}/2")
        s.append(sk)
    return s


def _central_only(fn: Callable[[int], int]) -> Callable[[int, int], int]:
    def cell(p: int, q: int) -> int:
        _check(p, q)
        if p != q:
            raise NotApplicableError("method defines central numbers only (p = q)")
        return fn(p)

    cell.__name__ = fn.__name__
    cell.__wrapped__ = fn  # type: ignore[attr-defined]
    return cell


class DelannoyMethod(enum.Enum):
    """Registry of the independent exact strategies.

    Each member's value is ``(identifier, cost_class)``; :meth:`evaluate`
    dispatches to the implementing function.
    """

    RECURRENCE3 = ("recurrence3", "O(pq) additions, memo table")
    SUM_BINOM_2I = ("sum_binom_2i", "O(p) binomial products")
    SUM_BINOM_CONV = ("sum_binom_conv", "O(q) binomial products")
    LATTICE_BRUTE = ("lattice_brute", "exponential path walk, p+q capped")
    GF_BIVARIATE = ("gf_bivariate", "O(pq(p+q)) truncated polynomial products")
    QI_RECURSION = ("qi_recursion", "O(q^2) along one row")
    DET_QI = ("det_qi", "O(q^2) Hessenberg minor recursion")
    CENTRAL_AN_DET = ("central_an_det", "O(n^2) rational Hessenberg recursion, diagonal only")
    CENTRAL_QI_RELATION = ("central_qi_relation", "O(n^2) via memo row, diagonal only")

    @property
    def identifier(self) -> str:
        return self.value[0]

    @property
    def cost_class(self) -> str:
        return self.value[1]

    @property
    def function(self) -> Callable[[int, int], int]:
        return _IMPLEMENTATIONS[self]

    @property
    def central_only(self) -> bool:
        return self in (DelannoyMethod.CENTRAL_AN_DET, DelannoyMethod.CENTRAL_QI_RELATION)

    def evaluate(self, p: int, q: int) -> int:
        return self.function(p, q)

    @classmethod
    def from_identifier(cls, identifier: str) -> DelannoyMethod:
        for member in cls:
            if member.identifier == identifier:
                return member
        raise KeyError(identifier)

    @classmethod
    def identifiers(cls) -> list[str]:
        return [m.identifier for m in cls]


_IMPLEMENTATIONS: dict[DelannoyMethod, Callable[[int, int], int]] = {
    DelannoyMethod.RECURRENCE3: recurrence3,
    DelannoyMethod.SUM_BINOM_2I: sum_binom_2i,
    DelannoyMethod.SUM_BINOM_CONV: sum_binom_conv,
    DelannoyMethod.LATTICE_BRUTE: lattice_brute,
    DelannoyMethod.GF_BIVARIATE: gf_bivariate,
    DelannoyMethod.QI_RECURSION: qi_recursion,
    DelannoyMethod.DET_QI: delannoy_via_det,
    DelannoyMethod.CENTRAL_AN_DET: _central_only(central_via_det),
    DelannoyMethod.CENTRAL_QI_RELATION: _central_only(central_qi_relation),
}
