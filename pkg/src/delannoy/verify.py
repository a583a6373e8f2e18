"""Cross-method verification and benchmarking.

Disagreement is reported, never raised: the :class:`VerificationReport` is
the product, and its ``verdict`` is the single pass/fail bit.
"""

from __future__ import annotations

import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .detexpr import qi_determinant, symmetry_scale_identity
from .errors import DomainError, InvariantViolation, MethodRefusal
from .exactnum import factorial
from .integral import central_via_integral
from .methods import (
    DelannoyMethod,
    MemoTable,
    central_gf_series,
    central_matrix_reformulation_check,
    central_qi_relation,
    recurrence3,
)

INTEGRAL = "integral"
INTEGRAL_NODES = 512
# D(n) beyond this no longer fits a float64 comparison meaningfully
INTEGRAL_MAX_N = 30
DEFAULT_TOLERANCE = 1e-9
PROPERTY_BOUND = 16
REPORT_FORMAT = "delannoy-verification/1"

# Published 9x9 corner of the Delannoy array, D(p, q) for 0 <= p, q <= 8.
# Ground truth for the harness; never regenerate these from code under test.
TABLE1: tuple[tuple[int, ...], ...] = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, 3, 5, 7, 9, 11, 13, 15, 17),
    (1, 5, 13, 25, 41, 61, 85, 113, 145),
    (1, 7, 25, 63, 129, 231, 377, 575, 833),
    (1, 9, 41, 129, 321, 681, 1289, 2241, 3649),
    (1, 11, 61, 231, 681, 1683, 3653, 7183, 13073),
    (1, 13, 85, 377, 1289, 3653, 8989, 19825, 40081),
    (1, 15, 113, 575, 2241, 7183, 19825, 48639, 108545),
    (1, 17, 145, 833, 3649, 13073, 40081, 108545, 265729),
)

PROPERTY_NAMES = (
    "table1_match",
    "symmetry",
    "divisibility_q_factorial",
    "symmetry_scale_identity",
    "matrix_reformulation",
    "central_diagonal_consistency",
)

EXACT_METHODS: tuple[str, ...] = tuple(DelannoyMethod.identifiers())
ALL_METHODS: tuple[str, ...] = EXACT_METHODS + (INTEGRAL,)

__all__ = [
    "ALL_METHODS",
    "BenchRecord",
    "CellRecord",
    "EXACT_METHODS",
    "INTEGRAL",
    "TABLE1",
    "VerificationReport",
    "bench_methods",
    "executed_functions",
    "independence_audit",
    "normalize_methods",
    "verify_grid",
]


@dataclass
class CellRecord:
    p: int
    q: int
    values: dict[str, int] = field(default_factory=dict)
    estimates: dict[str, float] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    agreement: bool = True

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "values": {k: str(v) for k, v in self.values.items()},
            "estimates": {k: repr(v) for k, v in self.estimates.items()},
            "skipped": dict(self.skipped),
            "errors": dict(self.errors),
            "agreement": self.agreement,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CellRecord:
        return cls(
            p=d["p"],
            q=d["q"],
            values={k: int(v) for k, v in d["values"].items()},
            estimates={k: float(v) for k, v in d["estimates"].items()},
            skipped=dict(d["skipped"]),
            errors=dict(d["errors"]),
            agreement=d["agreement"],
        )


@dataclass
class VerificationReport:
    p_max: int
    q_max: int
    methods: list[str]
    tolerance: float
    property_bound: int
    cells: list[CellRecord] = field(default_factory=list)
    properties: dict[str, bool] = field(default_factory=dict)
    timings: dict[str, int] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(c.agreement for c in self.cells) and all(self.properties.values())

    def cell(self, p: int, q: int) -> CellRecord:
        for c in self.cells:
            if c.p == p and c.q == q:
                return c
        raise KeyError((p, q))

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "format": REPORT_FORMAT,
            "p_max": self.p_max,
            "q_max": self.q_max,
            "methods": list(self.methods),
            "tolerance": repr(self.tolerance),
            "property_bound": self.property_bound,
            "verdict": self.verdict,
            "properties": {k: self.properties[k] for k in sorted(self.properties)},
            "cells": [c.to_dict() for c in self.cells],
        }
        if include_timings:
            out["timings_ns"] = {k: self.timings[k] for k in sorted(self.timings)}
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        if d.get("format") != REPORT_FORMAT:
            raise ValueError(f"unrecognized report format {d.get('format')!r}")
        return cls(
            p_max=d["p_max"],
            q_max=d["q_max"],
            methods=list(d["methods"]),
            tolerance=float(d["tolerance"]),
            property_bound=d["property_bound"],
            cells=[CellRecord.from_dict(c) for c in d["cells"]],
            properties=dict(d["properties"]),
            timings={k: int(v) for k, v in d.get("timings_ns", {}).items()},
        )

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))


def normalize_methods(methods: Iterable[str | DelannoyMethod]) -> list[str]:
    """Identifiers in canonical registry order; raises ``KeyError`` on unknown names."""
    wanted = set()
    for m in methods:
        ident = m.identifier if isinstance(m, DelannoyMethod) else m
        if ident not in ALL_METHODS:
            raise KeyError(ident)
        wanted.add(ident)
    return [m for m in ALL_METHODS if m in wanted]


def _evaluate_cell(
    p: int,
    q: int,
    methods: Sequence[str],
    tolerance: float,
    timings: dict[str, int],
) -> CellRecord:
    cell = CellRecord(p, q)
    for ident in methods:
        start = time.perf_counter_ns()
        try:
            if ident == INTEGRAL:
                if p != q:
                    raise MethodRefusal("integral defines central numbers only (p = q)")
                if p > INTEGRAL_MAX_N:
                    raise MethodRefusal(f"float64 comparison unreliable for n > {INTEGRAL_MAX_N}")
                cell.estimates[ident] = central_via_integral(p, INTEGRAL_NODES).value
            else:
                cell.values[ident] = DelannoyMethod.from_identifier(ident).evaluate(p, q)
        except MethodRefusal as exc:
            cell.skipped[ident] = str(exc)
        except InvariantViolation as exc:
            cell.errors[ident] = str(exc)
        timings[ident] = timings.get(ident, 0) + time.perf_counter_ns() - start

    agree = not cell.errors and len(set(cell.values.values())) <= 1
    if cell.estimates:
        if cell.values:
            reference = next(iter(cell.values.values()))
        else:
            reference = recurrence3(p, q)
        for est in cell.estimates.values():
            if not abs(est - reference) <= tolerance * reference:
                agree = False
    cell.agreement = agree
    return cell


def _grid_properties(report: VerificationReport) -> dict[str, bool]:
    cells = {(c.p, c.q): c for c in report.cells}

    table1 = all(
        v == TABLE1[c.p][c.q]
        for c in report.cells
        if c.p < len(TABLE1) and c.q < len(TABLE1)
        for v in c.values.values()
    )

    symmetry = True
    for (p, q), c in cells.items():
        mirror = cells.get((q, p))
        if mirror is None:
            continue
        for ident, v in c.values.items():
            if ident in mirror.values and mirror.values[ident] != v:
                symmetry = False

    pb = min(report.p_max, report.property_bound)
    qb = min(report.q_max, report.property_bound)
    nb = min(pb, qb)
    divisible = all(
        qi_determinant(p, q) % factorial(q) == 0 for p in range(pb + 1) for q in range(qb + 1)
    )
    scale = all(symmetry_scale_identity(p, q) for p in range(pb + 1) for q in range(qb + 1))

    table = MemoTable(nb, nb)
    reformulation = nb < 1 or central_matrix_reformulation_check(nb, table)
    series = central_gf_series(nb)
    diagonal = all(central_qi_relation(n, table) == table[n, n] == series[n] for n in range(nb + 1))

    return {
        "table1_match": table1,
        "symmetry": symmetry,
        "divisibility_q_factorial": divisible,
        "symmetry_scale_identity": scale,
        "matrix_reformulation": reformulation,
        "central_diagonal_consistency": diagonal,
    }


def verify_grid(
    p_max: int,
    q_max: int,
    methods: Iterable[str | DelannoyMethod] = EXACT_METHODS,
    tolerance: float = DEFAULT_TOLERANCE,
    property_bound: int = PROPERTY_BOUND,
) -> VerificationReport:
    """Evaluate each method on every cell of ``[0, p_max] x [0, q_max]`` and compare.

    Capped or inapplicable methods are recorded as skips. The integral
    estimate counts as agreeing when within ``tolerance`` relative error of
    the exact value. Grid-wide properties are checked on the cells with
    both coordinates ``<= property_bound``.
    """
    if p_max < 0 or q_max < 0:
        raise DomainError(f"grid bounds must be >= 0, got ({p_max},{q_max})")
    selected = normalize_methods(methods)
    if not selected:
        raise DomainError("at least one method must be selected")
    report = VerificationReport(p_max, q_max, selected, tolerance, property_bound)
    timings = {m: 0 for m in selected}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            report.cells.append(_evaluate_cell(p, q, selected, tolerance, timings))
    report.timings = timings
    report.properties = _grid_properties(report)
    return report


def executed_functions(fn: Callable, *args) -> set:
    """Code objects of every Python function entered while running ``fn(*args)``."""
    seen = set()

    def profiler(frame, event, arg):
        if event == "call":
            seen.add(frame.f_code)

    previous = sys.getprofile()
    sys.setprofile(profiler)
    try:
        fn(*args)
    finally:
        sys.setprofile(previous)
    return seen


def independence_audit(
    method: str | DelannoyMethod,
    p: int,
    q: int,
    forbidden: Sequence[Callable] = (recurrence3, MemoTable.__init__),
) -> bool:
    """True when ``method`` reaches ``D(p,q)`` without entering any ``forbidden`` function."""
    if not isinstance(method, DelannoyMethod):
        method = DelannoyMethod.from_identifier(method)
    codes = executed_functions(method.evaluate, p, q)
    return not any(f.__code__ in codes for f in forbidden)


@dataclass(frozen=True)
class BenchRecord:
    method: str
    p: int
    q: int
    wall_time_ns: int | None = None
    bit_length: int | None = None
    value: int | None = None
    agrees: bool | None = None
    skip_reason: str | None = None

    @property
    def skipped(self) -> bool:
        return self.skip_reason is not None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["value"] = None if self.value is None else str(self.value)
        return d


def bench_methods(
    sizes: Iterable[tuple[int, int]],
    repetitions: int = 5,
    methods: Iterable[str | DelannoyMethod] = EXACT_METHODS,
) -> list[BenchRecord]:
    """Median wall time of each exact method at each ``(p, q)``.

    Every result is compared with ``recurrence3`` at the same size.
    """
    if repetitions < 1:
        raise DomainError("repetitions must be >= 1")
    selected = [m for m in normalize_methods(methods) if m != INTEGRAL]
    records = []
    for p, q in sizes:
        reference = recurrence3(p, q)
        for ident in selected:
            method = DelannoyMethod.from_identifier(ident)
            times = []
            value = None
            try:
                for _ in range(repetitions):
                    start = time.perf_counter_ns()
                    value = method.evaluate(p, q)
                    times.append(max(1, time.perf_counter_ns() - start))
            except MethodRefusal as exc:
                records.append(BenchRecord(ident, p, q, skip_reason=str(exc)))
                continue
            records.append(
                BenchRecord(
                    ident,
                    p,
                    q,
                    wall_time_ns=statistics.median_low(times),
                    bit_length=value.bit_length(),
                    value=value,
                    agrees=value == reference,
                )
            )
    return records
