import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delannoy.errors import DomainError
from delannoy.verify import (
    ALL_METHODS,
    EXACT_METHODS,
    INTEGRAL,
    PROPERTY_NAMES,
    TABLE1,
    CellRecord,
    VerificationReport,
    bench_methods,
    verify_grid,
)


def test_table1_constants_shape():
    assert len(TABLE1) == 9 and all(len(r) == 9 for r in TABLE1)
    assert all(TABLE1[p][q] == TABLE1[q][p] for p in range(9) for q in range(9))
    assert [TABLE1[n][n] for n in range(9)] == [1, 3, 13, 63, 321, 1683, 8989, 48639, 265729]


def test_full_table_corner():
    r = verify_grid(8, 8, EXACT_METHODS)
    assert r.verdict
    assert len(r.cells) == 81
    assert set(r.properties) == set(PROPERTY_NAMES)
    assert all(r.properties.values())
    assert r.cell(3, 5).values["det_qi"] == 231
    assert "central_an_det" in r.cell(3, 5).skipped
    assert r.cell(4, 4).values["central_an_det"] == 321


def test_single_cell():
    r = verify_grid(0, 0, ["recurrence3"])
    assert r.verdict
    assert [(c.p, c.q, c.values) for c in r.cells] == [(0, 0, {"recurrence3": 1})]


def test_three_way_twelve():
    r = verify_grid(12, 12, ["recurrence3", "qi_recursion", "det_qi"])
    assert r.verdict and len(r.cells) == 169


def test_lattice_cap_is_skip_not_failure():
    # thin grid: p + q crosses the cap of 22 only in the last column block
    r = verify_grid(20, 3, ["lattice_brute"])
    assert r.verdict
    assert "lattice_brute" in r.cell(20, 3).skipped
    # 1 + 19*3*2 + 171*3*4 + 969*1*8
    assert r.cell(19, 3).values["lattice_brute"] == 9919


def test_integral_only_on_diagonal():
    r = verify_grid(8, 8, [INTEGRAL], tolerance=1e-9)
    assert r.verdict
    assert INTEGRAL in r.cell(2, 3).skipped
    assert abs(r.cell(8, 8).estimates[INTEGRAL] - 265729) < 1e-3


def test_integral_tolerance_too_tight_fails():
    r = verify_grid(6, 6, [INTEGRAL, "recurrence3"], tolerance=0.0)
    exact_hits = [c for c in r.cells if c.estimates and c.estimates[INTEGRAL] == c.values["recurrence3"]]
    # cells that happen to round exactly still agree; the others must be flagged
    assert all(c.agreement for c in exact_hits)
    assert r.verdict == (len(exact_hits) == 7)


def test_single_method_agreement_is_vacuous_but_table_still_checked():
    r = verify_grid(8, 8, ["gf_bivariate"])
    assert all(c.agreement for c in r.cells)
    r.cells[10].values["gf_bivariate"] += 1
    from delannoy.verify import _grid_properties

    assert _grid_properties(r)["table1_match"] is False


def test_disagreement_marks_verdict_false():
    r = verify_grid(3, 3, ["recurrence3", "qi_recursion"])
    assert r.verdict
    r.cells[5].agreement = False
    assert not r.verdict


def test_disagreement_is_detected(monkeypatch):
    from delannoy import methods

    orig = methods._IMPLEMENTATIONS[methods.DelannoyMethod.SUM_BINOM_CONV]
    monkeypatch.setitem(
        methods._IMPLEMENTATIONS,
        methods.DelannoyMethod.SUM_BINOM_CONV,
        lambda p, q: orig(p, q) + (p == 2 and q == 1),
    )
    r = verify_grid(3, 3, ["recurrence3", "sum_binom_conv"])
    assert not r.verdict
    assert [(c.p, c.q) for c in r.cells if not c.agreement] == [(2, 1)]


def test_errors():
    with pytest.raises(DomainError):
        verify_grid(-1, 2)
    with pytest.raises(DomainError):
        verify_grid(1, 1, [])
    with pytest.raises(KeyError):
        verify_grid(1, 1, ["nope"])


def test_json_shape_uses_decimal_strings():
    r = verify_grid(40, 40, ["recurrence3", "sum_binom_2i"], property_bound=4)
    doc = json.loads(r.to_json())
    big = doc["cells"][-1]["values"]["recurrence3"]
    assert isinstance(big, str) and int(big) > 2**64
    assert "timings_ns" in doc
    assert "timings_ns" not in json.loads(r.to_json(include_timings=False))


def test_round_trip():
    r = verify_grid(6, 6, ALL_METHODS)
    assert VerificationReport.from_json(r.to_json()) == r


def test_emission_is_deterministic_without_timings():
    a = verify_grid(5, 5, ALL_METHODS).to_json(include_timings=False)
    b = verify_grid(5, 5, ALL_METHODS).to_json(include_timings=False)
    assert a == b


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.builds(
            CellRecord,
            p=st.integers(0, 50),
            q=st.integers(0, 50),
            values=st.dictionaries(st.sampled_from(EXACT_METHODS), st.integers(0, 10**40)),
            estimates=st.dictionaries(st.just(INTEGRAL), st.floats(allow_nan=False)),
            skipped=st.dictionaries(st.sampled_from(ALL_METHODS), st.text()),
            errors=st.dictionaries(st.sampled_from(ALL_METHODS), st.text()),
            agreement=st.booleans(),
        ),
        max_size=5,
    ),
    st.dictionaries(st.sampled_from(PROPERTY_NAMES), st.booleans()),
    st.dictionaries(st.sampled_from(ALL_METHODS), st.integers(0, 10**12)),
)
def test_round_trip_property(cells, properties, timings):
    r = VerificationReport(3, 4, ["recurrence3"], 1e-9, 16, cells, properties, timings)
    assert VerificationReport.from_json(r.to_json()) == r


def test_bench_caps_and_cross_check():
    records = bench_methods([(50, 50), (100, 20)], repetitions=1,
                            methods=["recurrence3", "lattice_brute", "det_qi"])
    by = {(r.method, r.p, r.q): r for r in records}
    assert not by["recurrence3", 50, 50].skipped
    assert by["lattice_brute", 50, 50].skipped
    assert "cap" in by["lattice_brute", 50, 50].skip_reason
    det = by["det_qi", 100, 20]
    assert det.agrees and det.value == by["recurrence3", 100, 20].value
    for r in records:
        if not r.skipped:
            assert r.wall_time_ns > 0
            assert r.bit_length == r.value.bit_length()


def test_bench_reports_bit_length_of_large_value():
    from delannoy.methods import recurrence3

    (rec,) = bench_methods([(100, 100)], repetitions=1, methods=["sum_binom_2i"])
    assert rec.bit_length == recurrence3(100, 100).bit_length()


def test_bench_central_methods_skip_off_diagonal():
    records = bench_methods([(4, 3)], repetitions=2, methods=["central_an_det", "sum_binom_conv"])
    by = {r.method: r for r in records}
    assert by["central_an_det"].skipped and not by["sum_binom_conv"].skipped


def test_bench_rejects_zero_repetitions():
    with pytest.raises(DomainError):
        bench_methods([(1, 1)], repetitions=0)
