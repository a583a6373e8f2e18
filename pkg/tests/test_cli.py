import csv
import io
import json
import subprocess
import sys

import pytest

from delannoy.cli import main, parse_sizes
from delannoy.verify import TABLE1, VerificationReport


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [(["5", "5"], "1683"), (["0", "0"], "1"), (["8", "3", "--method", "det_qi"], "833")],
)
def test_compute(capsys, argv, expected):
    code, out, _ = run(capsys, "compute", *argv)
    assert code == 0 and out.strip() == expected


def test_compute_prints_full_decimal(capsys):
    code, out, _ = run(capsys, "compute", "60", "60", "--method", "sum_binom_2i")
    from delannoy.methods import recurrence3

    assert code == 0 and int(out) == recurrence3(60, 60)


def test_compute_usage_errors(capsys):
    assert run(capsys, "compute", "-1", "2")[0] == 2
    assert run(capsys, "compute", "x", "2")[0] == 2
    assert run(capsys, "compute", "1", "2", "--method", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_compute_cap_refusal(capsys):
    code, _, err = run(capsys, "compute", "20", "20", "--method", "lattice_brute")
    assert code == 3 and "cap" in err
    assert run(capsys, "compute", "2", "3", "--method", "central_an_det")[0] == 3


def test_table_reproduces_table1(capsys):
    code, out, _ = run(capsys, "table", "8", "8")
    assert code == 0
    assert [[int(x) for x in line.split()] for line in out.splitlines()] == [list(r) for r in TABLE1]


def test_table_single_cell(capsys):
    assert run(capsys, "table", "0", "0")[1] == "1\n"


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "3", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and all(len(r) == 6 for r in rows)
    assert rows[-1][-1] == "231"


def test_table_json_strings_and_highlight(capsys):
    _, out, _ = run(capsys, "table", "40", "40", "--format", "json", "--highlight-diagonal")
    doc = json.loads(out)
    assert all(isinstance(v, str) for row in doc["values"] for v in row)
    assert int(doc["diagonal"][40]) > 2**64
    _, out, _ = run(capsys, "table", "2", "2", "--highlight-diagonal")
    assert out.splitlines()[2].split() == ["1", "5", "*13*"]


def test_verify_all(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "8", "8", "--all", "--report", str(path))
    assert code == 0 and out.startswith("PASS")
    report = VerificationReport.from_json(path.read_text())
    assert report.verdict and len(report.cells) == 81 and report.timings == {}


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "10", "10", "--methods", "recurrence3,qi_recursion")
    assert code == 0 and json.loads(out)["verdict"] is True


def test_verify_integral(capsys):
    code, out, _ = run(capsys, "verify", "8", "8", "--methods", "integral", "--tolerance", "1e-9")
    assert code == 0
    doc = json.loads(out)
    assert "integral" in doc["cells"][1]["skipped"]


def test_verify_disagreement_exit_code(capsys):
    code, _, _ = run(capsys, "verify", "4", "4", "--methods", "integral,recurrence3", "--tolerance", "-1")
    assert code == 1


def test_verify_unknown_method(capsys):
    assert run(capsys, "verify", "8", "8", "--methods", "bogus")[0] == 2


def test_verify_is_byte_identical(capsys):
    a = run(capsys, "verify", "6", "6", "--all")[1]
    b = run(capsys, "verify", "6", "6", "--all")[1]
    assert a == b
    assert "timings_ns" in json.loads(run(capsys, "verify", "2", "2", "--timings")[1])


def test_bench_all_small(capsys):
    code, out, _ = run(capsys, "bench", "8x8", "--methods", "all", "--format", "json", "--repetitions", "1")
    records = json.loads(out)
    assert code == 0 and len(records) == 9
    assert all(r["agrees"] and r["skip_reason"] is None for r in records)
    assert all(isinstance(r["value"], str) for r in records)


def test_bench_lattice_skipped(capsys):
    code, out, _ = run(capsys, "bench", "64x64", "--methods", "lattice_brute,recurrence3",
                       "--format", "csv", "--repetitions", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["method"] == "recurrence3" and rows[0]["agrees"] == "true"
    assert rows[1]["method"] == "lattice_brute" and "cap" in rows[1]["skip_reason"]


def test_bench_det_qi_vs_recurrence(capsys):
    code, out, _ = run(capsys, "bench", "128x16", "--methods", "det_qi,recurrence3",
                       "--format", "json", "--repetitions", "1")
    records = json.loads(out)
    assert code == 0 and {r["value"] for r in records} == {records[0]["value"]}


def test_bench_table_format(capsys):
    code, out, _ = run(capsys, "bench", "5", "--repetitions", "1")
    assert code == 0 and "lattice_brute" in out and "5x5" in out


@pytest.mark.parametrize("spec", ["8y8", "", "8x", "axb", "1x2x3"])
def test_bench_malformed_sizes(capsys, spec):
    assert run(capsys, "bench", spec)[0] == 2


def test_bench_zero_repetitions(capsys):
    assert run(capsys, "bench", "4x4", "--repetitions", "0")[0] == 2


def test_parse_sizes():
    assert parse_sizes("8x8,32x16, 5") == [(8, 8), (32, 16), (5, 5)]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "delannoy", "compute", "4", "7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "2241"
