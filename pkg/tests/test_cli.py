import json
import math
import subprocess
import sys

import numpy as np
import pytest

from bidiagtrace.cli import main
from bidiagtrace.core import load_matrix


@pytest.fixture
def unit_file(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("2\n1 1\n1\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_text(capsys, unit_file):
    code, out, _ = run(capsys, "trace", "--input", unit_file, "--method", "new", "--max-order", "2")
    assert code == 0
    assert out.splitlines() == ["order, new", "1, 3", "2, 7"]


def test_trace_oracle_same_values(capsys, unit_file):
    code, out, _ = run(capsys, "trace", "--input", unit_file, "--method", "oracle", "--max-order", "2")
    assert code == 0
    assert out.splitlines()[1:] == ["1, 3", "2, 7"]


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n1 1\n1 1\n")
    code, _, err = run(capsys, "trace", "--input", str(p))
    assert code == 1
    assert "length rule" in err and "line 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "trace", "--input", str(tmp_path / "nope.txt"))
    assert code == 1 and "not found" in err


def test_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "trace", "--inline", "0.7,1.3,0.9;1.1,0.6", "--method", "new",
        "--method", "kyn11", "--max-order", "5", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert set(doc) >= {"config", "results", "warnings"}
    assert doc["config"]["methods"] == ["new", "kyn11"]
    from bidiagtrace import make_bidiagonal, trace_table

    b = make_bidiagonal([0.7, 1.3, 0.9], [1.1, 0.6])
    expect = {m: trace_table(b, 5, m).values for m in ("new", "kyn11")}
    for row in doc["results"]:
        assert row["value"] == expect[row["method"]][row["order"] - 1]


def test_csv_seventeen_digits(capsys):
    code, out, _ = run(capsys, "trace", "--inline", "0.7,1.3;1.1", "--format", "csv", "--max-order", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "method,order,value,warning"
    from bidiagtrace import make_bidiagonal, trace_new

    b = make_bidiagonal([0.7, 1.3], [1.1])
    for line in lines[1:]:
        _, order, value, _ = line.split(",")
        assert float(value) == trace_new(b, int(order))


def test_deterministic_reports(capsys, unit_file):
    argv = ["compare", "--inline", "0.7,1.3,0.9;1.1,0.6", "--max-order", "4", "--format", "json"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]


def test_compare_all_methods(capsys, unit_file):
    code, out, _ = run(capsys, "compare", "--input", unit_file, "--max-order", "3", "--format", "json")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["max_deviation"] <= 1e-10
    assert summary["path_sum_residual"] <= 1e-10
    for key in ("transform_h", "transform_htilde", "transform_H", "transform_Htilde"):
        assert summary[key] <= 1e-10


def test_compare_path_sums_n8(capsys):
    q = ",".join(str(x) for x in np.linspace(0.6, 1.9, 8))
    e = ",".join(str(x) for x in np.linspace(1.7, 0.55, 7))
    code, out, _ = run(capsys, "compare", "--inline", f"{q};{e}", "--max-order", "5", "--format", "json")
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["path_sum_max_order"] == 5
    assert summary["path_sum_residual"] <= 1e-10


def test_compare_single_method_is_usage_error(capsys, unit_file):
    with pytest.raises(SystemExit) as info:
        main(["compare", "--input", unit_file, "--method", "new"])
    assert info.value.code == 2


def test_unknown_method_is_usage_error(capsys, unit_file):
    with pytest.raises(SystemExit) as info:
        main(["trace", "--input", unit_file, "--method", "magic"])
    assert info.value.code == 2


def test_warnings_are_data(capsys):
    code, out, _ = run(capsys, "trace", "--inline", "1,1;1", "--method", "ykyy14",
                       "--max-order", "175", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["warnings"]
    last = [r for r in doc["results"] if r["order"] == 175][0]
    assert last["value"] is None and last["warning"] == "overflow"


def test_diag(capsys, unit_file):
    code, out, _ = run(capsys, "diag", "--input", unit_file, "--max-order", "2",
                       "--method", "kyn11", "--method", "ykn12", "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]
    for m in ("kyn11", "ykn12"):
        got = [(r["v"], r["w"]) for r in rows if r["method"] == m]
        assert got == [(5.0, 2.0), (2.0, 5.0)]


def test_bounds(capsys, unit_file):
    code, out, _ = run(capsys, "bounds", "--input", unit_file, "--max-order", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    sigma = doc["summary"]["sigma_min"]
    assert abs(sigma - math.sqrt((3 - math.sqrt(5)) / 2)) <= 1e-13
    for row in doc["results"]:
        assert 0 < row["theta"] < sigma


def test_oracle_path_sums(capsys, unit_file):
    code, out, _ = run(capsys, "oracle", "--input", unit_file, "--max-order", "3", "--path-sums", "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]
    traces = [r for r in rows if "trace_upper" in r]
    assert [round(r["trace_upper"], 12) for r in traces] == [3, 7, 18]
    paths = [r for r in rows if "path_sum_g" in r]
    assert {(r["order"], r["index"]): (r["path_sum_gtilde"], r["path_sum_g"]) for r in paths}[(2, 2)][0] == 1.0


def test_oracle_budget_warning(capsys):
    code, out, _ = run(capsys, "oracle", "--inline", "1,1,1,1;1,1,1", "--max-order", "4",
                       "--path-sums", "--budget", "5", "--format", "json")
    assert code == 0
    assert any("path sums stopped" in w for w in json.loads(out)["warnings"])


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert main(["gen", "--n", "5", "--dist", "uniform:0.5:2", "--seed", "7", "--output", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert load_matrix(a).n == 5


def test_gen_graded(tmp_path):
    p = tmp_path / "g.txt"
    assert main(["gen", "--dist", "graded:10", "--n", "6", "--output", str(p)]) == 0
    q = load_matrix(p).q
    assert q.max() / q.min() == pytest.approx(1e5)


def test_gen_many(tmp_path):
    out = tmp_path / "suite"
    assert main(["gen", "--n", "3", "--count", "4", "--seed", "1", "--output", str(out)]) == 0
    assert len(list(out.glob("matrix_*.txt"))) == 4


@pytest.mark.parametrize("dist", ["uniform:-1:1", "loguniform:0:1", "graded:0", "cauchy:1:2"])
def test_gen_bad_distribution(dist):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--dist", dist])
    assert info.value.code == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "30", "--orders", "4", "--repeat", "1",
                       "--kernels", "both", "--reach-cap", "400", "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]
    timings = [r for r in rows if r["kind"] == "seconds"]
    assert {r["method"] for r in timings} == {"ykn12", "ykyy14", "new"}
    reach = {r["method"]: r["value"] for r in rows if r["kind"] == "reach"}
    assert reach["new"] >= reach["ykyy14"]
    assert reach["ykyy14"] <= 171


def test_bench_empty_sizes():
    with pytest.raises(SystemExit) as info:
        main(["bench", "--n", ""])
    assert info.value.code == 2


def test_module_entry_point(unit_file):
    proc = subprocess.run(
        [sys.executable, "-m", "bidiagtrace", "trace", "--input", unit_file, "--max-order", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "1, 3"
