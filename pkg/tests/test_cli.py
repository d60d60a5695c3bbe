import csv
import io
import json

import pytest

from gadgetlab.cli import bench_rows, main
from gadgetlab.formats import cnf_to_dimacs, load_instance, to_json
from gadgetlab.instances import BitMatrix, CnfFormula, OuMvInstance, gen_oumv, validate_tcstar
from gadgetlab.reduction_matching import closed_form_insertions


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_gen_tcstar_valid(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, _ = _run(capsys, "gen", "tcstar", "--n", 6, "--delta", 2, "--p", 2, "--seed", 1, "--out", out)
    assert code == 0
    assert validate_tcstar(load_instance(out)).ok


def test_gen_oumv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert _run(capsys, "gen", "oumv", "--n", 8, "--density", 0.3, "--seed", 2, "--out", path)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_cnf_odd_vars(capsys):
    code, out = _run(capsys, "gen", "cnf", "--vars", 3)
    assert code == 2 and "even" in out.err


def test_bad_arguments_exit_2(capsys):
    assert _run(capsys, "solve", "matching")[0] == 2
    assert _run(capsys, "bench", "matching", "--sizes", "8,4")[0] == 2


def test_solve_matching_zero(tmp_path, capsys):
    inst = OuMvInstance(BitMatrix.from_rows([[0, 0], [0, 0]]), (((1, 1), (1, 1)), ((1, 0), (1, 1))))
    path = tmp_path / "z.json"
    path.write_text(json.dumps(to_json(inst)))
    report_path = tmp_path / "r.json"
    code, out = _run(capsys, "solve", "matching", "--instance", path, "--decremental",
                     "--report", report_path)
    report = json.loads(report_path.read_text())
    assert code == 0 and report["agreement"]
    assert report["answers"]["reduction"] == [0, 0]
    assert report["answers"]["decremental"] == [0, 0]
    assert json.loads(out.out) == report


def test_solve_flow_contradiction(tmp_path, capsys):
    path = tmp_path / "c.cnf"
    path.write_text(cnf_to_dimacs(CnfFormula.from_ints(2, [[1], [-1]])))
    code, out = _run(capsys, "solve", "flow", "--cnf", path, "--decremental")
    report = json.loads(out.out)
    assert code == 0 and report["agreement"] and report["answers"]["reduction"] is False


def test_solve_diameter_node_add_planted(tmp_path, capsys):
    path = tmp_path / "p.json"
    assert _run(capsys, "gen", "tcstar", "--n", 4, "--seed", 3, "--plant", "1,2,0", "--out", path)[0] == 0
    code, out = _run(capsys, "solve", "diameter", "--instance", path, "--mode", "node-add",
                     "--subdivide", 1)
    report = json.loads(out.out)
    assert code == 0 and report["agreement"] and report["answers"]["reduction"] is True
    assert "credit_ledger" in report
    assert report["instance"]["document"]["problem"] == "tcstar"


@pytest.mark.parametrize("mode", ["static", "incremental"])
def test_solve_diameter_modes(tmp_path, capsys, mode):
    path = tmp_path / "t.json"
    _run(capsys, "gen", "tcstar", "--n", 5, "--seed", 8, "--density", 0.8, "--out", path)
    code, out = _run(capsys, "solve", "diameter", "--instance", path, "--mode", mode, "--gamma", 0.5)
    assert code == 0 and json.loads(out.out)["agreement"]


def test_solve_parse_and_guard_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert _run(capsys, "solve", "matching", "--instance", bad)[0] == 2
    assert _run(capsys, "solve", "matching", "--instance", tmp_path / "missing.json")[0] == 2
    big = tmp_path / "big.cnf"
    big.write_text(cnf_to_dimacs(CnfFormula(22)))
    assert _run(capsys, "solve", "flow", "--cnf", big)[0] == 3


def test_reports_reproducible(tmp_path, capsys):
    path = tmp_path / "o.json"
    path.write_text(json.dumps(to_json(gen_oumv(5, 0.4, 9))))
    reports = []
    for _ in range(2):
        _, out = _run(capsys, "solve", "matching", "--instance", path)
        rep = json.loads(out.out)
        rep.pop("wall_time")
        reports.append(rep)
    assert reports[0] == reports[1]


@pytest.mark.parametrize("problem,rng", [("matching", "2..8"), ("flow", "4..8"), ("diameter", "2..5")])
def test_verify_small(capsys, problem, rng):
    flag = "--vars" if problem == "flow" else "--n"
    code, out = _run(capsys, "verify", problem, "--count", 8, flag, rng, "--seed", 4)
    summary = json.loads(out.out)
    assert code == 0 and summary["failures"] == []


def test_bench_matching_csv(capsys):
    code, out = _run(capsys, "bench", "matching", "--sizes", "4,8,16")
    assert code == 0
    lines = out.out.splitlines()
    rows = list(csv.DictReader(io.StringIO("\n".join(l for l in lines if not l.startswith("#")))))
    for row in rows:
        n = int(row["size"])
        assert int(row["insertions"]) == closed_form_insertions(gen_oumv(n, 0.5, 0))
    assert any(l.startswith("# fit insertions") for l in lines)


def test_bench_flow_and_diameter_rows():
    for row in bench_rows("flow", [4, 6, 8], 0):
        assert row["queries"] == 2 ** (row["size"] // 2)
    for row in bench_rows("diameter", [2, 4], 0):
        assert row["insertions"] == row["expected_insertions"]


def test_bench_json(capsys):
    code, out = _run(capsys, "bench", "diameter", "--sizes", "2,4", "--format", "json")
    doc = json.loads(out.out)
    assert code == 0 and len(doc["rows"]) == 2 and "insertions" in doc["fits"]
