import json
import subprocess
import sys

import pytest

from kulikov import commands
from kulikov.cli import main
from kulikov.report import Check, compare, data_path, lookup


def run_json(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_invariants_default(capsys):
    code, rep = run_json(capsys, "invariants")
    assert code == 0
    assert rep["results"]["invariants"] == {"K2": 6, "chi": 1, "pg": 0, "q": 0}
    assert rep["inputs"]["config"] == "kulikov.json"
    assert len(rep["inputs"]["sha256"]) == 64
    assert all(f["passed"] for f in rep["fixtures"])


def test_invariants_maximal(capsys):
    code, rep = run_json(capsys, "invariants", "--config", str(data_path("maximal_cover.json")))
    assert code == 0
    assert rep["results"]["invariants"] == {"K2": 162, "chi": 27, "pg": 29, "q": 3}


def test_invariants_quadrangle_reports_singularity(capsys):
    code, rep = run_json(capsys, "invariants", "--config", "kulikov_quadrangle.json")
    assert code == 0
    assert rep["results"]["singular"] == ["P0"]
    assert rep["results"]["invariants"] is None


def test_tables_tangent(capsys):
    code, rep = run_json(capsys, "tables", "tangent")
    assert code == 0
    res = rep["results"]
    assert res["rows"]["(0,1)"]["A_pretty"] == "-2H + E1 + E2 + E3"
    assert res["euler_total"] == 2
    assert res["h1_TX"] == 1
    assert len(rep["fixtures"]) == 20


def test_tables_bicanonical(capsys):
    code, rep = run_json(capsys, "tables", "bicanonical")
    assert code == 0
    assert rep["results"]["rows"]["(2,0)"]["A_pretty"] == "H - E1 - E2"


def test_homology_targets(capsys):
    code, rep = run_json(capsys, "homology")
    assert code == 0 and rep["results"]["abelianization"]["torsion"] == [3, 3, 3]
    code, rep = run_json(capsys, "homology", "sigma3")
    assert code == 0 and rep["results"]["abelianization"] == {"free_rank": 2, "torsion": [3, 3]}


def test_bloch_custom_empty(capsys):
    code, rep = run_json(capsys, "bloch", "custom")
    assert code == 0
    assert rep["results"]["member"] is False
    assert rep["fixtures"][0]["name"] == "empty custom list"


def test_bloch_custom_parse_error(capsys):
    assert main(["bloch", "custom", "--triples", "w1,w9,w3"]) == 2
    assert "error" in capsys.readouterr().err


def test_free_action_reports_failure(capsys):
    code, rep = run_json(capsys, "free-action")
    res = rep["results"]
    assert res["origin_stabilizer_order"] == 3
    assert res["relations"]["all_hold"]
    # eight classes rotate all three factors and so have fixed points
    assert len(res["exceptional"]) == 8
    assert code == 1
    assert [f["passed"] for f in rep["fixtures"]] == [False, True, True]


def test_fail_fast_stops_at_first_failure(capsys):
    code, rep = run_json(capsys, "free-action", "--fail-fast")
    assert code == 1
    assert len(rep["fixtures"]) == 1


def test_relation_command(capsys):
    code, rep = run_json(capsys, "relation", "g1^3", "t3^2 tp3")
    assert code == 0 and rep["results"]["holds"]
    code, rep = run_json(capsys, "relation", "g1 g2", "g2 g1")
    assert not rep["results"]["holds"]


def test_text_output(capsys):
    assert main(["invariants", "--text"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] invariant K2" in out
    assert "fixtures: 5/5 passed" in out


def test_custom_fixture_mismatch_gives_exit_1(tmp_path, capsys):
    fx = tmp_path / "wrong.json"
    fx.write_text(json.dumps({"checks": [{"name": "K2", "path": ["invariants", "K2"], "expected": 7}]}))
    code, rep = run_json(capsys, "invariants", "--fixtures", str(fx))
    assert code == 1
    assert rep["fixtures"][-1] == {"name": "K2", "passed": False, "expected": 7, "actual": 6}


def test_missing_config_gives_exit_2(capsys):
    assert main(["invariants", "--config", "/nonexistent/cover.json"]) == 2


def test_results_are_deterministic():
    for make in (
        lambda: commands.cmd_invariants(),
        lambda: commands.cmd_tables("tangent"),
        lambda: commands.cmd_tables("bicanonical"),
        lambda: commands.cmd_homology("sigma1"),
        lambda: commands.cmd_free_action(),
        lambda: commands.cmd_bloch("custom", "w1,w2,w3"),
    ):
        a, b = make(), make()
        assert a.results_json() == b.results_json()
        assert a.inputs == b.inputs


def test_compare_when_and_missing():
    checks = [
        Check("a", ("x",), 1),
        Check("b", ("y", "z"), 2, when={"mode": "full"}),
        Check("c", ("q",), 3),
    ]
    got = compare({"x": 1, "y": {"z": 2}}, checks, {"mode": "other"})
    assert [(f.name, f.passed) for f in got] == [("a", True), ("c", False)]
    assert lookup({"a": [5, 6]}, ["a", 1]) == 6


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kulikov", "homology", "--text"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert "Z/3 + Z/3 + Z/3" in proc.stdout


def test_unknown_table_rejected():
    with pytest.raises(ValueError):
        commands.cmd_tables("nonsense")
