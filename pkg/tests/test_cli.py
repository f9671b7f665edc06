import json
from pathlib import Path

import pytest

from twisted_zhu.cli import dumps, main, run_scenario, strip_timing
from twisted_zhu.scenario import ScenarioError, parse_scenario, parse_text

ROOT = Path(__file__).resolve().parents[1]

MINIMAL = """
T = 2
backend = heisenberg
g1 = id
g2 = theta
M1 = vacuum
M2 = theta-twisted
M3 = theta-twisted
weight_cap = 6
tasks = fusion-bound
"""


def test_parse_minimal():
    sc = parse_text(MINIMAL)
    assert sc.g3 == "theta" and sc.weight_cap == 6 and sc.tasks == ["fusion-bound"]
    assert sc.seed == 0


def test_comments_and_task_order():
    sc = parse_text(MINIMAL.replace("tasks = fusion-bound", "tasks = fusion-bound, build-zhu  # two"))
    assert sc.tasks == ["build-zhu", "fusion-bound"]


@pytest.mark.parametrize("edit,msg", [
    (("g1 = id", "g1 = theta"), "twisted"),
    (("M1 = vacuum", "M1 = theta-twisted"), "twisted"),
    (("backend = heisenberg", "backend = lattice"), "backend"),
    (("T = 2", "T = 3"), "T"),
    (("weight_cap = 6", "weight_cap = six"), "integer"),
    (("tasks = fusion-bound", "tasks = dance"), "task"),
    (("T = 2", "T = 2\nfoo = 1"), "unknown key"),
    (("T = 2", "T 2"), "key = value"),
])
def test_parse_errors(edit, msg):
    with pytest.raises(ScenarioError, match=msg):
        parse_text(MINIMAL.replace(*edit))


def test_verify_without_modules_is_an_error():
    with pytest.raises(ScenarioError, match="verify"):
        parse_text("T = 2\nbackend = heisenberg\ng1 = id\ng2 = theta\ntasks = verify\n")


def test_empty_task_list(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("T = 2\nbackend = heisenberg\ng1 = id\ng2 = id\n")
    assert main(["run", "--scenario", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["results"] == {} and report["checks"] == [] and report["all_passed"]


def test_config_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text(MINIMAL.replace("g1 = id", "g1 = theta"))
    assert main(["run", "--scenario", str(path)]) == 2
    assert main(["run", "--scenario", str(tmp_path / "missing.txt")]) == 2


def test_fusion_report_and_tables(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text(MINIMAL)
    out = tmp_path / "r.json"
    code = main(["fusion-bound", "--scenario", str(path), "--weight-cap", "4", "--out", str(out), "--dump-tables"])
    assert code == 0
    report = json.loads(out.read_text())
    fb = report["results"]["fusion-bound"]
    assert report["schema"].endswith("/1")
    assert fb["caps"] == [2, 4] and fb["value"] == 1 and fb["stabilized"]
    assert out.with_suffix(".tables.json").exists()


def test_build_tasks(tmp_path):
    sc = parse_text(MINIMAL.replace("tasks = fusion-bound", "tasks = build-zhu, build-bimodule")
                    .replace("weight_cap = 6", "weight_cap = 4"))
    report, tables, code = run_scenario(sc, dump_tables=True)
    assert code == 0
    zhu = report["results"]["build-zhu"]["theta"]
    assert zhu["representatives"] == [[]]
    bim = report["results"]["build-bimodule"]
    assert bim["rank_O"] >= bim["rank_Oprime"]
    assert "A_theta" in tables and "bimodule" in tables


def test_verify_fz_scenario():
    sc = parse_text(MINIMAL.replace("g2 = theta", "g2 = id").replace("theta-twisted", "vacuum")
                    .replace("tasks = fusion-bound", "tasks = verify").replace("weight_cap = 6", "weight_cap = 3"))
    report, _, code = run_scenario(sc)
    assert code == 0
    names = {c["check"] for c in report["checks"]}
    assert {"specialization[FZ]", "specialization[DLM]", "mixed_associativity_in_Oprime", "straighten"} <= names


def test_determinism():
    sc = parse_scenario(ROOT / "scenarios" / "twisted_left.txt")
    sc.weight_cap = 3
    a = run_scenario(sc)[0]
    b = run_scenario(sc)[0]
    assert dumps(strip_timing(a)) == dumps(strip_timing(b))
