import json
import shutil
import subprocess

import pytest

from hopfclass import acceptance
from hopfclass.cli import main
from hopfclass.report import loads, markdown_verdict_set, verdict_set
from hopfclass.rules import RULES


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_q5_pin(capsys):
    code, out, _ = run(["enumerate", "--p", "2", "--q", "5", "--g", "2", "--pin", "a=0"], capsys)
    assert code == 0
    (case,) = loads(out)["cases"]
    assert [(s["type"], s["a"], s["b"], s["c"]) for s in case["solutions"]] == [("(1,2;4,3;5,2)", 0, 3, 2)]


def test_enumerate_full_dimension(capsys):
    code, out, _ = run(["enumerate", "--p", "2", "--q", "5", "--g", "100"], capsys)
    (sol,) = loads(out)["cases"][0]["solutions"]
    assert code == 0 and sol["type"] == "(1,100)" and (sol["a"], sol["b"], sol["c"]) == (0, 0, 0)


def test_enumerate_empty(capsys):
    code, out, _ = run(["enumerate", "--p", "2", "--q", "7", "--g", "14", "--pin", "a=0"], capsys)
    assert code == 0 and loads(out)["cases"][0]["solutions"] == []


def test_eliminate_infeasible(capsys):
    code, out, _ = run(["eliminate", "--type", "(1,2;4,3;5,2)", "--dim", "100"], capsys)
    (case,) = loads(out)["cases"]
    assert code == 0 and case["status"] == "Infeasible" and case["trace"]


def test_eliminate_propagation_only(capsys):
    code, out, _ = run(["eliminate", "--type", "(1,2;4,21;13,2)", "--dim", "676"], capsys)
    (case,) = loads(out)["cases"]
    assert case["status"] == "Infeasible" and case["nodes"] == 0


def test_eliminate_feasible_witness(capsys):
    code, out, _ = run(["eliminate", "--type", "(1,4;2,1)", "--dim", "8", "--group", "Z2xZ2"], capsys)
    (case,) = loads(out)["cases"]
    assert code == 0 and case["status"] == "Feasible" and case["witness"]["group"] == "Z2xZ2"


def test_eliminate_wide_focus(capsys):
    code, out, _ = run(["eliminate", "--type", "(1,4;2,1)", "--dim", "8", "--focus", "all"], capsys)
    assert code == 0 and {c["status"] for c in loads(out)["cases"]} == {"Feasible"}


@pytest.mark.parametrize(
    "argv",
    [
        ["eliminate", "--type", "(1,2;4,3;5,2)", "--dim", "99"],
        ["eliminate", "--type", "(1,2;4,3", "--dim", "100"],
        ["eliminate", "--type", "(1,2;4,3;5,2)", "--dim", "100", "--group", "Z4"],
        ["enumerate", "--p", "2", "--q", "5", "--g", "3"],
        ["enumerate", "--p", "4", "--q", "5", "--g", "2"],
        ["classify", "--p", "3", "--q", "79"],
        ["classify", "--p", "5", "--q", "5"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err.startswith("hopfclass: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--p", "2", "--q", "5", "--g", "2", "--pin", "z=1"])
    assert exc.value.code == 2


def test_budget_exhausted(capsys):
    code, out, _ = run(["eliminate", "--type", "(1,2;4,3;5,2)", "--dim", "100", "--budget", "10"], capsys)
    assert code == 3 and loads(out)["cases"][0]["status"] == "BudgetExceeded"


def test_classify_q3(capsys):
    code, out, _ = run(["classify", "--p", "2", "--q", "3"], capsys)
    (case,) = loads(out)["cases"]
    assert code == 0 and case["outcome"] == "Semisolvable"


def test_classify_json_markdown_agree(capsys):
    _, js, _ = run(["classify", "--p", "2", "--q", "11", "--no-timings"], capsys)
    _, md, _ = run(["classify", "--p", "2", "--q", "11", "--no-timings", "--format", "markdown"], capsys)
    report = loads(js)
    assert len(report["cases"]) == 9
    assert verdict_set(report) == markdown_verdict_set(md)
    assert "## Findings" in md


def test_classify_json_roundtrip(capsys):
    _, js, _ = run(["classify", "--p", "3", "--q", "83"], capsys)
    report = loads(js)
    assert set(report) == {"version", "config", "cases", "findings"}
    assert json.loads(json.dumps(report, sort_keys=True)) == report
    from hopfclass.replay import replay_all

    assert replay_all(report["cases"]) == [c["outcome"] for c in report["cases"]]


def test_classify_deterministic(capsys):
    argv = ["classify", "--p", "2", "--q", "13", "--no-timings"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HOPFCLASS_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run(["classify", "--p", "2", "--q", "5", "--format", "markdown"], capsys)
    assert code == 0 and out == ""
    assert (tmp_path / "classify.md").read_text().startswith("# hopfclass report")


def test_output_flag_wins(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HOPFCLASS_OUTPUT_DIR", str(tmp_path / "env"))
    dest = tmp_path / "r.json"
    run(["enumerate", "--p", "2", "--q", "5", "--g", "2", "--output", str(dest)], capsys)
    assert dest.exists() and not (tmp_path / "env").exists()


@pytest.mark.skipif(shutil.which("hopfclass") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["hopfclass", "enumerate", "--p", "2", "--q", "11", "--g", "11", "--pin", "a=0"],
        capture_output=True, text=True, check=True,
    )
    sols = json.loads(proc.stdout)["cases"][0]["solutions"]
    assert [s["type"] for s in sols] == ["(1,11;4,22;11,1)"]


# ----------------------------------------------------------- verify-paper
def test_verify_paper_passes_and_is_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify-paper", "--no-timings", "--output", str(a)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 12 and all(l.startswith("[PASS]") for l in lines)
    assert main(["verify-paper", "--no-timings", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = loads(a.read_text())
    assert [c["id"] for c in report["cases"]] == list(range(1, 13)) and report["findings"] == []


def _fast_properties(monkeypatch):
    # the property criterion is covered elsewhere; these tests only need the failure path
    stub = acceptance.CriterionResult(11, "property suites on random types", True, "stubbed")
    monkeypatch.setattr(acceptance, "criterion_11", lambda n=100: stub)


def test_verify_paper_corrupted_catalogue(monkeypatch, capsys):
    _fast_properties(monkeypatch)
    monkeypatch.delitem(RULES, "fusion-infeasible")
    code, out, _ = run(["verify-paper", "--no-timings"], capsys)
    assert code == 1
    failed = [c["id"] for c in loads(out)["cases"] if not c["passed"]]
    assert 5 in failed


def test_verify_paper_tiny_budget(monkeypatch, capsys):
    _fast_properties(monkeypatch)
    code, out, _ = run(["verify-paper", "--budget", "10", "--no-timings"], capsys)
    report = loads(out)
    assert code == 1
    crit5 = next(c for c in report["cases"] if c["id"] == 5)
    assert not crit5["passed"] and "BudgetExceeded" in crit5["detail"]
