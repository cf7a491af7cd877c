import json
import subprocess
import sys

from click.testing import CliRunner

from isocrit.cli import cli


def run(*args, stdin=None):
    return CliRunner().invoke(cli, list(args), input=stdin)


def test_crit_index_p5():
    assert run("crit-index", "DhC").output.strip() == "1"


def test_pipe_wounded_spider():
    code = run("gen", "wounded-spider", "4", "2").output
    res = run("crit-index", stdin=code)
    assert (res.exit_code, res.output.strip()) == (0, "3")


def test_check_crit1_c4():
    code = run("gen", "cycle", "4").output.strip()
    for method in ("both", "structural", "brute"):
        res = run("check-crit1", code, "--method", method)
        assert (res.exit_code, res.output.strip()) == (0, "true")


def test_star_exit_code():
    star = run("gen", "star", "4").output.strip()
    res = run("crit-index", star)
    assert res.exit_code == 2 and res.output.strip() == "undefined (star)"
    assert run("sd", star).exit_code == 2
    assert run("check-crit1", star).exit_code == 2


def test_malformed_and_usage_errors_exit_one():
    assert run("iota", "A").exit_code == 1
    assert run("iota", "@/nonexistent/file").exit_code == 1
    assert run("gen", "path").exit_code == 1
    assert run("gen", "path", "x").exit_code == 1
    assert run("gen", "hypercube", "3").exit_code == 1
    assert run("enum-trees").exit_code == 1
    assert run("nosuchcommand").exit_code == 1
    assert run("gen", "fiota", "O1@2").exit_code == 1


def test_edgelist_file(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(run("gen", "path", "9", "--edgelist").output)
    assert run("iota", f"@{p}").output.strip() == "2"
    assert run("sd", f"@{p}").output.strip() == "1"


def test_analyze_document():
    res = run("analyze", "DhC", "--gamma")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["input"] == {"graph6": "DhC", "m": 4, "n": 5}
    assert doc["iota"] == 1
    assert doc["criticality"]["crit_q"] == len(doc["criticality"]["max_safe_set"]) + 1 == 1
    assert doc["iota1_critical"] is True
    assert all(t["pass"] for t in doc["tripartitions"])
    assert doc["fiota"]["member"] is True
    assert doc["gamma"]["gamma"] == 2
    assert res.output == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_analyze_truncation_and_star():
    doc = json.loads(run("analyze", "Cr", "--max-sets", "1").output)  # C_4
    assert doc["min_isolating_sets"] == {"count": 4, "sets": [[0]], "truncated": True}
    doc = json.loads(run("analyze", run("gen", "star", "3").output.strip()).output)
    assert doc["criticality"]["is_star"] is True and doc["tripartitions"] is None


def test_enum_trees():
    out = run("enum-trees", "--n", "6").output.split()
    assert len(out) == 6
    assert len(run("enum-trees", "--n", "6", "--non-star").output.split()) == 5


def test_gen_families():
    assert run("gen", "qk", "3").output.strip()
    assert run("gen", "spider", "3", "--edgelist").output.startswith("7 6")
    assert run("gen", "fiota", "O3@leaf", "O1@1").exit_code == 0


def test_survey_and_gap_report(tmp_path):
    out = tmp_path / "s.csv"
    res = run("survey", "--max-n", "8", "--out", str(out), "--workers", "2")
    assert res.exit_code == 0 and out.exists()
    doc = json.loads(run("gap-report", "--max-n", "8", "--from", str(out)).output)
    assert doc["orders"]["5"]["unrealised"] == [2]
    text = run("gap-report", "--max-n", "6", "--text").output
    assert text.startswith("n=5 ")
    assert run("survey", "--max-n", "15", "--out", str(out)).exit_code == 1


def test_help_mentions_worker_variable():
    assert "ISOCRIT_WORKERS" in run("--help").output


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "isocrit.cli", "crit-index", "-"], input="DhC\n", capture_output=True, text=True
    )
    assert (proc.returncode, proc.stdout.strip()) == (0, "1")
