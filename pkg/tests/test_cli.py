import json
import subprocess
import sys

import pytest

from curvekit.cli import BAD_INPUT, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--surface", "0,5", "--family", "O", "-v")
    assert code == 0
    assert out.splitlines()[0] == "O: 5 curves"
    assert "alpha_0" in out


def test_intersect(capsys):
    assert run(capsys, "intersect", "--surface", "1,3", "alpha_0^0", "alpha_1")[1].strip() == "1"


def test_act_matches_twist_symmetry(capsys):
    _, a, _ = run(capsys, "act", "--surface", "1,3", "--word", "T(alpha_1)", "alpha_0^0")
    _, b, _ = run(capsys, "act", "--surface", "1,3", "--word", "T(alpha_0^0)^-1", "alpha_1")
    assert a.split(" ", 1)[1] == b.split(" ", 1)[1]


def test_determine(capsys):
    code, out, _ = run(capsys, "determine", "--surface", "1,3", "alpha_0^1", "alpha_0^2", "alpha_1")
    assert code == 0 and out.splitlines() == ["unique", out.splitlines()[1]]
    assert out.splitlines()[1].startswith("beta_0")


def test_expand(capsys, tmp_path):
    out_path = tmp_path / "l.json"
    code, out, _ = run(capsys, "expand", "--surface", "0,5", "--levels", "1", "--json", str(out_path))
    assert code == 0
    assert out.splitlines()[1].startswith("level 1: 25")
    assert json.loads(out_path.read_text())["kind"] == "ledger"


def test_verify_and_json_report(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "g0-complexity2", "--surface", "0,5", "--json", str(path), "--no-timings")
    assert code == 0 and ": pass (" in out
    data = json.loads(path.read_text())
    assert "stats" not in data and data["verdict"] == "pass"


def test_verify_partial_exit_code(capsys):
    assert run(capsys, "verify", "g0-claims", "--surface", "0,7", "--budget-secs", "0.2")[0] == 2


def test_analyze_pants(capsys, tmp_path):
    p = tmp_path / "pants.json"
    p.write_text(json.dumps(["alpha_0^0", "alpha_0^1", "alpha_0^2", "alpha_0^3"]))
    code, out, _ = run(capsys, "analyze", "pants", "--surface", "1,4", "--in", str(p))
    summary = json.loads(out)
    assert code == 0 and summary["cycle"] and summary["edges"] == 4
    code, out, _ = run(capsys, "analyze", "pants", "--surface", "1,4", "--in", str(p), "--emit", "dot")
    assert out.startswith("graph adjacency {") and out.count(" -- ") == 4


def test_analyze_rejects_non_pants(capsys, tmp_path):
    p = tmp_path / "pants.json"
    p.write_text(json.dumps(["alpha_0^0", "alpha_1"]))
    assert run(capsys, "analyze", "pants", "--surface", "1,4", "--in", str(p))[0] == 1


def test_export_subgraph_dot(capsys):
    code, out, _ = run(capsys, "export", "--surface", "0,5", "--what", "subgraph", "--format", "dot")
    assert code == 0 and out.count(" -- ") == 25


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "nope", "--surface", "0,5"],
        ["verify", "g1-claims", "--surface", "0,5"],
        ["intersect", "--surface", "0,5", "alpha_0", "zeta"],
        ["intersect", "--surface", "2,0", "a", "b"],
        ["intersect", "--surface", "x", "a", "b"],
        ["act", "--surface", "1,3", "--word", "H(alpha_1)", "alpha_1"],
        ["construct", "--surface", "0,5", "--family", "Q"],
    ],
)
def test_bad_input_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == BAD_INPUT
    assert err.startswith("curvekit: ") and "Traceback" not in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "curvekit.cli", "intersect", "--surface", "0,5", "alpha_0", "alpha_1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "2"
