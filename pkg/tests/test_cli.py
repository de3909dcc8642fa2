import json
import subprocess
import sys

import pytest

from cseqgraph.chromatics import chromatic_number, coloring_number
from cseqgraph.cli import main, run
from cseqgraph.csgraph import build_window, cseq_rule
from cseqgraph.cseq import build_from_spec, check_coherence
from cseqgraph.ordinals import ALEPH0
from cseqgraph.windows import Window
from conftest import O

SPEC = {"budget": "w*2", "default": "full", "overrides": [{"at": "w", "club": {"progression": {"step": "2"}}}]}


@pytest.fixture
def spec_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(SPEC))
    return str(p)


def report(argv):
    code, text, _ = run(argv)
    return code, json.loads(text)


def test_cseq_check_matches_library(spec_file):
    code, rep = report(["cseq", "check", "--spec", spec_file, "--relation", "sq_chi", "--chi", "w", "--window", "0..w*2"])
    lib = check_coherence(build_from_spec(SPEC), "sq_chi", Window(0, O("w*2"), 6, (O("w*2"),)), ALEPH0)
    assert rep["result"] == lib.to_json()
    assert code == (0 if lib.ok else 1)
    assert rep["config"]["relation"] == "sq_chi" and rep["config"]["command"] == "cseq check"


def test_cseq_check_reports_violation(spec_file):
    code, rep = report(["cseq", "check", "--spec", spec_file, "--relation", "sq", "--window", "0..w*2+1"])
    assert code == 1 and rep["result"]["violations"] == [["w*2", "w"]]


def test_chr_and_col_match_library(spec_file):
    vec = build_from_spec(SPEC)
    g = build_window(cseq_rule(vec), Window(0, O("w*2+1"), 5, (O("w*2"),)))
    code, rep = report(["color", "chr", "--spec", spec_file, "--window", "0..w*2+1", "--width", "5"])
    assert code == 0 and rep["result"]["chr"] == chromatic_number(g)[0]
    code, rep = report(["color", "col", "--spec", spec_file, "--window", "0..w*2+1", "--width", "5"])
    assert rep["result"]["col"] == coloring_number(g)[0]


def test_empty_dot():
    code, text, _ = run(["graph", "export", "--budget", "3", "--points", "w", "--format", "dot"])
    assert code == 0 and text == "graph G {\n}\n"


def test_extend_then_check(tmp_path):
    out = tmp_path / "c.json"
    assert main(["color", "extend", "--budget", "w*2", "--palette", "tail:1", "--window", "0..w*2+1", "--width", "4", "--out", str(out)]) == 0
    code, rep = report(["color", "suitable", "--budget", "w*2", "--coloring", str(out), "--window", "0..w*2+1", "--width", "4"])
    assert code == 0 and rep["result"] == {"certificate": "Proper"}
    code, rep = report(["color", "adversary", "--budget", "w*2", "--coloring", str(out), "--window", "0..w*2+1", "--width", "4"])
    assert code == 0 and rep["result"]["edge"] is None


def test_force_chain(tmp_path):
    p = tmp_path / "p.json"
    assert main(["force", "extend", "--target", '{"successors": "w^3"}', "--sigma", "2", "--out", str(p)]) == 0
    code, rep = report(["force", "project", "--s0", str(p), "--s1", str(p)])
    assert code == 0 and all(rep["result"]["checks"].values())


def test_force_game_and_sample():
    code, rep = report(["force", "game", "--length", "w+3", "--seed", "4"])
    assert code == 0 and rep["result"]["outcome"] == "IIWins"
    code, rep = report(["force", "sample", "--budget", "w^2", "--seed", "2"])
    assert code == 0 and rep["result"]["captureLog"] and rep["result"]["recertifyFailures"] == []


def test_capture_command():
    code, rep = report(["capture", "--spec", json.dumps({"budget": "w", "overrides": [{"at": "w", "club": {"progression": {"step": "2"}}}]}), "--delta", "w", "--targets", '[{"progression": {"step": "2"}}]', "--theta", "1"])
    assert code == 0 and rep["result"]["certificate"] == "Capture"


def test_config_file_and_flag_override(tmp_path, spec_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"spec": spec_file, "relation": "sq", "window": "0..w*2+1"}))
    code, rep = report(["cseq", "check", "--config", str(cfg), "--relation", "sq_chi", "--chi", "w"])
    assert rep["config"]["relation"] == "sq_chi" and rep["config"]["window"] == "0..w*2+1"


def test_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("CSEQGRAPH_OUT_DIR", str(tmp_path))
    assert main(["cseq", "build", "--budget", "w", "--out", "sub/b.json"]) == 0
    assert json.loads((tmp_path / "sub" / "b.json").read_text())["result"]["sequence"]["budget"] == "w"


@pytest.mark.parametrize(
    "argv",
    [
        ["cseq", "check", "--spec", '{"budget": "w", "bogus": 1}'],
        ["cseq", "check", "--spec", "/nonexistent.json"],
        ["cseq", "build", "--budget", "w+$"],
        ["cseq", "check", "--spec", '{"budget": "w", "overrides": [{"at": "w", "club": [0, 1, 2]}]}'],
        ["force", "game", "--length", "w*3"],
        ["verify", "all", "--only", "nope"],
        ["frobnicate"],
    ],
)
def test_usage_and_spec_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_spec_error_cites_path(capsys):
    assert main(["cseq", "check", "--spec", '{"budget": "w*2", "overrides": [{"at": "3", "club": [1]}]}']) == 2
    assert "$.overrides[0].at" in capsys.readouterr().err


def test_verify_all_byte_identical():
    argv = ["verify", "all", "--seed", "7", "--quick", "--only", "02_chromatic_oracle,07_projection_contracts,12_witness_soundness"]
    a, b = run(argv), run(argv)
    assert a == b and a[0] == 0
    suites = [s["suite"] for s in json.loads(a[1])["result"]["suites"]]
    assert suites == sorted(suites)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cseqgraph", "cseq", "build", "--budget", "w*2"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["sequence"]["budget"] == "w*2"
