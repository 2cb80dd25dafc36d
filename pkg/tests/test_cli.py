"""Golden-file regression tests for the command-line front end.

Run with ``GKM_REGOLD=1`` to rewrite the golden files.
"""
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from gkm.cli import main

GOLDEN = Path(__file__).parent / "golden"
REGOLD = bool(os.environ.get("GKM_REGOLD"))

AFF = ["--cartan", "2,-2;-2,2", "--parabolic", "2"]
G2 = ["--cartan", "2,-1;-3,2", "--parabolic", "1"]

CASES = {
    "examples_g2_H": ["examples", "g2", "--theory", "H"],
    "examples_g2_K": ["examples", "g2", "--theory", "K"],
    "examples_omega_H": ["examples", "omega-su2", "--theory", "H"],
    "examples_omega_K": ["examples", "omega-su2", "--theory", "K"],
    "examples_twisted": ["examples", "twisted-a1"],
    "qcheck_table": ["qcheck", "--M", "6", "--L", "4"],
    "qcheck_json": ["qcheck", "--M", "3", "--L", "2", "--emit", "json"],
    "graph_affine_dot": ["graph", *AFF, "--max-length", "6", "--emit", "dot"],
    "graph_affine_svg_rotated": ["graph", *AFF, "--max-length", "4", "--emit", "svg", "--rotate-basis"],
    "graph_g2_table": ["graph", *G2, "--vars", "a,b"],
    "graph_g2_json": ["graph", *G2, "--emit", "json"],
    "gens_a2_table": ["gens", "--cartan", "2,-1;-1,2"],
    "gens_g2_K_json": ["gens", *G2, "--theory", "K", "--emit", "json"],
    "mul_g2_K_specialized": ["mul", *G2, "--theory", "K", "--specialize", "s2", "s2", "s2"],
    "mul_g2_H": ["mul", *G2, "s2", "s2"],
    "mul_affine_provisional": ["mul", *AFF, "--max-length", "3", "--theory", "K", "s1", "s1"],
    "mul_affine_K_recheck": ["mul", *AFF, "--max-length", "3", "--theory", "K", "--stability-recheck", "s1", "s1"],
    "mul_affine_H_truncated": ["mul", *AFF, "--max-length", "3", "s1", "s1", "s1", "s1", "s1"],
    "mul_affine_H_recheck": ["mul", *AFF, "--max-length", "3", "--stability-recheck", "s1", "s1", "s1", "s1", "s1"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = run(CASES[name])
    text = f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"
    path = GOLDEN / f"{name}.txt"
    if REGOLD or not path.exists():
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", ["examples_g2_H", "graph_affine_dot", "gens_g2_K_json"])
def test_deterministic(name):
    assert run(CASES[name]) == run(CASES[name])


def test_spec_examples():
    code, out, _ = run(["examples", "g2", "--theory", "H"])
    assert code == 0 and out.rstrip().endswith("x^6=0")
    assert run(["qcheck", "--M", "6", "--L", "4"])[0] == 0
    code, out, _ = run(["graph", *AFF, "--max-length", "6", "--emit", "dot"])
    assert code == 0 and out.count("label=") - out.count("--") == 7


def test_affine_needs_max_length():
    code, out, err = run(["graph", *AFF])
    assert code == 2 and out == ""
    assert "max-length" in json.loads(err)["error"]


def test_exactly_one_input(tmp_path):
    assert run(["graph"])[0] == 2
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"rank": 1, "vertices": [{"id": "0", "length": 0}], "edges": []}))
    assert run(["graph", *G2, "--graph", str(f)])[0] == 2
    assert run(["graph", "--graph", str(f)])[0] == 0


def test_bad_graph_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text("{not json")
    assert run(["graph", "--graph", str(f)])[0] == 2
    assert run(["graph", "--graph", str(tmp_path / "missing.json")])[0] == 2


def test_graph_check_failure_witness(tmp_path):
    desc = {"rank": 2, "vertices": [{"id": "a", "length": 0}, {"id": "b", "length": 1}, {"id": "c", "length": 2}],
            "edges": [{"source": "b", "target": "a", "weight": [1, 0]},
                      {"source": "c", "target": "a", "weight": [1, 1]},
                      {"source": "c", "target": "b", "weight": [2, 2]}]}
    f = tmp_path / "g.json"
    f.write_text(json.dumps(desc))
    code, _, err = run(["graph", "--graph", str(f), "--theory", "K"])
    assert code == 1
    witness = json.loads(err)["witness"]
    assert witness["checks"][3]["witnesses"][0]["vertex"] == "c"


def test_verify_member_and_non_member(tmp_path):
    f = tmp_path / "p1.json"
    f.write_text(json.dumps({"rank": 1, "vertices": [{"id": "0", "length": 0}, {"id": "1", "length": 1}],
                             "edges": [{"source": "1", "target": "0", "weight": [1]}]}))
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"theory": "H", "values": {"0": [], "1": [[[1], "1"]]}}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"theory": "H", "values": {"0": [], "1": [[[0], "1"]]}}))
    assert run(["verify", "--graph", str(f), str(good)])[0] == 0
    code, out, err = run(["verify", "--graph", str(f), str(bad)])
    assert code == 1 and "fail" in out
    assert json.loads(err)["witness"]["edge"] == ["1", "0"]
    garbage = tmp_path / "garbage.json"
    garbage.write_text("[]")
    assert run(["verify", "--graph", str(f), str(garbage)])[0] == 2


def test_config_errors():
    assert run(["examples", "nope"])[0] == 2
    assert run(["examples", "twisted-a1", "--theory", "K"])[0] == 2
    assert run(["mul", *G2, "nowhere"])[0] == 2
    assert run(["graph", "--cartan", "2,1;1,2"])[0] == 2
    assert run(["graph", "--cartan", "2,-1;-1,2", "--parabolic", "3"])[0] == 2
    assert run(["graph", *G2, "--vars", "a"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["graph", "--emit", "png"])
    assert exc.value.code == 2


def test_lift_failure_exit_code():
    code, _, err = run(["gens", *AFF, "--max-length", "6", "--theory", "K"])
    assert code == 1
    assert len(json.loads(err)["witness"]) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gkm.cli", "examples", "g2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "x^6=0"
