import json
import subprocess
import sys

import pytest

from sphsep.cli import main

ANTIPODAL = {"dimension": 2, "sides": [
    {"kind": "generators", "vectors": [["1", "0"]]},
    {"kind": "generators", "vectors": [["-1", "0"]]}]}
NESTED = {"dimension": 2, "sides": [
    {"kind": "generators", "vectors": [["1", "0"], ["0", "1"]]},
    {"kind": "generators", "vectors": [["1", "1"], ["2", "1"]]}]}
NOT_POINTED = {"dimension": 2, "sides": [
    {"kind": "generators", "vectors": [["1", "0"], ["-1", "0"]]},
    {"kind": "generators", "vectors": [["0", "1"]]}]}
MIXED = {"dimension": 2, "sides": [
    {"kind": "generators", "vectors": [["1", "0"]]},
    {"kind": "halfspaces", "rows": [["0", "1"]]}]}
QUERY = {"dimension": 2, "polytope": {"kind": "compact", "vertices": [["1", "0"], ["0", "1"]]},
         "queries": [["1", "0"]], "alpha": "2"}


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return _write


def test_separate_antipodal(write, tmp_path):
    out = tmp_path / "c.json"
    assert main(["separate", write("a.json", ANTIPODAL), "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["kind"] == "separator" and cert["payload"]["u"] == ["1", "0"]


def test_separate_nested_witness(write, tmp_path):
    out = tmp_path / "c.json"
    assert main(["separate", write("n.json", NESTED), "--out", str(out)]) == 2
    assert json.loads(out.read_text())["kind"] == "common-ray"


def test_separate_not_pointed(write, capsys):
    assert main(["separate", write("b.json", NOT_POINTED)]) == 3
    assert "not spherically convex" in capsys.readouterr().err


def test_separate_mixed(write, capsys):
    assert main(["separate", write("m.json", MIXED)]) == 3
    assert "mixed" in capsys.readouterr().err


@pytest.mark.parametrize("inst", [ANTIPODAL, NESTED])
def test_verify_round_trip(write, tmp_path, inst):
    ip = write("i.json", inst)
    cp = str(tmp_path / "c.json")
    main(["separate", ip, "--out", cp])
    assert main(["verify", cp, ip]) == 0


def test_verify_flipped_sign(write, tmp_path, capsys):
    ip = write("i.json", ANTIPODAL)
    cp = tmp_path / "c.json"
    main(["separate", ip, "--out", str(cp)])
    cert = json.loads(cp.read_text())
    cert["payload"]["side2_dots"] = ["1"]
    cp.write_text(json.dumps(cert))
    assert main(["verify", str(cp), ip]) == 1
    assert "side 2" in capsys.readouterr().err


def test_verify_wrong_instance(write, tmp_path):
    cp = str(tmp_path / "c.json")
    main(["separate", write("a.json", ANTIPODAL), "--out", cp])
    assert main(["verify", cp, write("n.json", NESTED)]) == 1


def test_render_counts(write, tmp_path):
    ip = write("a.json", ANTIPODAL)
    cp, svg = str(tmp_path / "c.json"), tmp_path / "a.svg"
    main(["separate", ip, "--out", cp])
    assert main(["render", ip, cp, "--out", str(svg)]) == 0
    text = svg.read_text()
    assert text.count('class="ray ') == 2 and text.count('class="separator"') == 1


def test_render_rejects_4d(write, capsys):
    inst = {"dimension": 4, "sides": [{"kind": "generators", "vectors": [["1", "0", "0", "0"]]},
                                      {"kind": "generators", "vectors": [["-1", "0", "0", "0"]]}]}
    assert main(["render", write("d.json", inst)]) == 3
    assert "render supports n≤3" in capsys.readouterr().err


def test_gen_then_separate(tmp_path):
    ip = str(tmp_path / "g.json")
    assert main(["gen", "--kind", "intersecting", "--dim", "3", "--seed", "5", "--out", ip]) == 0
    assert main(["separate", ip, "--out", str(tmp_path / "c.json")]) == 2
    assert main(["gen", "--kind", "open-disjoint", "--dim", "3", "--seed", "5", "--out", ip]) == 0
    assert main(["separate", ip, "--out", str(tmp_path / "c.json")]) == 0
    assert main(["verify", str(tmp_path / "c.json"), ip]) == 0


def test_support(write, tmp_path):
    out = tmp_path / "s.json"
    assert main(["support", write("q.json", QUERY), "--out", str(out)]) == 0
    row = json.loads(out.read_text())["queries"][0]
    assert row["sigma"] == "1" and row["member"] and row["gamma"] == "1/2" and row["rho"] == 0.5


def test_margin(write, tmp_path):
    out = tmp_path / "m.json"
    assert main(["margin", write("a.json", ANTIPODAL), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert abs(rep["margin_lower"] - 1) < 1e-6 and abs(rep["thickening_radius"] - 0.5) < 1e-6
    assert main(["margin", write("n.json", NESTED), "--out", str(out)]) == 2


def test_lp_command(write, tmp_path):
    inst = {"dimension": 2, "lp": {"sense": "max", "c": ["1"], "rows": [["1"]], "relations": ["<="],
                                   "rhs": ["1"], "bounds": [["0", None]]}}
    ip = write("l.json", inst)
    cp = str(tmp_path / "c.json")
    assert main(["lp", ip, "--out", cp]) == 0
    assert main(["verify", cp, ip]) == 0
    assert main(["verify", cp]) == 0


def test_suite_small(tmp_path):
    out = tmp_path / "r.json"
    assert main(["suite", "--trials", "2", "--dim", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["ok"]


def test_trace_flag(write, tmp_path):
    tp = tmp_path / "t.txt"
    assert main(["separate", write("o.json", {"dimension": 2, "sides": [
        {"kind": "halfspaces", "rows": [["1", "0"]]}, {"kind": "halfspaces", "rows": [["-1", "1"]]}]}),
        "--trace-lp", str(tp), "--out", str(tmp_path / "c.json")]) in (0, 2)
    assert "phase" in tp.read_text()


def test_bad_usage_is_input_error():
    assert main(["nonsense"]) == 3


def test_module_entry_point(write):
    r = subprocess.run([sys.executable, "-m", "sphsep", "separate", write("a.json", ANTIPODAL)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["kind"] == "separator"
