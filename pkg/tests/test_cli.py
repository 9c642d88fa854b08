import json

import pytest

from boxkit.boxrep import BoxRepresentation, verify
from boxkit.cli import run
from boxkit.graph import read_edge_list

C4_EL = "0 2\n0 3\n1 2\n1 3\n"
P4_EL = "0 1\n1 2\n2 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_exact_on_c4(files, capsys):
    code, out = run_json(capsys, ["exact", "--graph", files("c4.el", C4_EL), "--dmax", "3"])
    assert code == 0 and out["d"] == 2
    rep = BoxRepresentation.from_json(out["rep"])
    assert verify(read_edge_list(C4_EL), rep)


def test_exact_reports_no_when_dmax_is_too_small(files, capsys):
    code, out = run_json(capsys, ["exact", "--graph", files("c4.el", C4_EL), "--dmax", "1"])
    assert code == 1 and out["d"] is None


def test_recognize(files, capsys):
    code, out = run_json(capsys, ["recognize", "--graph", files("p4.el", P4_EL)])
    assert code == 0 and out["interval"]
    code, out = run_json(capsys, ["recognize", "--graph", files("c4.el", C4_EL)])
    assert code == 1 and out["model"] is None


def test_pw_approx_on_p4(files, capsys):
    pd = files("p4.pd", "0 1\n1 2\n2 3\n")
    code, out = run_json(capsys, ["pw-approx", "--graph", files("p4.el", P4_EL), "--pd", pd])
    assert code == 0 and out["d"] == 1 and out["rep_dimension"] == 2


def test_pw_approx_rejects_bad_decomposition(files, capsys):
    pd = files("bad.pd", "0 1\n2 3\n")
    assert run(["pw-approx", "--graph", files("p4.el", P4_EL), "--pd", pd]) == 2
    assert "edge" in capsys.readouterr().err


def test_kernelize_and_override_warning(files, capsys):
    g = files("k.el", "vertices: 0 1 2 3 4 5\n0 1\n0 2\n0 3\n0 4\n0 5\n")
    code, out = run_json(capsys, ["kernelize", "--graph", g])
    assert code == 0 and out["sound"] and set(out) >= {"X", "classes", "kernel"}
    code = run(["kernelize", "--graph", g, "--threshold-override", "2", "--json"])
    captured = capsys.readouterr()
    assert code == 0 and "UNSOUND" in captured.err
    assert json.loads(captured.out)["sound"] is False


def test_fpt_solve(files, capsys):
    g = files("c4.el", C4_EL)
    assert run_json(capsys, ["fpt-solve", "--graph", g, "--d", "2"]) == (0, {"d": 2, "answer": True})
    assert run_json(capsys, ["fpt-solve", "--graph", g, "--d", "1"]) == (1, {"d": 1, "answer": False})


def test_verify_exit_codes(files, capsys):
    g = files("p3.el", "0 1\n1 2\n")
    good = files("good.json", json.dumps({"d": 1, "boxes": {"0": [[1, 3]], "1": [[2, 5]], "2": [[4, 6]]}}))
    bad = files("bad.json", json.dumps({"d": 1, "boxes": {"0": [[1, 4]], "1": [[2, 5]], "2": [[3, 6]]}}))
    assert run_json(capsys, ["verify", "--graph", g, "--rep", good])[0] == 0
    code, out = run_json(capsys, ["verify", "--graph", g, "--rep", bad])
    assert code == 1 and out["pair"] == [0, 2] and out["kind"] == "spurious"


def test_gadget_writes_three_files(tmp_path, capsys):
    prefix = str(tmp_path / "g3")
    assert run(["gadget", "gn", "--n", "3", "--out", prefix]) == 0
    g = read_edge_list((tmp_path / "g3.el").read_text())
    rep = BoxRepresentation.from_json(json.loads((tmp_path / "g3.rep.json").read_text()))
    labeling = json.loads((tmp_path / "g3.labeling.json").read_text())
    assert g.n == 24 and verify(g, rep) and len(labeling) == 24


@pytest.mark.parametrize("kind,extra,n", [("block", [], 8), ("k2n", ["--n", "4"], 6)])
def test_gadget_json(capsys, kind, extra, n):
    code, out = run_json(capsys, ["gadget", kind, *extra])
    assert code == 0 and out["n"] == n
    g = read_edge_list(out["graph"])
    assert verify(g, BoxRepresentation.from_json(out["rep"]))


def test_render_svg_is_deterministic(tmp_path, files, capsys):
    rep = files("r.json", json.dumps({"d": 2, "boxes": {"0": [[1, 3], [1, 4]], "1": [[2, 4], [2, 3]]}}))
    assert run(["render-svg", "--rep", rep]) == 0
    first = capsys.readouterr().out
    assert run(["render-svg", "--rep", rep]) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("<svg") and first.count("<rect") == 3
    one_dim = files("r1.json", json.dumps({"d": 1, "boxes": {"0": [[1, 2]]}}))
    assert run(["render-svg", "--rep", one_dim]) == 2


def test_stab(tmp_path, capsys):
    prefix = str(tmp_path / "g")
    run(["gadget", "gn", "--n", "8", "--out", prefix])
    capsys.readouterr()
    vs = ",".join(str(8 * i + 1) for i in range(8))
    code, out = run_json(capsys, ["stab", "--rep", prefix + ".rep.json", "--subset", vs])
    assert code == 0 and out["count"] >= 2


@pytest.mark.parametrize("argv", [[], ["nope"], ["exact"], ["gadget", "gn"], ["exact", "--dmax", "x"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == 64


def test_io_errors(tmp_path):
    assert run(["exact", "--graph", str(tmp_path / "missing.el")]) == 74


def test_parse_errors(files, capsys):
    assert run(["exact", "--graph", files("bad.el", "1 x\n")]) == 2
    assert "line 1" in capsys.readouterr().err
