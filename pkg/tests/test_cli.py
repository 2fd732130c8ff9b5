import io
import json

import pytest

from partreg.cli import outcome_json, run


def call(argv, **kw):
    out, err = io.StringIO(), io.StringIO()
    code, report = run(argv, stdout=out, stderr=err)
    return code, report, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    (tmp_path / "m.txt").write_text("1 3\n2 -2 1\n")
    (tmp_path / "bad.txt").write_text("1 3\n2 -2 x\n")
    (tmp_path / "c.txt").write_text("4 2\n1 2 2 1\n")
    (tmp_path / "c5.txt").write_text("5 2\n1 2 2 1 1\n")
    (tmp_path / "badc.txt").write_text("2 2\n1 3\n")
    return tmp_path


def test_check_columns_condition(files):
    code, report, out, _ = call(["check", "columns-condition", str(files / "m.txt")])
    assert code == 0
    assert report["result"]["satisfied"] is True
    assert report["result"]["witness"]["blocks"] == [[0, 1], [2]]
    assert "blocks" in out
    assert str(files / "m.txt") in report["inputs"]


def test_check_other_conditions():
    assert call(["check", "first-entries", "ex212:9"])[1]["result"]["satisfied"]
    assert not call(["check", "monic", "ex212:9"])[1]["result"]["satisfied"]
    assert call(["check", "monic", "vdw:4"])[1]["result"]["satisfied"]
    assert call(["check", "segmented", "ex212:9", "--alpha", "0,1,4"])[1]["result"]["satisfied"]
    assert call(["check", "subtracted", "ex212:9", "--n", "1", "--k", "3"])[1]["result"]["satisfied"]
    assert not call(["check", "subtracted", "fs:3", "--n", "0", "--k", "2"])[1]["result"]["satisfied"]
    assert call(["check", "mt", "mt:1,2/3", "--a", "1,2"])[1]["result"]["satisfied"]


def test_gen_outputs(tmp_path):
    code, report, out, _ = call(["gen", "mt", "--a", "1,2", "--cols", "3"])
    assert code == 0
    assert out.splitlines()[0] == "5 3"
    assert report["result"] == {"kind": "mt", "params": {"a": [1, 2], "n": 3},
                                "truncation": {"columns": 3}}
    sidecar = tmp_path / "g.json"
    target = tmp_path / "g.txt"
    call(["gen", "vdw", "--n", "3", "-o", str(target), "--json", str(sidecar)])
    assert target.read_text() == "3 2\n1 0\n1 1\n1 2\n"
    assert json.loads(sidecar.read_text())["result"]["kind"] == "vdw"


def test_verify_schur():
    code, report, out, _ = call(["verify", "--spec", "additive-image", "--matrix", "schur",
                                 "-r", "2", "-N", "5"])
    assert code == 0 and out.startswith("AllAdmit")
    code, report, _, _ = call(["verify", "--spec", "additive-image", "--matrix", "schur",
                               "-r", "2", "-N", "4"])
    assert code == 0
    assert report["result"]["bad_coloring"] == [1, 2, 2, 1]


def test_verify_inconclusive_exit(monkeypatch):
    code, report, _, _ = call(["verify", "--spec", "fsfp", "--length", "2", "-r", "2", "-N", "10",
                               "--max-nodes", "20"])
    assert code == 2 and report["result"]["outcome"] == "Inconclusive"
    monkeypatch.setenv("PARTREG_BUDGET_NODES", "20")
    code, report, _, _ = call(["verify", "--spec", "fsfp", "--length", "2", "-r", "2", "-N", "10"])
    assert code == 2 and report["result"]["budget"]["max_nodes"] == 20
    monkeypatch.setenv("PARTREG_BUDGET_NODES", "zero")
    assert call(["verify", "--spec", "fsfp", "--length", "2", "-r", "2", "-N", "10"])[0] == 1


def test_search_command(files):
    code, report, _, _ = call(["search", "--spec", "additive-image", "--matrix", "schur",
                               "--coloring", str(files / "c5.txt")])
    assert code == 0
    assert report["result"]["witness"]["values"] == [1, 4, 5]
    code, report, _, _ = call(["search", "--spec", "additive-image", "--matrix", "schur",
                               "--coloring", str(files / "c.txt")])
    assert report["result"]["outcome"] == "NoneFound"


def test_sweep_and_hunt():
    code, report, out, _ = call(["sweep", "--spec", "additive-image", "--matrix", "vdw:3",
                                 "-r", "2", "--to", "12"])
    assert code == 0 and report["result"]["least_all_admit"] == 9
    code, report, out, _ = call(["hunt", "Q3_8", "--matrix", "vdw:1", "-r", "2", "-N", "3"])
    assert code == 0
    assert report["result"]["certificate"]["outcome"] == "AllAdmit"
    assert "desk-scale" in out
    code, report, _, _ = call(["hunt", "Q3_19", "--m", "2", "-r", "2", "-N", "4"])
    assert code == 0


def test_structure_json_file(tmp_path):
    spec = {"variant": "composite", "parts": [
        {"variant": "psm", "m": 2, "length": 2, "distinct": True},
        {"variant": "psm", "m": 1, "length": 2, "distinct": True}]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, report, _, _ = call(["verify", "--spec", str(path), "-r", "2", "-N", "5"])
    assert code == 0
    assert report["result"]["spec"] == spec


@pytest.mark.parametrize("argv, needle", [
    (["check", "columns-condition", "{bad}"], "line 2, column 3"),
    (["check", "columns-condition", "missing.txt"], "neither a readable file"),
    (["search", "--spec", "additive-image", "--matrix", "schur", "--coloring", "{badc}"],
     "color 3 out of range r=2"),
    (["verify", "--spec", "additive-image", "--matrix", "schur", "-r", "0", "-N", "4"], "-r"),
    (["verify", "--spec", "kernel", "-r", "2", "-N", "4"], "exactly one --matrix"),
    (["frobnicate"], "invalid choice"),
    ([], "required"),
])
def test_usage_errors(files, argv, needle):
    argv = [a.format(bad=files / "bad.txt", badc=files / "badc.txt") for a in argv]
    code, report, _, err = call(argv)
    assert code == 1
    assert needle in err


def test_report_replays(tmp_path):
    path = tmp_path / "r.json"
    call(["verify", "--spec", "additive-image", "--matrix", "vdw:3", "-r", "2", "-N", "9",
          "--cover", "--json", str(path)])
    report = json.loads(path.read_text())
    assert list(report) == sorted(report)
    again = call(report["argv"])[1]
    assert outcome_json(again) == outcome_json(report)


def test_json_to_stdout():
    code, _, out, _ = call(["check", "monic", "schur", "--json", "-"])
    data = json.loads(out)
    assert data["result"]["satisfied"] is True
    assert data["exit_code"] == 0
