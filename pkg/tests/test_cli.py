import json

import pytest

from alcovesys.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "usage" in out


def test_level_too_small(capsys):
    code, out, err = run(capsys, "verify", "all", "--type", "A1", "--p", "2")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "LevelTooSmall"


def test_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "alcoves", "locate", "--type", "A2")[0] == 2
    assert run(capsys, "rootdata", "show", "--type", "Q2")[0] == 2
    assert run(capsys, "verify", "hecke", "--type", "A2", "--v-spec", "0")[0] == 2


def test_rootdata_show(capsys):
    code, out, _ = run(capsys, "rootdata", "show", "--type", "B2")
    (rec,) = records(out)
    assert code == 0
    assert rec["num_positive_roots"] == 4 and rec["weyl_group_order"] == 8


def test_locate_and_neighbors(capsys):
    code, out, _ = run(capsys, "alcoves", "locate", "--type", "A2", "--point", "2/1,3/1")
    assert code == 0 and records(out)[0]["alcove"] == {"k": [0, 0, 1]}
    code, _, err = run(capsys, "alcoves", "locate", "--type", "A1", "--point", "4")
    assert code == 2 and json.loads(err)["error"] == "OnWall"
    code, out, _ = run(capsys, "alcoves", "neighbors", "--type", "A2", "--k", "0,0,0")
    recs = records(out)
    assert code == 0 and len(recs) == 3
    assert {r["type"] for r in recs} == {"s0", "s1", "s2"}
    assert all("/" in r["hyperplane"]["offset"] for r in recs)


def test_enumerate(capsys):
    code, out, _ = run(capsys, "alcoves", "enumerate", "--type", "A2", "--window", "10")
    assert code == 0 and len(records(out)) == 49


def test_order(capsys):
    code, out, _ = run(capsys, "order", "test", "--type", "A1", "--A", "0", "--B", "1")
    rec = records(out)[0]
    assert rec["order"] is True and rec["half_loop"] is True
    code, out, _ = run(capsys, "order", "test", "--type", "A1", "--A", "1", "--B", "0")
    rec = records(out)[0]
    assert rec["order"] is False and rec["half_loop"] is False


def test_path_commands(capsys, tmp_path):
    loop = '{"base":{"k":[0]},"tokens":[{"crossPos":{"wall":1}},{"crossPos":{"wall":0}}]}'
    code, out, _ = run(capsys, "path", "compile", "--type", "A1", "--path", loop)
    assert records(out)[0]["word"] == [{"T": "s0"}, {"T": "s0"}]
    f = tmp_path / "loop.json"
    f.write_text(loop)
    code, out, _ = run(capsys, "path", "monodromy", "--type", "A1", "--path", f"@{f}")
    assert code == 0 and records(out)[0]["pure"] is True
    code, _, err = run(capsys, "path", "monodromy", "--type", "A1", "--path",
                       '{"base":{"k":[0]},"tokens":[{"crossPos":{"wall":1}}]}')
    assert code == 2 and json.loads(err)["error"] == "NotALoop"
    refined = '{"base":{"k":[0,0]},"tokens":[{"toPoint":{"P":[1]}},{"fromPoint":{"P":[1],"k":[0,1]}}]}'
    code, out, _ = run(capsys, "path", "functor", "--type", "A2", "--J", "1", "--path", refined)
    rec = records(out)[0]
    assert code == 0 and rec["normal_form"].startswith("Gamma^P{1}")
    code, _, err = run(capsys, "path", "functor", "--type", "A2", "--J", "1", "--path",
                       refined.replace('"P":[1]', '"P":[3]', 1))
    assert code == 2 and json.loads(err)["error"] == "InvalidParabolic"


def test_verify_salvetti(capsys):
    code, out, _ = run(capsys, "verify", "salvetti", "--type", "A2", "--p", "5", "--window", "10")
    recs = records(out)
    checks, summary = recs[:-1], recs[-1]
    assert code == 0 and summary["failures"] == []
    assert checks and all(r["verdict"] == "Equal" for r in checks)
    assert [r["id"] for r in checks] == sorted(r["id"] for r in checks)


def test_verify_hecke_v_spec_is_flagged(capsys):
    code, out, _ = run(capsys, "verify", "hecke", "--type", "A2", "--v-spec", "3/2")
    recs = records(out)
    assert code == 0
    assert all(r["certifying"] is False for r in recs[:-1])
    assert recs[-1]["notes"]


def test_verify_all_deterministic_and_out(capsys, tmp_path):
    out1 = run(capsys, "verify", "all", "--type", "A1", "--seed", "3")[1]
    target = tmp_path / "r.json"
    code, out2, _ = run(capsys, "verify", "all", "--type", "A1", "--seed", "3", "--jobs", "2",
                        "--out", str(target))
    assert code == 0 and out1 == out2
    doc = json.loads(target.read_text())
    assert doc["failures"] == [] and len(doc["checks"]) == len(out1.splitlines()) - 1


def test_exit_one_iff_failures(capsys, monkeypatch):
    from alcovesys import cli
    from alcovesys.report import Report

    def fake(names, cfg, jobs=1):
        rep = Report()
        rep.add("x/1", "salvetti", False, verdict="Unknown")
        return rep

    monkeypatch.setattr(cli, "run_suites", fake)
    code, out, _ = run(capsys, "verify", "salvetti", "--type", "A2")
    assert code == 1
    assert json.loads(out.splitlines()[-1])["failures"] == ["x/1"]
