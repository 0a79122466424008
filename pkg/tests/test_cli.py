from __future__ import annotations

import json
import subprocess
import sys

import pytest

from mrrsph.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_PARSE, dump_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_g2_text(capsys):
    code, out, _ = run(capsys, "classify", "--group", "G2")
    assert "A2 " in out and "A1+A1~" in out
    # the long-root Levi is reported as disagreeing with the table
    assert code == EXIT_FAIL and "A1+T1" in out


def test_classify_f4_json(capsys):
    code, out, _ = run(capsys, "classify", "--group", "F4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"]
    assert data["maximal_non_spherical"] == ["A1+A1+B2", "A1~+A3", "A2+A2~", "B3+T1", "C3+T1", "D4"]
    assert dump_json(data) == out


def test_classify_a1(capsys):
    code, out, _ = run(capsys, "classify", "--group", "A1")
    assert code == EXIT_OK and "T1" in out


def test_classify_rank_cap(capsys):
    code, _, _ = run(capsys, "classify", "--group", "E8", "--rank-cap", "4")
    assert code == EXIT_CAP


def test_classify_rank_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("MRRSPH_RANK_CAP", "3")
    code, _, _ = run(capsys, "classify", "--group", "B4")
    assert code == EXIT_CAP


@pytest.mark.parametrize("argv", [["classify", "--group", "Z9"], ["complement", "--group", "F4", "--h", "A9"], ["frobnicate"]])
def test_parse_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_PARSE


def test_unknown_label_suggests(capsys):
    code, _, err = run(capsys, "complement", "--group", "F4", "--h", "A2A3")
    assert code == EXIT_PARSE and "did you mean" in err and "A1~+A3" in err


def test_complement_by_recipe(capsys):
    code, out, _ = run(capsys, "complement", "--group", "F4", "--remove", "ext:1", "node:3", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["subgroup"]["path"] == ["ext:1", "node:3"]
    assert dump_json(data) == out


def test_dimcrit_examples(capsys):
    code, out, _ = run(capsys, "dimcrit", "--group", "G2", "--x", "T2", "--levi", "T2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["status"] == "triggered" and data["report"]["value"] == "1/1"
    code, out, _ = run(capsys, "dimcrit", "--group", "A2", "--x", "A1T1", "--levi", "T2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["status"] == "absent"
    code, out, _ = run(capsys, "dimcrit", "--group", "F4", "--x", "A2A2~", "--levi-nodes", "2,3", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["status"] == "triggered"


def test_dimcrit_bad_levi(capsys):
    code, _, err = run(capsys, "dimcrit", "--group", "G2", "--x", "T2", "--levi", "B2")
    assert code == EXIT_PARSE and "Levi types" in err


def test_finite_examples(capsys):
    code, out, _ = run(capsys, "finite", "--type", "A2", "--q", "2,3", "--x", "T", "--p", "B", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and rows[0]["direct"] < rows[1]["direct"]
    code, out, _ = run(capsys, "finite", "--type", "B2", "--q", "2", "--x", "B", "--p", "B", "--format", "csv")
    header, line = out.strip().splitlines()
    assert header == "type,q,X,P,direct,charsum,grouped,lower,upper"
    assert line.split(",")[4] == "8"
    code, out, _ = run(capsys, "finite", "--type", "A2", "--q", "2", "--x", "G", "--p", "B", "--format", "json")
    assert json.loads(out)["rows"][0]["direct"] == 1


def test_finite_cap(capsys):
    code, _, _ = run(capsys, "finite", "--type", "B2", "--q", "5", "--x", "T")
    assert code == EXIT_CAP


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--group", "F4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and {e["label"] for e in data["entries"]} == {"B4", "A1+C3"}


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "3,7")
    assert code == EXIT_OK and out.count("[PASS]") == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mrrsph", "table", "--group", "G2"], capture_output=True, text=True)
    assert res.returncode == 0 and "A2" in res.stdout
