"""Command-line verbs, exit codes, and report schemas."""

import json

import pytest
from click.testing import CliRunner

from dimon.cli import main
from dimon.presentations import RelationFamily, build_relations


@pytest.fixture
def runner():
    return CliRunner()


def test_build(runner):
    res = runner.invoke(main, ["build", "--family", "odi", "--n", "5"])
    assert res.exit_code == 0
    assert "size 104" in res.output


def test_build_oci_degree_one(runner):
    res = runner.invoke(main, ["build", "--family", "oci", "--n", "1"])
    assert res.exit_code == 0
    assert "size 2" in res.output


def test_build_out_and_dot(runner, tmp_path):
    out = tmp_path / "m.json"
    dot = tmp_path / "m.dot"
    res = runner.invoke(
        main,
        ["build", "--family", "opdi", "--n", "4", "--out", str(out), "--dot", str(dot)],
    )
    assert res.exit_code == 0
    data = json.loads(out.read_text())
    assert len(data["elements"]) == 77
    assert dot.read_text().startswith("digraph")


def test_build_rejects_unknown_family(runner):
    res = runner.invoke(main, ["build", "--family", "nope", "--n", "4"])
    assert res.exit_code == 2


def test_verify_presentation_pass(runner):
    res = runner.invoke(main, ["verify-presentation", "--family", "R", "--n", "4"])
    assert res.exit_code == 0
    assert res.output.strip() == "PASS, reports 44 = 44"


def test_verify_presentation_json(runner):
    res = runner.invoke(
        main, ["verify-presentation", "--family", "Vbar", "--n", "4", "--json"]
    )
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["verdict"] == "PASS"
    assert data["classes"] == data["size"] == 71
    assert data["monoid"] == "mdi"


def test_verify_presentation_indeterminate(runner):
    res = runner.invoke(
        main,
        ["verify-presentation", "--family", "R", "--n", "5", "--max-classes", "20"],
    )
    assert res.exit_code == 1
    assert "INDETERMINATE" in res.output


def test_enumerate_file(runner, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(build_relations(RelationFamily.Q, 4).to_json_dict()))
    res = runner.invoke(main, ["enumerate", "--presentation", str(path)])
    assert res.exit_code == 0
    assert "complete, 77 classes" in res.output
    res = runner.invoke(
        main, ["enumerate", "--presentation", str(path), "--max-classes", "9", "--json"]
    )
    assert res.exit_code == 1
    data = json.loads(res.output)
    assert data["result"]["status"] == "capped"
    assert data["result"]["max_classes"] == 9


def test_check_relations(runner):
    res = runner.invoke(main, ["check-relations", "--family", "Q", "--n", "6"])
    assert res.exit_code == 0
    assert "all 55 relations hold" in res.output
    res = runner.invoke(main, ["check-relations", "--family", "VbarPrime", "--n", "8", "--json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["all_hold"] is True


def test_forms(runner):
    for family, count in (("R", 44), ("Vbar", 71), ("Q", 77)):
        res = runner.invoke(main, ["forms", "--family", family, "--n", "4"])
        assert res.exit_code == 0
        assert f"PASS, {count} forms" in res.output
    res = runner.invoke(main, ["forms", "--family", "U", "--n", "4"])
    assert res.exit_code == 2


def test_tietze(runner):
    res = runner.invoke(main, ["tietze", "--chain", "odi", "--n", "4"])
    assert res.exit_code == 0
    assert "PASS, class count preserved at 44" in res.output
    res = runner.invoke(main, ["tietze", "--chain", "opdi", "--n", "4", "--json"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["verdict"] == "PASS"
    assert [step["classes"] for step in data["steps"]] == [77, 77, 77, 77]
    assert [step["letters"] for step in data["steps"]] == [6, 5, 4, 3]


def test_green(runner):
    res = runner.invoke(main, ["green", "--family", "di", "--n", "4", "--json"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data == {
        "verb": "green", "family": "di", "n": 4, "size": 97,
        "r_classes": 16, "l_classes": 16, "h_classes": 54, "d_classes": 6,
    }


def test_formulas_single_row(runner):
    res = runner.invoke(main, ["formulas", "--n-range", "4..4"])
    assert res.exit_code == 0
    row = res.output.splitlines()[0]
    for piece in ("|R|=36", "|V|=32", "|Vbar|=38", "|VbarPrime|=35",
                  "|Q|=25", "|QPrime|=18", "|U|=18", "|Q0|=16",
                  "|ODI|=44", "|MDI|=71", "|OCI|=38"):
        assert piece in row
    assert "cross-checks ok" in res.output


def test_formulas_range_json(runner):
    res = runner.invoke(main, ["formulas", "--n-range", "4..6", "--json"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["verdict"] == "PASS"
    assert [row["n"] for row in data["rows"]] == [4, 5, 6]
    assert data["rows"][1]["cardinalities"]["mdi"] == {
        "formula": 182, "built": 182, "ok": True,
    }
    assert data["rows"][0]["relation_counts"]["VbarPrime"] == 35


def test_formulas_bad_range(runner):
    assert runner.invoke(main, ["formulas", "--n-range", "abc"]).exit_code == 2
    assert runner.invoke(main, ["formulas", "--n-range", "6..4"]).exit_code == 2
