"""CLI subcommands: report schema, exit codes, output routing."""

import json

import pytest

from jordanlab.cli import main


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


def test_abstract_delta2(capsys):
    code, report, err = run_json(capsys, ["abstract", "--delta", "2"])
    assert code == 0
    assert report["command"] == "abstract"
    assert report["min_abelian_index"] == 2
    assert report["certified_lower_bound"] == 2
    assert all(c["status"] in ("verified", "skipped-budget") for c in report["claims"])
    assert "wall_time_s" in report
    assert err  # human summary on stderr


def test_abstract_delta22(capsys):
    code, report, _ = run_json(capsys, ["abstract", "--delta", "2,2"])
    assert code == 0
    assert report["min_abelian_index"] == 4


def test_abstract_delta1_trivial(capsys):
    code, report, _ = run_json(capsys, ["abstract", "--delta", "1"])
    assert code == 0
    assert report["min_abelian_index"] == 1


def test_abstract_bad_delta():
    assert main(["abstract", "--delta", "2,3"]) == 2


def test_curve_search(capsys):
    code, report, _ = run_json(capsys, ["curve-search", "--n", "2", "--p-max", "5"])
    assert code == 0
    rows = report["rows"]
    assert {(r["p"], r["a"], r["b"]) for r in rows} == {(5, 1, 0), (5, 4, 0)}
    code, report, _ = run_json(capsys, ["curve-search", "--n", "2", "--p-max", "2"])
    assert code == 0 and report["rows"] == []


def test_theta_verify_explicit_curve(capsys):
    code, report, _ = run_json(
        capsys, ["theta-verify", "--n", "2", "--p", "7", "--a", "3", "--b", "0"]
    )
    assert code == 0
    assert report["orientation_sigma"] == -1
    ids = {c["id"]: c for c in report["claims"]}
    for required in (
        "h-of-level-order",
        "mu-layer-closure",
        "structure-isomorphism",
        "theta-group-axioms",
        "commutator-matches-weil",
        "embed-homomorphism",
        "embed-injective",
        "compose-semantics",
    ):
        assert ids[required]["status"] == "verified", required
        assert ids[required]["failures"] == 0
    assert ids["compose-semantics"]["checked"] >= 100


def test_theta_verify_rejects_inadmissible(capsys):
    code = main(["theta-verify", "--n", "3", "--p", "7", "--a", "3", "--b", "0"])
    assert code == 2
    assert "NotAdmissible" in capsys.readouterr().err


def test_theta_verify_level1(capsys):
    code, report, _ = run_json(
        capsys, ["theta-verify", "--n", "1", "--p", "7", "--a", "3", "--b", "0"]
    )
    assert code == 0


def test_nonjordan_table(capsys):
    code, report, _ = run_json(capsys, ["nonjordan", "--n-max", "3", "--p-max", "60"])
    assert code == 0
    rows = report["rows"]
    assert [r["certified_lower_bound"] for r in rows] == [1, 2, 3]
    assert [r["min_abelian_index"] for r in rows] == [1, 2, 3]
    assert rows[1]["p"] is not None and rows[2]["p"] is not None
    ids = {c["id"] for c in report["claims"]}
    assert "bounds-strictly-increasing" in ids
    assert all(c["status"] != "failed" for c in report["claims"])


def test_table_format_goes_to_stdout(capsys):
    code = main(["--format", "table", "abstract", "--delta", "2"])
    out = capsys.readouterr()
    assert code == 0
    assert "min_abelian_index" in out.out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out.out)
