import json

from ti_trees.cli import main
from ti_trees.polycert import certificate_from_dict, certify_family, parse_family_line
from ti_trees.verdicts import verdict_from_dict, verdict_to_dict

from conftest import DATA_DIR


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_ti_exit_zero(capsys):
    code, out, _ = run(capsys, "check", "S:7,6,3,1")
    assert code == 0
    assert "transmission irregular" in out


def test_check_not_ti_with_oracle(capsys):
    code, out, _ = run(capsys, "check", "S:1,4,5", "--oracle")
    assert code == 1
    assert "NOT transmission irregular" in out
    assert "oracle: agrees" in out
    assert "a1.1" in out and "a3.3" in out


def test_check_double_spine(capsys):
    code, out, _ = run(capsys, "check", "DS:4;2,1;2,1")
    assert code == 1
    assert "spine-short" in out


def test_check_parse_error(capsys):
    code, _, err = run(capsys, "check", "S:one,two")
    assert code == 2
    assert "malformed" in err


def test_check_json_format(capsys):
    code, out, _ = run(capsys, "--format", "json", "check", "S:1,4,5", "--explain")
    assert code == 1
    data = json.loads(out)
    assert data["spec"] == "S:1,4,5" and data["n"] == 11
    # a verdict rebuilt from the payload matches the printed fields
    verdict = verdict_from_dict(data)
    assert verdict_to_dict(verdict)["reason"] == data["reason"]
    assert any(case["solvable"] for case in data["cases"])


def test_solve_dio_examples(capsys):
    # this command reports JSON unconditionally, for machine cross-checking
    code, out, _ = run(capsys, "solve-dio", 8, 0, 0, 1, 5)
    assert code == 0
    data = json.loads(out)
    assert data["c_star"] == 16
    assert data["divisor"] == {"p": 8, "q": 2, "x": 1, "y": 3}
    assert tuple(data["bruteforce"]) == (1, 3)
    assert data["agree"]

    code, out, _ = run(capsys, "solve-dio", 0, 0, 1, 5, 5)
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert "divisor" not in data and data.get("bruteforce") is None

    code, out, _ = run(capsys, "solve-dio", 0, 0, 0, 3, 3)
    assert code == 0 and json.loads(out)["divisor"]["q"] == 0


def test_solve_dio_invalid(capsys):
    code, _, err = run(capsys, "solve-dio", 1, 2, 0, 1, 1)
    assert code == 2
    assert "parity" in err


def test_enumerate_small_catalog(capsys):
    code, out, _ = run(capsys, "enumerate", "--type", "starlike", "--max-order", 8, "--branches", 3)
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    by_spec = {row["spec"]: row for row in rows}
    assert by_spec["S:3,2,1"]["is_ti"] is True
    assert "S:4,2,1" in by_spec
    # orders never decrease and every row carries a valid verdict
    orders = [row["n"] for row in rows]
    assert orders == sorted(orders)
    for row in rows:
        verdict_from_dict(row)


def test_enumerate_minimal_order(capsys):
    code, out, _ = run(capsys, "enumerate", "--type", "starlike", "--max-order", 4, "--branches", 3)
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [row["spec"] for row in rows] == ["S:1,1,1"]
    assert rows[0]["is_ti"] is False


def test_enumerate_double_with_verify(capsys):
    code, out, err = run(
        capsys,
        "enumerate",
        "--type",
        "double",
        "--max-order",
        8,
        "--branches",
        "2,2",
        "--verify",
    )
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert any(row["spec"] == "DS:1;2,1;2,1" for row in rows)
    assert all(row["oracle_agrees"] for row in rows)
    assert "0 oracle mismatches" in err


def test_enumerate_to_file(tmp_path, capsys):
    out_file = tmp_path / "catalog.ndjson"
    code, _, _ = run(
        capsys,
        "enumerate",
        "--type",
        "starlike",
        "--max-order",
        7,
        "--branches",
        3,
        "--out",
        out_file,
    )
    assert code == 0
    rows = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert rows and all("spec" in row for row in rows)


def test_certify_all_families(capsys):
    code, out, _ = run(
        capsys, "certify", DATA_DIR / "all_families.txt", "--spot-check", 2
    )
    assert code == 0
    assert out.count("certified") == 11
    assert "inapplicable" not in out


def test_certify_remark_family(capsys):
    code, out, _ = run(capsys, "certify", DATA_DIR / "remark_family.txt")
    assert code == 1
    assert "inapplicable" in out


def test_certify_missing_file(capsys):
    code, _, err = run(capsys, "certify", "/nonexistent/families.txt")
    assert code == 2
    assert "error" in err


def test_certify_json_certificates_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "certify", DATA_DIR / "x_families.txt")
    assert code == 0
    data = json.loads(out)
    assert data["all_ok"] and len(data["results"]) == 4
    for result in data["results"]:
        rebuilt = certificate_from_dict(result["certificate"])
        assert rebuilt == certify_family(parse_family_line(result["family"]))


def test_transmissions_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "transmissions", "S:1,2,3")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 7
    values = sorted(entry["transmission"] for entry in data["entries"])
    assert values == [10, 11, 13, 14, 15, 18, 19]


def test_transmissions_respects_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("TI_TREES_MAX_ORACLE_N", "5")
    code, _, err = run(capsys, "transmissions", "S:1,2,3")
    assert code == 2
    assert "oracle cap" in err


def test_oracle_disagreement_distinguished_exit(capsys, monkeypatch):
    # force a wrong theorem-side answer; the oracle cross-check must catch it
    # and exit with the dedicated disagreement code
    import ti_trees.api as api
    from ti_trees.verdicts import Verdict

    monkeypatch.setattr(api, "check_tree", lambda spec: Verdict(True))
    code, out, _ = run(capsys, "check", "S:1,1,1", "--oracle")
    assert code == 3
    assert "DISAGREES" in out
