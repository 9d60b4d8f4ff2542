import json

import pytest

from leavitt.cli import main

from conftest import FIXTURES_DIR


def fx(name):
    return str(FIXTURES_DIR / f"{name}.lpa")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_analyze_text_output(capsys):
    code, out, err = run(capsys, "analyze", fx("g3"))
    assert code == 0
    assert err == ""
    assert out == (
        "graph: 5 vertices, 5 edges\n"
        "minimal hereditary sets:\n"
        "  W1 = {v2,v3,v4}\n"
        "  W2 = {v5}\n"
        "classes:\n"
        "  I1 = {W1}: support {v2,v3,v4}, Laurent via cycle (b2 b3 b4) of length 3\n"
        "  I2 = {W2}: support {v5}, field\n"
        "annihilator algebra: 4 subsets (2^2)\n"
        "finitary subalgebra: 4 subsets (2^2)\n"
        "center: F[t^-1,t] (+) F\n"
    )


def test_analyze_json_payload(capsys):
    code, report, _ = run_json(capsys, "analyze", fx("g3"))
    assert code == 0
    assert report["format_version"] == "1"
    assert report["command"] == "analyze"
    assert report["graph"] == {"vertices": 5, "edges": 5}
    payload = report["payload"]
    assert payload["k"] == 2
    assert payload["m"] == 2
    assert payload["isomorphism"] == "F[t^-1,t] (+) F"
    assert payload["minimal_sets"] == [["v2", "v3", "v4"], ["v5"]]
    assert payload["classes"][0]["kind"] == "laurent"
    assert payload["classes"][0]["cycle"] == "(b2 b3 b4)"
    assert payload["classes"][1]["kind"] == "field"
    assert payload["classes"][1]["cycle"] is None


def test_analyze_iso_strings(capsys):
    code, report, _ = run_json(capsys, "analyze", fx("g1"))
    assert code == 0 and report["payload"]["isomorphism"] == "F[t^-1,t]"
    code, report, _ = run_json(capsys, "analyze", fx("g6"))
    assert code == 0
    assert report["payload"]["isomorphism"] == "F"
    assert report["payload"]["finitary_size"] == 2
    assert report["payload"]["annihilator_size"] == 4


def test_center_degree_zero(capsys):
    code, out, _ = run(capsys, "center", fx("g3"), "--degree", "0")
    assert code == 0
    assert out == (
        "graph: 5 vertices, 5 edges\n"
        "degree 0 basis (predicted dimension 2):\n"
        "  v1+v2+v3+v4-[d][d]  (idempotent of {v2,v3,v4})\n"
        "  v5+[d][d]  (idempotent of {v5})\n"
    )


def test_center_empty_degree(capsys):
    code, out, _ = run(capsys, "center", fx("g3"), "--degree", "1")
    assert code == 0
    assert "predicted dimension 0" in out
    assert "(none)" in out


def test_center_loop_power(capsys):
    code, out, _ = run(capsys, "center", fx("g1"), "--degree", "2")
    assert code == 0
    assert out == (
        "graph: 1 vertex, 1 edge\n"
        "degree 2 basis (predicted dimension 1):\n"
        "  [c c][@v1]  (cycle (c) to the power 2)\n"
    )


def test_center_requires_degree(capsys):
    code, _, err = run(capsys, "center", fx("g1"))
    assert code == 2
    assert "--degree" in err


def test_center_json_over_prime_field(capsys):
    code, report, _ = run_json(
        capsys, "center", fx("g3"), "--degree", "0", "--field", "fp:97"
    )
    assert code == 0
    assert report["payload"]["field"] == "fp:97"
    assert [row["element"] for row in report["payload"]["basis"]] == [
        "v1+v2+v3+v4+96*[d][d]",
        "v5+[d][d]",
    ]


def test_verify_ok_dimensions(capsys):
    code, report, _ = run_json(capsys, "verify", fx("g3"), "--max-degree", "4")
    assert code == 0
    assert report["payload"]["ok"] is True
    dims = {row["degree"]: row["oracle_dimension"] for row in report["payload"]["degrees"]}
    assert dims == {-4: 0, -3: 1, -2: 0, -1: 0, 0: 2, 1: 0, 2: 0, 3: 1, 4: 0}
    for row in report["payload"]["degrees"]:
        assert row["ok"] is True
        assert row["oracle_dimension"] == row["predicted_dimension"]


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, "verify", fx("g1"), "--max-degree", "3")
    assert code == 0
    body = out.splitlines()
    assert body[-1] == "all degrees OK"
    middle = body[1:-1]
    assert len(middle) == 7
    for line in middle:
        assert line.endswith(": OK")
        assert "oracle dim 1, predicted 1" in line


def test_verify_loop_exit_dimensions(capsys):
    code, report, _ = run_json(capsys, "verify", fx("g2"), "--max-degree", "2")
    assert code == 0
    dims = {row["degree"]: row["oracle_dimension"] for row in report["payload"]["degrees"]}
    assert dims == {-2: 0, -1: 0, 0: 1, 1: 0, 2: 0}


def test_verify_fails_when_bound_is_too_small(capsys):
    # a cap of 0 hides the degree-2 generator c*c, so the oracle comes up short
    code, out, _ = run(capsys, "verify", fx("g1"), "--max-degree", "2", "--max-len", "0")
    assert code == 1
    assert out.splitlines()[-1] == "verification FAILED"
    assert "degree 2: oracle dim 0, predicted 1, bound 0: FAIL" in out


def test_verify_rejects_negative_arguments(capsys):
    code, _, err = run(capsys, "verify", fx("g1"), "--max-degree", "-1")
    assert code == 2 and "--max-degree" in err
    code, _, err = run(capsys, "verify", fx("g1"), "--max-len", "-3")
    assert code == 2 and "--max-len" in err


def test_idempotents_rows(capsys):
    code, out, _ = run(capsys, "idempotents", fx("g3"))
    assert code == 0
    assert out == (
        "graph: 5 vertices, 5 edges\n"
        "finitary annihilator subsets: 4\n"
        "  {} -> 0\n"
        "  {v5} -> v5+[d][d]\n"
        "  {v2,v3,v4} -> v1+v2+v3+v4-[d][d]\n"
        "  {v1,v2,v3,v4,v5} -> v1+v2+v3+v4+v5\n"
    )


def test_idempotents_fork_row(capsys):
    code, out, _ = run(capsys, "idempotents", fx("g4"))
    assert code == 0
    assert "  {w1} -> u+w1-[f][f]\n" in out


def test_idempotents_trivial_family(capsys):
    code, report, _ = run_json(capsys, "idempotents", fx("g6"))
    assert code == 0
    assert report["payload"]["count"] == 2
    assert [row["element"] for row in report["payload"]["subsets"]] == [
        "0",
        "v0+w1+w2",
    ]


def test_output_is_deterministic(capsys):
    for argv in (
        ("analyze", fx("g3")),
        ("analyze", fx("g3"), "--json"),
        ("center", fx("g3"), "--degree", "0", "--json"),
        ("verify", fx("g2"), "--max-degree", "2"),
        ("idempotents", fx("g4"), "--json"),
    ):
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second


def test_missing_file_is_an_input_error(capsys):
    code, out, err = run(capsys, "analyze", str(FIXTURES_DIR / "absent.lpa"))
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_parse_error_reports_line_number(tmp_path, capsys):
    bad = tmp_path / "bad.lpa"
    bad.write_text("vertex v1\nedge e v1 nowhere\n")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 2
    assert out == ""
    assert "line 2" in err


def test_empty_graph_is_rejected(tmp_path, capsys):
    empty = tmp_path / "empty.lpa"
    empty.write_text("# nothing here\n")
    code, _, err = run(capsys, "analyze", str(empty))
    assert code == 2
    assert "no vertices" in err


def test_bad_field_argument(capsys):
    code, _, err = run(capsys, "center", fx("g1"), "--degree", "0", "--field", "fp:4")
    assert code == 2
    assert "prime" in err or "fp:4" in err
    code, _, err = run(capsys, "center", fx("g1"), "--degree", "0", "--field", "real")
    assert code == 2


def test_unknown_command(capsys):
    code, _, _ = run(capsys, "explode", fx("g1"))
    assert code == 2
