import json

import pytest

from khsharp.cli import EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_compute_hopf_table(capsys):
    code, out = run(capsys, "compute", "--braid", "s1 s1")
    assert code == EXIT_OK
    assert "d{x1,z2} = ħ{y1^,y2v} + ħ{y1v,y2^}" in out.out
    assert "homology: 0:1, 2:2, 4:1" in out.out


def test_compute_json(capsys):
    code, out = run(capsys, "compute", "--braid", "s1 s1 s1", "--format", "json", "--audit-rules")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["schema"] == "khsharp.compute/1"
    assert data["total_rank"] == 6
    assert len(data["generators"]) == 18
    assert data["d_squared"] is True
    assert {a["rule"] for a in data["audit"]} <= set(data["rules"])
    assert json.loads(json.dumps(data)) == data


def test_dump_diagram(capsys):
    code, out = run(capsys, "compute", "--braid", "s1", "--format", "json", "--dump-diagram")
    assert json.loads(out.out)["diagram"]["schema"] == "khsharp.diagram/1"


@pytest.mark.parametrize("argv", [["compute", "--braid", "s3"],
                                  ["compute", "--braid", "s1", "--n", "3"],
                                  ["compute", "--braid", "s1^y"]])
def test_parse_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_PARSE
    assert out.err.startswith("error:")


def test_n3_allowed(capsys):
    with pytest.warns(UserWarning):
        code, out = run(capsys, "compute", "--braid", "s1", "--n", "3", "--allow-n3")
    assert code == EXIT_OK


def test_verify_stabilize(capsys):
    code, out = run(capsys, "verify", "--braid", "s1 s1", "--stabilize-check", "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["schema"] == "khsharp.verify/1"
    assert data["stabilize"]["passed"] is True


def test_partial_is_reported(capsys):
    code, out = run(capsys, "compute", "--braid", "s1 s2", "--k", "3", "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_UNKNOWN
    assert data["partial"] and data["grading_error"]


def test_flowtree(capsys):
    code, out = run(capsys, "flowtree", "--pattern", "vv->v^", "--format", "json")
    data = json.loads(out.out)
    assert data["schema"] == "khsharp.flowtree/1"
    assert data["count"]["count"] == 1
    code, out = run(capsys, "flowtree", "--triangle", "--m", "2")
    assert "count 1" in out.out
    code, out = run(capsys, "flowtree")
    assert len(out.out.strip().splitlines()) == 16


def test_khovanov_compare(capsys):
    code, out = run(capsys, "khovanov-compare", "--braid", "s1 s1 s1", "--format", "json")
    data = json.loads(out.out)
    assert code == EXIT_OK
    assert data["schema"] == "khsharp.khovanov/1"
    assert data["comparison"]["match"]
