import json
from pathlib import Path

import pytest

from endograph import exit_codes
from endograph.algebra.codec import algebra_to_json
from endograph.main import main

from conftest import sphere_model

P2 = "v1 v2\n"
P3 = "v1 v2\nv2 v3\n"


@pytest.fixture
def write(tmp_path: Path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_build(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "build", write("p2.graph", P2))
    assert code == exit_codes.OK
    assert report["ok"]
    assert report["graph"] == "p2"
    assert report["formal_dimension"] == 368
    assert [gen["name"] for gen in report["generators"]][:5] == ["x1", "x2", "y1", "y2", "y3"]
    assert len(report["algebra_hash"]) == 64


def test_build_is_reproducible(write, capsys: pytest.CaptureFixture[str]) -> None:
    path = write("p2.graph", P2)
    main(["build", path])
    first = capsys.readouterr().out
    main(["build", path])
    assert capsys.readouterr().out == first


def test_variant_flag(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "build", write("p2.graph", P2), "--variant", "1/2", "1")
    assert code == exit_codes.OK
    assert report["variant"] == ["1/2", "1"]


@pytest.mark.parametrize(
    ("text", "extra", "code", "error"),
    [
        ("v1 v2\nv3 v4\n", [], exit_codes.VALIDATION, "precondition_error"),
        ("v1 v2 v3\n", [], exit_codes.PARSE, "parse_error"),
        ("v1 v1\n", [], exit_codes.VALIDATION, "validation_error"),
        (P2, ["--variant", "0", "0"], exit_codes.VALIDATION, "validation_error"),
        (P2, ["--variant", "x", "1"], exit_codes.VALIDATION, "validation_error"),
        (P2, ["--monomial-budget", "0"], exit_codes.VALIDATION, "validation_error"),
    ],
)
def test_errors(write, capsys: pytest.CaptureFixture[str], text: str, extra: list[str], code: int, error: str) -> None:
    found, report = run(capsys, "build", write("bad.graph", text), *extra)
    assert found == code == report["exit_code"]
    assert report["error"] == error
    assert report["message"]


def test_vertex_budget(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "aut", write("p3.graph", P3), "--vertex-budget", "2")
    assert code == exit_codes.RESOURCE
    assert report["error"] == "resource_limit"


def test_missing_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "aut", str(tmp_path / "nothing.graph"))
    assert code == exit_codes.PARSE
    assert report["error"] == "parse_error"


def test_unknown_command() -> None:
    with pytest.raises(SystemExit):
        main(["classify"])


def test_aut(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "aut", write("p3.graph", P3))
    assert code == exit_codes.OK
    assert report["order"] == 2
    assert sorted(report["permutations"]) == ["id", "v1->v3,v3->v1"]
    assert report["generators"] == ["(1 3)"]


def test_frucht_round_trip(write, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = tmp_path / "z2.graph"
    code = main(["frucht", write("z2.group", "perms\n(1 2)\n"), "--format", "text", "--out", str(out)])
    assert code == exit_codes.OK
    assert capsys.readouterr().out == ""
    code, report = run(capsys, "aut", str(out))
    assert code == exit_codes.OK
    assert report["order"] == 2


def test_frucht_report(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "frucht", write("z3.group", "perms\n(1 2 3)\n"))
    assert code == exit_codes.OK
    assert report["group_order"] == 3
    assert report["verified"]
    assert report["vertices"] == len({v for line in report["graph"].splitlines() for v in line.split()})


def test_text_format(write, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["build", write("p2.graph", P2), "--format", "text"])
    assert code == exit_codes.OK
    text = capsys.readouterr().out
    assert "formal dimension: 368" in text
    assert "structure: passed" in text
    assert "ellipticity: valid" in text


def test_text_format_of_errors(write, capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["build", write("bad.graph", "v1 v2 v3\n"), "--format", "text"])
    assert code == exit_codes.PARSE
    assert "parse_error" in capsys.readouterr().out


def test_unwritable_output(write, tmp_path: Path) -> None:
    assert main(["aut", write("p3.graph", P3), "--out", str(tmp_path)]) == exit_codes.VALIDATION


def test_tilde_of_an_algebra_file(write, capsys: pytest.CaptureFixture[str]) -> None:
    algebra = write("sphere.json", json.dumps(algebra_to_json(sphere_model())))
    code, report = run(
        capsys,
        "tilde",
        "--algebra",
        algebra,
        "--cocycle",
        '[["1", "1", [["a", 1]]]]',
        "--witness",
        '[["1", "1", [["b", 1]]]]',
    )
    assert code == exit_codes.OK
    assert report["y_degree"] == 1
    assert report["fundamental_rep_verified"]
    assert not report["minimal"]
    assert report["cohomology"] == [1, 0, 0, 1, 0, 0, 0]


def test_tilde_needs_a_cocycle(write, capsys: pytest.CaptureFixture[str]) -> None:
    algebra = write("sphere.json", json.dumps(algebra_to_json(sphere_model())))
    code, report = run(capsys, "tilde", "--algebra", algebra)
    assert code == exit_codes.VALIDATION


def test_tilde_with_a_malformed_cocycle(write, capsys: pytest.CaptureFixture[str]) -> None:
    algebra = write("sphere.json", json.dumps(algebra_to_json(sphere_model())))
    code, report = run(capsys, "tilde", "--algebra", algebra, "--cocycle", "[[1, 1")
    assert code == exit_codes.PARSE


def test_tilde_refuses_a_boundary(write, capsys: pytest.CaptureFixture[str]) -> None:
    algebra = write("sphere.json", json.dumps(algebra_to_json(sphere_model())))
    code, report = run(capsys, "tilde", "--algebra", algebra, "--cocycle", '[["1", "1", [["a", 2]]]]')
    assert code == exit_codes.VALIDATION
    assert report["error"] == "precondition_error"
    assert "boundary" in report["message"]


def test_tilde_of_a_graph(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "tilde", "--graph", write("p2.graph", P2))
    assert code == exit_codes.OK
    assert report["y_degree"] == 367
    assert report["formal_dimension"] == 735
    assert report["cocycle"] is None
    assert report["algebra"] is None
    assert report["inflexible"]
    assert report["orientation_reversing"] == []


def test_endos(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "endos", write("p2.graph", P2), "--trace", "--seed", "3")
    assert code == exit_codes.OK
    assert report["class_count"] == 5
    assert report["group_order"] == 2
    assert report["constant_classes"] == ["f0", "f1"]
    assert len(report["collapse_classes"]) == 1
    assert report["inflexible"]
    assert set(report["degrees"].values()) <= {0, 1}
    assert report["tree_complete"]
    assert report["case_tree"] is not None
    assert report["seed"] == 3
    assert report["iso_witness"]["id"] == "()"


@pytest.mark.slow
def test_compare(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "compare", write("p3.graph", P3), write("k3.graph", "v1 v2\nv2 v3\nv1 v3\n"))
    assert code == exit_codes.OK
    assert report["distinguished"]
    assert {"class_count", "equivalence_order"} <= set(report["differing"])
    assert report["first"]["formal_dimension"] == report["second"]["formal_dimension"] == 448


@pytest.mark.slow
def test_realize_z2(write, capsys: pytest.CaptureFixture[str]) -> None:
    code, report = run(capsys, "realize", write("z2.group", "perms\n(1 2)\n"))
    assert code == exit_codes.OK
    assert report["complete"]
    assert report["equivalence_order"] == 2
    assert report["inflexible"]
