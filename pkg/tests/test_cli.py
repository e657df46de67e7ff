import json

import pytest

from src.atomfib import bench as bench_module
from src.atomfib.cli import main
from src.atomfib.config import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE
from src.atomfib.errors import ParseError
from src.atomfib.intlin import IntMat
from src.atomfib.matrixio import (
    format_fiber_set,
    format_listing,
    format_matrix,
    parse_matrix,
    parse_matrix_text,
    parse_vector,
    to_json,
)


@pytest.fixture
def write(tmp_path):
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


@pytest.fixture
def two_parts(write) -> str:
    return write("parts.mat", "1 2\n2 3\n")


@pytest.fixture
def one_part(write) -> str:
    return write("unit.mat", "1 1\n1\n")


# -- matrix input -------------------------------------------------------------------


def test_parse_matrix_text(twisted_cubic):
    assert parse_matrix_text("2 4\n3 2 1 0\n0 1 2 3\n") == twisted_cubic
    assert parse_matrix_text("# parts\n\n1 2\n\n3 4\n").rows == ((3, 4),)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("2 2\n1 2\n", 3, None),
        ("1 2\n1 x\n", 2, 3),
        ("1 3\n1 2\n", 2, None),
        ("1 2 3\n1 2\n", 1, 1),
    ],
)
def test_parse_errors_point_at_the_problem(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_matrix_text(text)
    assert info.value.line == line
    assert info.value.column == column


def test_parse_empty_input():
    with pytest.raises(ParseError):
        parse_matrix_text("# nothing\n")


def test_parse_matrix_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        parse_matrix(tmp_path / "missing.mat")


def test_parse_vector():
    assert parse_vector("8,7") == (8, 7)
    assert parse_vector("8 7") == (8, 7)
    assert parse_vector(" -1, 2 ") == (-1, 2)
    with pytest.raises(ParseError):
        parse_vector("8,x")
    with pytest.raises(ParseError):
        parse_vector("")


def test_format_matrix_round_trip(twisted_cubic):
    text = format_matrix(twisted_cubic)
    assert text == "2 4\n3 2 1 0\n0 1 2 3\n"
    assert parse_matrix_text(text) == twisted_cubic


def test_format_listing_and_fiber_set():
    listing = {"rhs": [2, 4], "order": 4, "finite": True, "elements": [[0, 0, 2, 0], [0, 1, 0, 1]]}
    assert format_listing(listing) == "b: 2 4\n0 0 2 0\n0 1 0 1"
    assert format_listing({"rhs": [1], "order": 0, "finite": False, "min_reps": [[1, 0]]}) == "b: 1\n1 0"
    data = {
        "provenance": "project-and-lift",
        "count": 1,
        "order": 1,
        "rhs_domain": "lattice",
        "neutral": False,
        "rhs": [[1]],
    }
    assert format_fiber_set(data).splitlines() == [
        "# project-and-lift: 1 atomic fibers of order 1 (rhs domain: lattice, neutral rhs counted: no)",
        "(1)",
    ]
    assert json.loads(to_json(data)) == data


# -- command line -------------------------------------------------------------------


def test_atomic_text(two_parts, capsys):
    assert main(["atomic", two_parts]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# project-and-lift: 3 atomic fibers of order 2")
    assert "b: 6\n0 2\n3 0" in out


def test_atomic_json(two_parts, capsys):
    assert main(["atomic", two_parts, "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 3
    assert data["rhs"] == [[2], [3], [6]]
    assert data["fibers"][2]["elements"] == [[0, 2], [3, 0]]


def test_atomic_trace(two_parts, capsys):
    assert main(["atomic", two_parts, "--trace"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "refined" in err and "atomic" in err


def test_extended_and_partial(one_part, capsys):
    assert main(["extended", one_part, "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["rhs"] == [[-1], [1]]
    assert main(["partial", one_part, "--order", "1", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["rhs"] == [[1]]


def test_decompose(two_parts, capsys):
    assert main(["decompose", two_parts, "--rhs", "12", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["atoms"] == [{"rhs": [6], "mult": 2}]
    assert data["residual"] == [0]
    assert data["incomplete"] is False


def test_convex(two_parts, capsys):
    assert main(["convex", two_parts, "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 3
    assert data["fibers"][2] == {"rhs": [6], "vertices": [[0, 2], [3, 0]]}


def test_oracle(two_parts, capsys):
    assert main(["oracle", two_parts, "--box", "12"]) == EXIT_OK
    assert capsys.readouterr().out.split() == ["(2)", "(3)", "(6)"]


def test_monoid_refinements(one_part, write, capsys):
    monoid = write("z_plus.mat", "1 1\n1\n")
    assert main(["atomic", one_part, "--rhs-monoid", monoid, "--monoid-refine", "cover"]) == EXIT_BUDGET
    assert main(["atomic", one_part, "--rhs-monoid", monoid, "--monoid-refine", "hilbert", "--json"]) == EXIT_OK
    out = capsys.readouterr().out
    data = json.loads(out[out.index("{"):])
    assert data["rhs_domain"] == "monoid"
    assert data["rhs"] == [[1]]


def test_monoid_default_refinement(one_part, write, capsys, monkeypatch):
    monkeypatch.delenv("ATOMFIB_MONOID_REFINE", raising=False)
    monoid = write("z_plus.mat", "1 1\n1\n")
    assert main(["atomic", one_part, "--rhs-monoid", monoid, "--json"]) == EXIT_OK
    out = capsys.readouterr().out
    assert json.loads(out[out.index("{"):])["rhs"] == [[1]]


def test_exit_codes(two_parts, write, capsys):
    assert main(["atomic", write("bad.mat", "1 2\n2 x\n")]) == EXIT_PARSE
    assert main(["atomic", two_parts, "--budget", "0"]) == EXIT_PARSE
    assert main(["atomic", two_parts, "--budget", "1"]) == EXIT_BUDGET
    assert main(["atomic", two_parts + ".missing"]) == 1
    assert main(["decompose", two_parts, "--rhs", "1,2"]) == 1
    err = capsys.readouterr().err
    assert "parse error" in err
    assert "budget exceeded" in err


def test_bench_mismatch_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(bench_module, "run_case", lambda case, budget=None: 0)
    assert main(["bench", "steinberger"]) == EXIT_MISMATCH
    monkeypatch.setattr(bench_module, "run_case", lambda case, budget=None: case.expected)
    assert main(["bench", "steinberger", "--json"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert [r["count"] for r in rows] == [31, 79]


def test_matrix_from_fixture_file(write):
    assert parse_matrix(write("m.mat", "2 2\n1 0\n0 1\n")) == IntMat.from_rows([(1, 0), (0, 1)])
