import json

import pandas as pd
import pytest
from hypothesis import given

from conftest import graphs
from data.models import Graph, Triangle
from data.repositories import EdgeListRepository, ReportRepository, load_edge_list, save_edge_list
from errors import ConfigurationError, GraphFormatError


def parse(text):
    return EdgeListRepository().parse(text.splitlines())


def test_parse_with_comments():
    g = parse("# a triangle\nn 4\n0 1\n1 2  # middle\n\n2 0\n")
    assert g == Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])


def test_parse_header_with_edge_count():
    assert parse("3 2\n0 1\n1 2\n").m == 2
    with pytest.raises(GraphFormatError):
        parse("3 3\n0 1\n1 2\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("n 3\n0 0\n", 2),
        ("n 3\n0 1\n0 3\n", 3),
        ("n 3\n0 1\n1 0\n", 3),
        ("n 3\n0 1 2\n", 2),
        ("n 3\n0 x\n", 2),
        ("nodes 3\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse(text)
    assert info.value.line_number == line


def test_missing_header():
    with pytest.raises(GraphFormatError):
        parse("# nothing\n")


@given(graphs())
def test_dumps_parses_back(g):
    repo = EdgeListRepository()
    assert repo.parse(repo.dumps(g).splitlines()) == g


def test_file_round_trip(tmp_path, k4):
    path = tmp_path / "k4.txt"
    save_edge_list(k4, path)
    assert load_edge_list(path) == k4


def test_unreadable_files_are_format_errors(tmp_path):
    with pytest.raises(GraphFormatError) as info:
        load_edge_list(tmp_path / "missing.txt")
    assert info.value.line_number == 0

    binary = tmp_path / "binary.txt"
    binary.write_bytes(b"\xff\xfe n 3\n")
    with pytest.raises(GraphFormatError, match="not UTF-8"):
        load_edge_list(binary)


def test_report_repository(tmp_path):
    repo = ReportRepository(tmp_path / "out")
    report = repo.save_report("r.json", {"b": 1, "a": [1, 2]})
    assert json.loads(report.read_text()) == {"a": [1, 2], "b": 1}

    table = repo.save_table("t.csv", pd.DataFrame([{"n": 4, "rounds": 2}]))
    assert pd.read_csv(table).to_dict(orient="records") == [{"n": 4, "rounds": 2}]

    triangles = repo.save_triangles("t.txt", [Triangle(1, 2, 3), Triangle(0, 1, 2)])
    assert triangles.read_text() == "0 1 2\n1 2 3\n"


def test_unwritable_output_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ConfigurationError):
        ReportRepository(blocker / "sub").save_report("r.json", {})
