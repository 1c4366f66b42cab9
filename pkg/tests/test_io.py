import pytest

from minorlab.graphs import GraphError, complete_graph, cycle_graph, petersen_graph
from minorlab.io import (
    parse_edge_list,
    parse_graph6,
    read_edge_list,
    read_graph_file,
    write_edge_list,
    write_roles,
)


def test_edge_list_roundtrip(tmp_path):
    g = petersen_graph()
    path = tmp_path / "g.edges"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    lines = path.read_text().splitlines()
    assert lines[0] == "10 15"
    assert len(lines) == 16


def test_edge_list_rejects_bad_header():
    with pytest.raises(GraphError):
        parse_edge_list("3\n0 1\n")
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")  # promised two edges, gave one
    with pytest.raises(GraphError):
        parse_edge_list("")


def test_edge_list_allows_comments():
    g = parse_edge_list("# a triangle\n3 3\n0 1\n1 2\n0 2\n")
    assert g == complete_graph(3)


def test_graph6_known_strings():
    # 'D~{' is K5, 'Bw' is the triangle, 'Dhc' is C5 (nauty encodings)
    assert parse_graph6("D~{") == complete_graph(5)
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6("Dhc") == cycle_graph(5)


def test_graph6_file_reader(tmp_path):
    p = tmp_path / "corpus.g6"
    p.write_text("Bw\nD~{\n")
    from minorlab.io import read_graph6

    graphs = read_graph6(p)
    assert [g.n for g in graphs] == [3, 5]
    single = tmp_path / "one.g6"
    single.write_text("Bw\n")
    assert read_graph_file(single) == complete_graph(3)


def test_roles_are_tab_separated(tmp_path):
    p = tmp_path / "roles.tsv"
    write_roles({1: "hub[1]", 0: "top[1]"}, p)
    assert p.read_text() == "0\ttop[1]\n1\thub[1]\n"
