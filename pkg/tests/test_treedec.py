import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlab.graphs import Graph, complete_graph, cycle_graph, grid_graph, induced_subgraph, path_graph, petersen_graph
from minorlab.treedec import (
    PathDecomposition,
    SizeLimitError,
    TreeDecomposition,
    decomposition_from_json,
    decomposition_to_json,
    exact_pathwidth,
    exact_treewidth,
    heuristic_decomposition,
    restrict_decomposition,
    validate_decomposition,
)


def c4_decomposition() -> TreeDecomposition:
    return TreeDecomposition(Graph(2, [(0, 1)]), {0: frozenset({0, 1, 2}), 1: frozenset({0, 2, 3})})


def test_validate_c4_decomposition():
    d = c4_decomposition()
    assert validate_decomposition(cycle_graph(4), d) is None
    assert d.width == 2


def test_validate_flags_uncovered_edge():
    g = Graph(4, list(cycle_graph(4).edges) + [(1, 3)])
    v = validate_decomposition(g, c4_decomposition())
    assert v is not None and v.kind == "edge-coverage" and "(1,3)" in v.detail


def test_validate_flags_disconnected_trace():
    g = Graph(4, [(0, 1), (2, 3), (0, 3)])
    d = PathDecomposition((frozenset({0, 1}), frozenset({2, 3}), frozenset({0, 3})))
    v = validate_decomposition(g, d)
    assert v is not None and v.kind == "connected-trace" and "vertex 0" in v.detail


@pytest.mark.parametrize(
    "g,width",
    [
        (path_graph(5), 1),
        (Graph(6, [(0, i) for i in range(1, 6)]), 1),  # star
        (cycle_graph(6), 2),
        (grid_graph(3, 3), 3),
        (complete_graph(5), 4),
        (petersen_graph(), 4),
    ],
)
def test_exact_treewidth(g, width):
    w, d = exact_treewidth(g)
    assert w == width
    assert validate_decomposition(g, d) is None
    assert d.width == w


def test_exact_treewidth_cap():
    with pytest.raises(SizeLimitError):
        exact_treewidth(grid_graph(4, 4), cap=12)


def test_empty_graph_width_convention():
    w, d = exact_treewidth(Graph(0))
    assert w == -1 and d.width == -1
    pw, pd = exact_pathwidth(Graph(0))
    assert pw == -1 and pd.width == -1


@pytest.mark.parametrize(
    "g,width",
    [
        (path_graph(5), 1),
        (Graph(5, [(0, i) for i in range(1, 5)]), 1),  # K_{1,4}
        (cycle_graph(6), 2),
        (grid_graph(3, 3), 3),
    ],
)
def test_exact_pathwidth(g, width):
    w, d = exact_pathwidth(g)
    assert w == width
    assert validate_decomposition(g, d) is None


def test_heuristic_examples():
    assert heuristic_decomposition(path_graph(7)).width == 1
    assert heuristic_decomposition(cycle_graph(6)).width == 2
    h = heuristic_decomposition(petersen_graph())
    assert 4 <= h.width <= 5
    assert validate_decomposition(petersen_graph(), h) is None


def test_restrict_identity_and_example():
    d = c4_decomposition()
    same = restrict_decomposition(d, range(4))
    assert same.bags == d.bags
    r = restrict_decomposition(d, {0, 1, 2})
    assert sorted(map(sorted, r.bags.values())) == [[0, 1, 2], [0, 2]]
    assert validate_decomposition(cycle_graph(4), r, vertices={0, 1, 2}) is None


def test_restrict_grid_row_still_validates():
    g = grid_graph(3, 3)
    _, d = exact_treewidth(g)
    row = {0, 1, 2}
    r = restrict_decomposition(d, row)
    assert validate_decomposition(g, r, vertices=row) is None
    assert r.width <= d.width


@st.composite
def random_graphs(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(possible), max_size=len(possible)))
    return Graph(n, [e for e, keep in zip(possible, mask) if keep])


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_exact_vs_heuristic_and_pathwidth(g):
    tw, td = exact_treewidth(g)
    pw, pd = exact_pathwidth(g)
    assert validate_decomposition(g, td) is None
    assert validate_decomposition(g, pd) is None
    assert tw <= heuristic_decomposition(g).width
    assert pw >= tw


@settings(max_examples=30, deadline=None)
@given(random_graphs(), st.data())
def test_restriction_always_validates(g, data):
    keep = data.draw(st.sets(st.integers(0, g.n - 1), max_size=g.n))
    d = heuristic_decomposition(g)
    r = restrict_decomposition(d, keep)
    assert validate_decomposition(g, r, vertices=keep) is None
    assert r.width <= d.width


def test_decomposition_json_roundtrip():
    d = c4_decomposition()
    back = decomposition_from_json(decomposition_to_json(d))
    assert back.bags == d.bags and back.tree == d.tree
