import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlab.graphs import (
    Graph,
    GraphError,
    complete_graph,
    contract_edge,
    cycle_graph,
    disjoint_paths,
    grid_graph,
    local_connectivity,
    path_graph,
    petersen_graph,
    vertex_connectivity,
)
from minorlab.oracles import (
    max_disjoint_xy_paths_by_enumeration,
    min_vertex_cut_by_enumeration,
    min_xy_separator_by_enumeration,
)


def test_graph_rejects_loops_and_bad_endpoints():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_parallel_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_connectivity_examples():
    assert vertex_connectivity(complete_graph(5)) == 4
    assert vertex_connectivity(cycle_graph(6)) == 2
    assert vertex_connectivity(petersen_graph()) == 3


def test_connectivity_conventions():
    assert vertex_connectivity(Graph(2, [])) == 0  # disconnected
    assert vertex_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0
    with pytest.raises(GraphError):
        vertex_connectivity(Graph(1, []))


def test_petersen_connectivity_against_enumeration():
    assert min_vertex_cut_by_enumeration(petersen_graph()) == 3


def test_disjoint_paths_examples():
    k4 = complete_graph(4)
    assert len(disjoint_paths(k4, [0], [3])) == 1
    assert len(disjoint_paths(k4, [0], [3], internal_only=True)) == 3
    assert len(disjoint_paths(cycle_graph(6), [0], [3], internal_only=True)) == 2
    g = grid_graph(3, 3)
    assert len(disjoint_paths(g, [0, 1, 2], [6, 7, 8])) == 3


def test_disjoint_paths_are_valid_xy_paths():
    g = grid_graph(3, 3)
    xs, ys = {0, 1, 2}, {6, 7, 8}
    paths = disjoint_paths(g, xs, ys)
    used = set()
    for p in paths:
        assert p[0] in xs and p[-1] in ys
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        assert not (set(p) & used)
        assert not (set(p[1:]) & xs) and not (set(p[:-1]) & ys)
        used |= set(p)


def test_disjoint_paths_empty_side_raises():
    with pytest.raises(GraphError):
        disjoint_paths(complete_graph(3), [], [1])


def test_contract_edge_examples():
    assert contract_edge(complete_graph(3), (0, 1)) == complete_graph(2)
    assert contract_edge(cycle_graph(4), (0, 1)) == cycle_graph(3)
    with pytest.raises(GraphError):
        contract_edge(cycle_graph(4), (0, 2))


def test_contract_all_petersen_spokes_gives_k5():
    g = petersen_graph()
    for i in reversed(range(5)):  # high ids first so earlier pairs keep their ids
        g = contract_edge(g, (i, i + 5))
    assert g == complete_graph(5)


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(min_value=2, max_value=max_n))
    possible = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(possible), max_size=len(possible)))
    return Graph(n, [e for e, keep in zip(possible, mask) if keep])


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_connectivity_matches_cut_enumeration(g):
    assert vertex_connectivity(g) == min_vertex_cut_by_enumeration(g)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=7), st.data())
def test_menger_duality_on_small_graphs(g, data):
    xs = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    ys = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=3))
    paths = disjoint_paths(g, xs, ys)
    assert len(paths) == min_xy_separator_by_enumeration(g, xs, ys)
    assert len(paths) == max_disjoint_xy_paths_by_enumeration(g, xs, ys)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.data())
def test_contract_edge_invariants(g, data):
    if not g.edges:
        return
    e = data.draw(st.sampled_from(sorted(g.edges)))
    h = contract_edge(g, e)
    assert h.n == g.n - 1
    assert all(u != v for u, v in h.edges)
    assert len(h.edges) == len(set(h.edges))


def test_local_connectivity_requires_nonadjacent():
    with pytest.raises(GraphError):
        local_connectivity(complete_graph(3), 0, 1)
    assert local_connectivity(cycle_graph(5), 0, 2) == 2


def test_path_graph_trivia():
    assert path_graph(1).m == 0
    assert path_graph(4).m == 3
