import networkx as nx
import pytest

from minorlab.graphs import Graph


def nx_to_graph(ag) -> Graph:
    mapping = {v: j for j, v in enumerate(sorted(ag.nodes()))}
    return Graph(ag.number_of_nodes(), [(mapping[u], mapping[v]) for u, v in ag.edges()])


@pytest.fixture(scope="session")
def atlas_connected() -> list[Graph]:
    """All 996 connected graphs on at most 7 vertices, one per isomorphism
    class (canonical atlas order)."""
    out = []
    for ag in nx.graph_atlas_g():
        if ag.number_of_nodes() >= 1 and nx.is_connected(ag):
            out.append(nx_to_graph(ag))
    assert len(out) == 996
    return out
