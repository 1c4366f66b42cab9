from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlab.erdos_posa import (
    HittingSet,
    Packing,
    certificate_from_json,
    certificate_to_json,
    ep_solve,
    f_w,
    required_connectivity,
    tight_connectivity,
    verify_certificate,
)
from minorlab.generators import random_partial_3tree
from minorlab.graphs import GraphError, complete_graph, disjoint_union, induced_subgraph, path_graph
from minorlab.minors import ABSENT, find_minor
from minorlab.oracles import minor_by_partitions
from minorlab.treedec import heuristic_decomposition, validate_decomposition


def test_f_w_base_and_unfolding():
    assert f_w(7, 5, 1) == 0
    assert f_w(7, 5, 2) == 7
    assert f_w(7, 5, 4) == 7 * 7  # 2(2(2*0+w)+w)+w
    with pytest.raises(GraphError):
        f_w(7, 5, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.integers(1, 12))
def test_f_w_closed_form(w, k):
    assert f_w(w, 4, k) == (2 ** (k - 1) - 1) * w


def test_connectivity_formulas():
    assert required_connectivity(5, 3) == 90
    assert required_connectivity(3, 1) == 56
    assert required_connectivity(7, 2) == 120
    assert tight_connectivity(5, 5) == 3
    assert tight_connectivity(5, 10) == 13
    assert tight_connectivity(6, 6) == 9
    with pytest.raises(GraphError):
        tight_connectivity(4, 10)


def test_packing_on_disjoint_cliques():
    g = disjoint_union([complete_graph(5)] * 3)
    d = heuristic_decomposition(g)
    cert = ep_solve(g, d, 5, 3)
    assert isinstance(cert, Packing) and len(cert.models) == 3
    assert verify_certificate(g, cert, 5, 3, d.width + 1) is None


def test_tree_gets_empty_hitting_set():
    g = path_graph(9)
    d = heuristic_decomposition(g)
    cert = ep_solve(g, d, 3, 2)
    assert isinstance(cert, HittingSet) and cert.vertices == frozenset()
    assert verify_certificate(g, cert, 3, 2, d.width + 1) is None


def test_k6_hitting_set_within_bound():
    g = complete_graph(6)
    d = heuristic_decomposition(g)
    w = d.width + 1
    cert = ep_solve(g, d, 5, 2)
    assert isinstance(cert, HittingSet)
    assert len(cert.vertices) <= f_w(w, 5, 2)
    assert verify_certificate(g, cert, 5, 2, w) is None
    # removing any 2 vertices of K6 leaves K4, so 2 deletions always suffice
    for pair in combinations(range(6), 2):
        rest, _ = induced_subgraph(g, set(range(6)) - set(pair))
        assert minor_by_partitions(rest, complete_graph(5)) is None


def test_rejects_invalid_decomposition_or_width():
    g = complete_graph(4)
    d = heuristic_decomposition(g)
    with pytest.raises(GraphError):
        ep_solve(g, d, 3, 1, w=d.width)  # width not < w
    from minorlab.treedec import TreeDecomposition
    from minorlab.graphs import Graph

    bad = TreeDecomposition(Graph(1), {0: frozenset({0})})
    with pytest.raises(GraphError):
        ep_solve(g, bad, 3, 1)


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_partial_3tree_certificates_verify(seed, k):
    g, d = random_partial_3tree(25, seed)
    assert validate_decomposition(g, d) is None
    assert d.width <= 3
    cert = ep_solve(g, d, 4, k)
    assert verify_certificate(g, cert, 4, k, d.width + 1) is None


def test_certificate_json_roundtrip():
    g = disjoint_union([complete_graph(4)] * 2)
    d = heuristic_decomposition(g)
    cert = ep_solve(g, d, 4, 2)
    text = certificate_to_json(cert, 4, 2, d.width + 1, seed=0)
    back, p, k, w = certificate_from_json(text, g)
    assert (p, k, w) == (4, 2, d.width + 1)
    assert verify_certificate(g, back, p, k, w) is None
    assert certificate_to_json(back, p, k, w, seed=0) == text


def test_verify_rejects_tampered_hitting_set():
    g = complete_graph(6)
    d = heuristic_decomposition(g)
    cert = ep_solve(g, d, 5, 2)
    assert isinstance(cert, HittingSet)
    tampered = HittingSet(frozenset(list(cert.vertices)[:1]), cert.bound)
    v = verify_certificate(g, tampered, 5, 2, d.width + 1)
    assert v is not None and v.kind == "hitting-incomplete"


def test_verify_rejects_overlapping_packing():
    g = complete_graph(5)
    d = heuristic_decomposition(g)
    cert = ep_solve(g, d, 5, 1)
    assert isinstance(cert, Packing)
    doubled = Packing(cert.models + cert.models)
    v = verify_certificate(g, doubled, 5, 2, d.width + 1)
    assert v is not None and v.kind == "packing-disjointness"
