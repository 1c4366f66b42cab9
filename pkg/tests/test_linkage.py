import pytest

from minorlab.generators import cylinder_instance
from minorlab.graphs import Graph, GraphError, cycle_graph, grid_graph, path_graph
from minorlab.linkage import (
    Comb,
    CombExtractionError,
    Linkage,
    SegmentKind,
    comb_segments,
    distinct_linkage_edge_sets,
    extract_comb,
    find_singular_linkages,
    is_orthogonal,
    is_singular,
    check_singular_pathwidth,
    orthogonalize,
    subcomb,
    validate_linkage,
)
from minorlab.treedec import SizeLimitError, exact_pathwidth


def two_rail_ladder(length=4):
    top = tuple(range(length))
    bottom = tuple(range(length, 2 * length))
    edges = list(zip(top, top[1:])) + list(zip(bottom, bottom[1:])) + list(zip(top, bottom))
    g = Graph(2 * length, edges)
    link = Linkage((top, bottom), frozenset({top[0], bottom[0]}), frozenset({top[-1], bottom[-1]}))
    return g, link


def test_validate_linkage_flags_bad_paths():
    g = path_graph(4)
    bad = Linkage(((0, 2),), frozenset({0}), frozenset({2}))
    assert validate_linkage(g, bad).kind == "path"
    shared = Linkage(((0, 1), (1, 2)), frozenset({0, 1}), frozenset({1, 2}))
    assert validate_linkage(g, shared).kind == "disjointness"


def test_spanning_path_is_singular():
    g = path_graph(5)
    link = Linkage(((0, 1, 2, 3, 4),), frozenset({0}), frozenset({4}))
    assert is_singular(g, link)
    assert check_singular_pathwidth(g, link)  # pathwidth 1 <= order 1


def test_cycle_arc_is_not_singular():
    g = cycle_graph(6)
    link = Linkage(((0, 1, 2, 3),), frozenset({0}), frozenset({3}))
    assert not is_singular(g, link)


def test_two_disjoint_spanning_paths_singular():
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    link = Linkage(((0, 1, 2), (3, 4, 5)), frozenset({0, 3}), frozenset({2, 5}))
    assert is_singular(g, link)
    assert check_singular_pathwidth(g, link)  # pathwidth 1 <= order 2


def test_grid_hamiltonian_not_singular_due_to_shortcut():
    g = grid_graph(2, 3)  # vertices 0 1 2 / 3 4 5
    ham = (0, 1, 2, 5, 4, 3)
    link = Linkage((ham,), frozenset({0}), frozenset({3}))
    assert validate_linkage(g, link) is None
    # the direct edge 0-3 yields a second X-Y linkage with another edge set
    assert len(distinct_linkage_edge_sets(g, frozenset({0}), frozenset({3}), limit=2)) == 2
    assert not is_singular(g, link)


def test_singularity_cap():
    g = path_graph(12)
    link = Linkage((tuple(range(12)),), frozenset({0}), frozenset({11}))
    with pytest.raises(SizeLimitError):
        is_singular(g, link, cap=10)


def test_exhaustive_singular_search_respects_pathwidth_bound():
    g = cycle_graph(5)
    found = list(find_singular_linkages(g))
    pw, _ = exact_pathwidth(g)
    for link in found:
        assert is_singular(g, link)
        assert pw <= link.order


def test_comb_of_trivial_paths_when_h_meets_endpoints():
    g, link = two_rail_ladder(4)
    comb = extract_comb(g, link, frozenset(link.x), 2)
    assert set(comb.paths) == {(0,), (4,)}
    assert comb.finals() == link.x


def test_comb_on_subdivided_rung():
    # ladder with one rung subdivided; H is the rung midpoint
    top, bottom, mid = (0, 1, 2, 3), (4, 5, 6, 7), 8
    edges = list(zip(top, top[1:])) + list(zip(bottom, bottom[1:]))
    edges += [(0, 4), (2, 6), (3, 7)]  # plain rungs
    edges += [(1, 8), (8, 5)]  # subdivided rung 1-5
    g = Graph(9, edges)
    link = Linkage((top, bottom), frozenset({0, 4}), frozenset({3, 7}))
    comb = extract_comb(g, link, frozenset({8}), 1)
    assert len(comb.paths) >= 1
    assert all(p[0] == 8 for p in comb.paths)


def test_comb_on_grid_with_three_paths():
    g = grid_graph(3, 5)
    rows = tuple(tuple(r * 5 + c for c in range(5)) for r in range(3))
    link = Linkage(rows, frozenset({0, 5, 10}), frozenset({4, 9, 14}))
    h = frozenset({2, 7, 12})
    comb = extract_comb(g, link, h, 3)
    assert len(comb.paths) >= 3


def test_comb_precondition_failure():
    g, link = two_rail_ladder(3)
    with pytest.raises(GraphError):
        extract_comb(g, link, frozenset({0}), 2)  # only one disjoint H-path exists


def test_segment_kinds_are_tagged():
    g = grid_graph(3, 5)
    rows = tuple(tuple(r * 5 + c for c in range(5)) for r in range(3))
    link = Linkage(rows, frozenset({0, 5, 10}), frozenset({4, 9, 14}))
    segs = comb_segments(link, frozenset({2, 7}), [(2,), (7, 12)])
    kinds = [s.kind for s in segs]
    assert kinds[0] == SegmentKind.TRIVIAL
    assert kinds[2] == SegmentKind.EMPTY or kinds[2] == SegmentKind.TRIVIAL


def test_subcomb_identity_empty_and_single():
    g = grid_graph(3, 5)
    rows = tuple(tuple(r * 5 + c for c in range(5)) for r in range(3))
    link = Linkage(rows, frozenset({0, 5, 10}), frozenset({4, 9, 14}))
    comb = extract_comb(g, link, frozenset({2, 7, 12}), 3)
    assert subcomb(g, comb, [0, 1, 2]).paths == comb.paths
    assert subcomb(g, comb, []).paths == ()
    single = subcomb(g, comb, [1])
    from minorlab.linkage import validate_comb

    assert validate_comb(g, single) is None
    assert len(single.paths) >= 1


def test_orthogonal_spokes_through_one_rim():
    # one rim cycle, three disjoint spokes poking into it from pendants
    rim = list(range(6))
    edges = [(i, (i + 1) % 6) for i in range(6)]
    edges += [(6, 0), (7, 2), (8, 4)]
    g = Graph(9, edges)
    link = Linkage(((6, 0), (7, 2), (8, 4)), frozenset({6, 7, 8}), frozenset({0, 2, 4}))
    assert is_orthogonal(g, link, [tuple(rim)])


def test_orthogonal_rejects_order_violation():
    inst = cylinder_instance(3, 1, seed=5, blob=False, peak=False)
    g = inst.graph
    # build a path visiting ring 2, ring 1, ring 2 again, then out: that
    # revisit breaks contiguity
    m = len(inst.cycles[0])
    p = (2 * m + 0, 1 * m + 0, 1 * m + 1, 2 * m + 1, 2 * m + 2, 1 * m + 2, 0 * m + 2)
    link = Linkage((p,), frozenset({p[0]}), frozenset({p[-1]}))
    assert validate_linkage(g, link) is None
    assert not is_orthogonal(g, link, inst.cycles)


def test_orthogonal_on_clean_cylinder():
    inst = cylinder_instance(4, 3, seed=9, blob=False, peak=False)
    link = Linkage(inst.paths, inst.x, inst.y)
    assert is_orthogonal(inst.graph, link, inst.cycles)


def test_orthogonalize_identity_on_clean_instance():
    inst = cylinder_instance(4, 2, seed=1, blob=False, peak=False)
    link = Linkage(inst.paths, inst.x, inst.y)
    res = orthogonalize(inst.graph, inst.cycles, link, 2, plane_vertices=inst.inner_vertices)
    assert not res.rerouted
    assert res.linkage.paths == link.paths


def test_orthogonalize_eliminates_injected_peak():
    inst = cylinder_instance(5, 2, seed=11, blob=False, peak=True)
    link = Linkage(inst.paths, inst.x, inst.y)
    assert not is_orthogonal(inst.graph, link, inst.cycles[len(inst.cycles) - 2:])
    res = orthogonalize(inst.graph, inst.cycles, link, 2, plane_vertices=inst.inner_vertices)
    assert res.rerouted
    assert is_orthogonal(inst.graph, res.linkage, res.cycles)
    assert res.linkage.y == inst.y
    assert res.x_new <= frozenset(res.cycles[-1])


def test_orthogonalize_needs_enough_cycles():
    inst = cylinder_instance(3, 2, seed=2)
    link = Linkage(inst.paths, inst.x, inst.y)
    with pytest.raises(GraphError):
        orthogonalize(inst.graph, inst.cycles, link, 2, plane_vertices=inst.inner_vertices)
