import pytest

from minorlab.gadgets import (
    boundary_cycles,
    build_fan,
    build_ladder,
    build_wall,
    encloses,
    fan_kp_model,
    fan_packing_model,
    subdivide_wall,
)
from minorlab.graphs import GraphError, complete_graph
from minorlab.minors import ABSENT, find_minor, verify_model


def test_ladder_counts():
    lad = build_ladder(3)
    assert lad.graph.n == 6 and lad.graph.m == 7  # 2x2 path edges + 3 rungs
    assert all(lad.graph.has_edge(u, v) for u, v in zip(lad.top, lad.bottom))
    with pytest.raises(GraphError):
        build_ladder(0)


def test_fan_counts_and_hub_adjacency():
    fan = build_fan(3, 2)
    assert fan.graph.n == 8 and fan.graph.m == 13
    for w in fan.hubs:
        assert all(fan.graph.has_edge(w, v) for v in fan.ladder.bottom)
    # hubs are pairwise nonadjacent
    assert not fan.graph.has_edge(*fan.hubs)


def test_fan_k5_model_is_the_canonical_one():
    m = fan_kp_model(5)
    fan = build_fan(5, 2)
    u, v, w = fan.ladder.top, fan.ladder.bottom, fan.hubs
    expected = [
        {v[0], w[0]},
        {v[1], w[1]},
        {v[2]},
        {v[3]},
        {v[4], u[4], u[3], u[2]},
    ]
    assert [set(m.branch_sets[i]) for i in range(5)] == expected
    assert verify_model(m) is None


def test_fan_k4_model_instantiates_the_template():
    m = fan_kp_model(4)
    fan = build_fan(4, 1)
    u, v, w = fan.ladder.top, fan.ladder.bottom, fan.hubs
    expected = [{v[0], w[0]}, {v[1]}, {v[2]}, {v[3], u[3], u[2], u[1]}]
    assert [set(m.branch_sets[i]) for i in range(4)] == expected


def test_fan_k6_model_verifies():
    assert verify_model(fan_kp_model(6)) is None
    with pytest.raises(GraphError):
        fan_kp_model(3)


@pytest.mark.parametrize("p,k", [(5, 1), (5, 2), (4, 3)])
def test_fan_packing_models_disjoint_and_valid(p, k):
    models = fan_packing_model(p, k)
    assert len(models) == k
    used = set()
    for m in models:
        assert verify_model(m) is None
        mine = set().union(*m.branch_sets.values())
        assert not (mine & used)
        used |= mine


def test_fan_packing_k1_matches_single_model():
    assert fan_packing_model(5, 1)[0].branch_sets == fan_kp_model(5).branch_sets


def test_wall_h3_counts():
    w = build_wall(3)
    assert w.graph.n == 9 and w.graph.m == 9  # 6 horizontal + 3 vertical
    vertical = {(1, 1), (1, 3), (2, 2)}
    for (i, j) in vertical:
        assert w.graph.has_edge(w.vertex_at(i, j), w.vertex_at(i + 1, j))
    assert len(w.bricks) == 1


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6, 8])
def test_wall_size_and_degree(r):
    w = build_wall(r)
    assert w.graph.n == r * r
    assert max(w.graph.degree(v) for v in range(w.graph.n)) <= 3


def test_bricks_are_six_cycles():
    w = build_wall(6)
    for brick in w.bricks:
        assert len(brick) == 6
        for i in range(6):
            assert w.graph.has_edge(brick[i], brick[(i + 1) % 6])


def test_boundary_cycle_h4():
    w = build_wall(4)
    cycles = boundary_cycles(w, 1)
    assert cycles[0] == w.boundary
    assert len(set(cycles[0])) == len(cycles[0])
    for i in range(len(cycles[0])):
        assert w.graph.has_edge(cycles[0][i], cycles[0][(i + 1) % len(cycles[0])])


def test_boundary_cycles_h8_concentric():
    w = build_wall(8)
    c1, c2 = boundary_cycles(w, 2)
    assert not (set(c1) & set(c2))
    assert encloses(w, c1, frozenset(c2))
    assert not encloses(w, c2, frozenset(c1))


def test_boundary_cycles_exhaustion_reports_feasible_count():
    w = build_wall(6)
    with pytest.raises(GraphError) as err:
        boundary_cycles(w, 10)
    assert "only 1" in str(err.value)


def test_subdivided_wall():
    w = build_wall(3)
    g, roles = subdivide_wall(w, 2)
    assert g.n == w.graph.n + 2 * w.graph.m
    assert g.m == 3 * w.graph.m
    assert sum(1 for r in roles.values() if r.startswith("sub")) == 2 * w.graph.m


@pytest.mark.parametrize("p", [4, 5, 6])
def test_engine_agrees_fan_has_kp(p):
    fan = build_fan(p, p - 3)
    found = find_minor(fan.graph, complete_graph(p))
    assert found is not ABSENT
    assert verify_model(found) is None
