import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minorlab.erdos_posa import tight_connectivity
from minorlab.graphs import GraphError, internally_disjoint_path_count, vertex_connectivity
from minorlab.surface import euler_genus, torus_grid, trace_faces
from minorlab.tightness import (
    boost_degrees,
    build_tight_construction,
    check_disk_fan_property,
    genus_budget_ok,
    tight_certificate_to_json,
    verify_tight_certificate,
)


def test_genus_budget_examples():
    assert genus_budget_ok([5], 5)  # 1 <= 4/3
    assert not genus_budget_ok([5, 5], 5)  # 2 > 4/3
    assert genus_budget_ok([6, 5], 7)  # 2 <= 3
    with pytest.raises(GraphError):
        genus_budget_ok([4], 5)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(5, 9), min_size=0, max_size=4),
    st.integers(5, 9),
    st.integers(5, 9),
)
def test_genus_budget_monotone(sizes, extra, p):
    if not genus_budget_ok(sizes, p):
        assert not genus_budget_ok(sizes + [extra], p)


def test_boost_preserves_surface_and_pumps_degrees():
    base = torus_grid(3, 3)
    boosted, disk = boost_degrees(base, root_face=0, d=3)
    assert euler_genus(boosted) == euler_genus(base)
    assert check_disk_fan_property(boosted, disk, 3)


def test_boost_d4_gives_four_disjoint_paths_everywhere():
    base = torus_grid(3, 3)
    boosted, disk = boost_degrees(base, root_face=0, d=4)
    ds = frozenset(disk)
    off_disk = [v for v in range(boosted.graph.n) if v not in ds]
    for v in off_disk[:: max(1, len(off_disk) // 25)]:  # sampled; full check is the d=3 test
        assert internally_disjoint_path_count(boosted.graph, v, ds) >= 4


def test_boost_output_stays_3_connected():
    boosted, _ = boost_degrees(torus_grid(3, 3), root_face=0, d=3)
    assert vertex_connectivity(boosted.graph) >= 3


def test_disk_is_still_a_face():
    # nothing is embedded inside the disk: its boundary is a face walk of the core
    boosted, disk = boost_degrees(torus_grid(3, 3), root_face=0, d=3)
    walks = {tuple(sorted(w)) for w in trace_faces(boosted)}
    assert tuple(sorted(disk)) in walks


def test_tight_construction_small():
    tc = build_tight_construction(torus_grid(3, 3), n=1, k=5, p=5, r=2)
    assert len(tc.apexes) == tight_connectivity(5, 5) == 3
    assert tc.connectivity is not None and tc.connectivity >= 3
    assert tc.face_width_bound >= 3 and tc.face_width_exact
    for z in tc.apexes:
        assert all(tc.graph.has_edge(z, v) for v in tc.disk)
    walks = {tuple(sorted(w)) for w in trace_faces(tc.core)}
    assert tuple(sorted(tc.disk)) in walks


def test_apex_count_formula_for_larger_k():
    assert tight_connectivity(5, 10) == 13


def test_construction_parameter_validation():
    base = torus_grid(3, 3)
    with pytest.raises(GraphError):
        build_tight_construction(base, n=1, k=4, p=5, r=1)  # k < p
    with pytest.raises(GraphError):
        build_tight_construction(base, n=0, k=5, p=5, r=1)


def test_tight_certificate_roundtrip_and_tamper_detection():
    tc = build_tight_construction(torus_grid(3, 3), n=1, k=5, p=5, r=2)
    cert = tight_certificate_to_json(tc)
    assert verify_tight_certificate(cert, tc.graph) is None
    import json

    doc = json.loads(cert)
    doc["apex_count"] = 4
    bad = json.dumps(doc)
    assert verify_tight_certificate(bad, tc.graph) is not None
