import json

import pytest

from minorlab.cli import main
from minorlab.generators import cylinder_instance
from minorlab.graphs import grid_graph
from minorlab.io import write_edge_list
from minorlab.surface import embedding_to_json, torus_grid


def run(argv):
    return main(argv)


def test_gadget_writes_artifacts(tmp_path):
    assert run(["--out", str(tmp_path), "gadget", "--kind", "fan", "--length", "5", "--hubs", "2"]) == 0
    assert (tmp_path / "fan_5_2.edges").exists()
    assert (tmp_path / "fan_5_2.roles.tsv").exists()
    assert (tmp_path / "fan_5_2.png").exists()
    roles = (tmp_path / "fan_5_2.roles.tsv").read_text().splitlines()
    assert roles[0].split("\t") == ["0", "top[1]"]


def test_gadget_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["--out", str(out), "gadget", "--kind", "wall", "--r", "4"]) == 0
    for name in ("wall_4.edges", "wall_4.roles.tsv", "wall_4.png"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_minor_found_and_absent(tmp_path, capsys):
    host = tmp_path / "host.edges"
    write_edge_list(grid_graph(3, 3), host)
    assert run(["--out", str(tmp_path), "minor", "--host", str(host), "--pattern", "K3"]) == 0
    assert (tmp_path / "minor_model.json").exists()
    assert run(["--out", str(tmp_path), "minor", "--host", str(host), "--pattern", "K5"]) == 0
    assert "absent" in capsys.readouterr().out


def test_minor_budget_exit_code(tmp_path):
    host = tmp_path / "host.edges"
    write_edge_list(grid_graph(4, 4), host)
    code = run(["--out", str(tmp_path), "--budget", "10", "minor", "--host", str(host), "--pattern", "K5"])
    assert code == 3


def test_ep_solve_verify_roundtrip(tmp_path):
    g = tmp_path / "g.edges"
    write_edge_list(grid_graph(3, 4), g)
    assert run(["--out", str(tmp_path), "ep-solve", "--graph", str(g), "--p", "3", "--k", "2"]) == 0
    cert = tmp_path / "ep_certificate.json"
    assert cert.exists()
    assert run(["verify", "--graph", str(g), "--certificate", str(cert)]) == 0


def test_verify_rejects_tampered_certificate(tmp_path):
    g = tmp_path / "g.edges"
    write_edge_list(grid_graph(3, 4), g)
    run(["--out", str(tmp_path), "ep-solve", "--graph", str(g), "--p", "3", "--k", "2"])
    cert = tmp_path / "ep_certificate.json"
    doc = json.loads(cert.read_text())
    if doc["kind"] == "hitting_set":
        doc["vertices"] = doc["vertices"][:-1] if doc["vertices"] else [0]
        doc["vertices"] = []
    else:
        doc["models"] = doc["models"] + doc["models"][:1]
    cert.write_text(json.dumps(doc))
    assert run(["verify", "--graph", str(g), "--certificate", str(cert)]) == 4


def test_bad_input_exit_code(tmp_path):
    missing = tmp_path / "missing.edges"
    assert run(["minor", "--host", str(missing), "--pattern", "K3"]) == 2


def test_tight_construct_and_verify(tmp_path):
    assert (
        run(["--out", str(tmp_path), "tight-construct", "--n", "1", "--k", "5", "--p", "5", "--r", "2"]) == 0
    )
    edges = tmp_path / "tight_construction.edges"
    cert = tmp_path / "tight_construction.json"
    assert edges.exists() and cert.exists()
    assert run(["verify", "--graph", str(edges), "--certificate", str(cert)]) == 0


def test_facewidth_command(tmp_path, capsys):
    emb = tmp_path / "t33.json"
    emb.write_text(embedding_to_json(torus_grid(3, 3)))
    assert run(["--out", str(tmp_path), "facewidth", "--embedding", str(emb)]) == 0
    out = capsys.readouterr().out
    assert "face width: 3" in out
    assert (tmp_path / "facewidth.tsv").read_text().splitlines()[-1] == "face_width\t3"


def test_linkage_check_reports(tmp_path, capsys):
    inst = cylinder_instance(4, 2, seed=3)
    doc = {
        "n": inst.graph.n,
        "edges": [list(e) for e in inst.graph.sorted_edges()],
        "paths": [list(p) for p in inst.paths],
        "x": sorted(inst.x),
        "y": sorted(inst.y),
        "cycles": [list(c) for c in inst.cycles],
        "s_prime": 2,
        "plane_vertices": sorted(inst.inner_vertices),
    }
    f = tmp_path / "instance.json"
    f.write_text(json.dumps(doc))
    assert run(["--out", str(tmp_path), "linkage-check", "--instance", str(f)]) == 0
    report = (tmp_path / "linkage_report.tsv").read_text()
    assert "linkage-valid\tpass" in report
    assert "orthogonalize\tpass" in report
