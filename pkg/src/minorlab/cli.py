"""Command-line surface: solvers, gadget emitters, and certificate checking.

Every command that produces artifacts writes them under the output directory
(`--out`, or $MINORLAB_OUT, default `.`) and renders a companion PNG figure
next to the delimited output.  Outputs are deterministic for a fixed seed.

Exit codes: 0 success, 2 invalid input, 3 budget or size limit exceeded,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import gadgets, generators, io, plots
from .erdos_posa import (
    Packing,
    certificate_from_json,
    certificate_to_json,
    ep_solve,
    verify_certificate,
)
from .graphs import Graph, GraphError, complete_graph
from .linkage import (
    Linkage,
    OrthogonalizationError,
    extract_comb,
    is_orthogonal,
    is_singular,
    orthogonalize,
    validate_linkage,
)
from .minors import (
    ABSENT,
    BUDGET_EXCEEDED,
    find_minor,
    model_from_json,
    model_to_json,
    verify_model,
)
from .surface import (
    UNBOUNDED,
    EmbeddedGraph,
    double_torus_base,
    embedding_from_json,
    embedding_to_json,
    face_width,
    torus_grid,
    trace_faces,
)
from .tightness import (
    build_tight_construction,
    tight_certificate_to_json,
    verify_tight_certificate,
)
from .treedec import SizeLimitError, decomposition_from_json, heuristic_decomposition

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_VERIFY = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _out_dir(args) -> Path:
    root = args.out or os.environ.get("MINORLAB_OUT") or "."
    p = Path(root)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _load_graph(path: str) -> Graph:
    try:
        return io.read_graph_file(path)
    except (OSError, GraphError) as exc:
        raise CliError(f"cannot read graph {path}: {exc}", EXIT_INVALID)


def _pattern(spec: str) -> Graph:
    if spec.upper().startswith("K") and spec[1:].isdigit():
        return complete_graph(int(spec[1:]))
    return _load_graph(spec)


def cmd_gadget(args) -> int:
    out = _out_dir(args)
    if args.kind == "ladder":
        lad = gadgets.build_ladder(args.length)
        g, roles, name = lad.graph, lad.roles(), f"ladder_{args.length}"
        pos = plots.ladder_layout(lad)
    elif args.kind == "fan":
        fan = gadgets.build_fan(args.length, args.hubs)
        g, roles, name = fan.graph, fan.roles(), f"fan_{args.length}_{args.hubs}"
        pos = plots.fan_layout(fan)
    else:
        wall = gadgets.build_wall(args.r)
        if args.subdivide:
            g, roles = gadgets.subdivide_wall(wall, args.subdivide)
            name = f"wall_{args.r}_sub{args.subdivide}"
            pos = None
        else:
            g, roles, name = wall.graph, wall.roles(), f"wall_{args.r}"
            pos = plots.wall_layout(wall)
    io.write_edge_list(g, out / f"{name}.edges")
    io.write_roles(roles, out / f"{name}.roles.tsv")
    plots.draw_graph(out / f"{name}.png", g, pos=pos, title=name)
    print(f"{name}: {g.n} vertices, {g.m} edges -> {out}/{name}.edges")
    return EXIT_OK


def cmd_minor(args) -> int:
    out = _out_dir(args)
    host = _load_graph(args.host)
    pattern = _pattern(args.pattern)
    res = find_minor(host, pattern, args.budget)
    if res is BUDGET_EXCEEDED:
        print("budget exceeded; result unknown")
        return EXIT_LIMIT
    if res is ABSENT:
        print("absent: host has no model of the pattern")
        return EXIT_OK
    path = out / "minor_model.json"
    path.write_text(model_to_json(res))
    plots.draw_graph(
        out / "minor_model.png", host, vertex_groups=res.branch_sets, title="branch sets"
    )
    print(f"model found -> {path}")
    return EXIT_OK


def cmd_ep_solve(args) -> int:
    out = _out_dir(args)
    g = _load_graph(args.graph)
    if args.decomposition:
        d = decomposition_from_json(Path(args.decomposition).read_text())
    else:
        d = heuristic_decomposition(g)
    cert = ep_solve(g, d, args.p, args.k, budget=args.budget)
    if cert is BUDGET_EXCEEDED:
        print("budget exceeded; no certificate")
        return EXIT_LIMIT
    w = d.width + 1
    path = out / "ep_certificate.json"
    path.write_text(certificate_to_json(cert, args.p, args.k, w, seed=args.seed))
    if isinstance(cert, Packing):
        groups = {}
        for i, m in enumerate(cert.models):
            for c, bs in m.branch_sets.items():
                groups[i * args.p + c] = bs
        plots.draw_graph(out / "ep_certificate.png", g, vertex_groups=groups, title=f"packing of {args.k} models")
        print(f"packing of {args.k} disjoint K_{args.p} models -> {path}")
    else:
        plots.draw_graph(out / "ep_certificate.png", g, highlight=cert.vertices, title="hitting set")
        print(f"hitting set of {len(cert.vertices)} vertices (bound {cert.bound}) -> {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    text = Path(args.certificate).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"certificate is not JSON: {exc}", EXIT_INVALID)
    fmt = doc.get("format", "")
    if fmt == "minorlab.minor_model/1":
        model = model_from_json(text, g)
        bad = verify_model(model)
    elif fmt == "minorlab.ep_certificate/1":
        cert, p, k, w = certificate_from_json(text, g)
        bad = verify_certificate(g, cert, p, k, w, budget=args.budget)
    elif fmt == "minorlab.tight_construction/1":
        msg = verify_tight_certificate(text, g)
        bad = msg
    else:
        raise CliError(f"unknown certificate format {fmt!r}", EXIT_INVALID)
    if bad is None:
        print("certificate verifies")
        return EXIT_OK
    print(f"verification failed: {bad}")
    return EXIT_VERIFY


def cmd_tight_construct(args) -> int:
    out = _out_dir(args)
    if args.base == "c3":
        base = torus_grid(3, 3)
    elif args.base == "c4":
        base = torus_grid(4, 4)
    elif args.base == "genus2":
        base = double_torus_base()
    else:
        base = embedding_from_json(Path(args.base).read_text())
    try:
        tc = build_tight_construction(
            base, n=args.n, k=args.k, p=args.p, r=args.r, fw_cap=args.exact_cap,
            check_connectivity=not args.no_connectivity_check,
        )
    except SizeLimitError as exc:
        raise CliError(str(exc), EXIT_LIMIT)
    io.write_edge_list(tc.graph, out / "tight_construction.edges")
    cert = tight_certificate_to_json(tc)
    (out / "tight_construction.json").write_text(cert)
    plots.draw_graph(
        out / "tight_construction.png",
        tc.graph,
        highlight=tc.apexes,
        title=f"G(n={args.n},k={args.k},p={args.p}), |Z|={len(tc.apexes)}",
        labels=False,
    )
    fw = "unbounded" if tc.face_width_bound == UNBOUNDED else tc.face_width_bound
    kind = "exact" if tc.face_width_exact else "lower bound"
    print(
        f"construction: {tc.graph.n} vertices, |Z|={len(tc.apexes)}, "
        f"face width {fw} ({kind}), connectivity {tc.connectivity}"
    )
    return EXIT_OK


def cmd_linkage_check(args) -> int:
    out = _out_dir(args)
    doc = json.loads(Path(args.instance).read_text())
    g = Graph(doc["n"], [tuple(e) for e in doc["edges"]])
    link = Linkage(
        tuple(tuple(p) for p in doc["paths"]),
        frozenset(doc["x"]),
        frozenset(doc["y"]),
    )
    rows: list[tuple[str, str, str]] = []
    bad = validate_linkage(g, link)
    rows.append(("linkage-valid", "pass" if bad is None else "fail", "" if bad is None else str(bad)))
    failed = bad is not None
    if bad is None and g.n <= args.exact_cap:
        singular = is_singular(g, link, cap=args.exact_cap)
        rows.append(("singular", "yes" if singular else "no", ""))
    if bad is None and doc.get("h"):
        h = frozenset(doc["h"])
        try:
            comb = extract_comb(g, link, h, t=int(doc.get("t", 1)))
            rows.append(("comb", "pass", f"{len(comb.paths)} comb paths"))
        except GraphError as exc:
            rows.append(("comb", "fail", str(exc)))
            failed = True
    view_paths = list(link.paths)
    cycles = [tuple(c) for c in doc.get("cycles", [])]
    if bad is None and cycles:
        rows.append(("orthogonal", "yes" if is_orthogonal(g, link, cycles) else "no", ""))
        s_prime = int(doc.get("s_prime", args.s_prime))
        try:
            res = orthogonalize(g, cycles, link, s_prime, plane_vertices=doc.get("plane_vertices"))
            rows.append(("orthogonalize", "pass", f"rerouted={res.rerouted}"))
            view_paths = list(res.linkage.paths)
        except (GraphError, OrthogonalizationError) as exc:
            rows.append(("orthogonalize", "fail", str(exc)))
            failed = True
    report = out / "linkage_report.tsv"
    report.write_text("".join(f"{a}\t{b}\t{c}\n" for a, b, c in rows))
    plots.draw_graph(out / "linkage_report.png", g, paths=view_paths, cycles=cycles, title="linkage instance")
    for a, b, c in rows:
        print(f"{a}\t{b}\t{c}".rstrip())
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_facewidth(args) -> int:
    out = _out_dir(args)
    e = embedding_from_json(Path(args.embedding).read_text())
    try:
        fw = face_width(e, cap=args.exact_cap)
    except SizeLimitError as exc:
        raise CliError(str(exc), EXIT_LIMIT)
    faces = trace_faces(e)
    value = "unbounded" if fw == UNBOUNDED else str(int(fw))
    (out / "facewidth.tsv").write_text(
        f"vertices\t{e.graph.n}\nedges\t{e.graph.m}\nfaces\t{len(faces)}\nface_width\t{value}\n"
    )
    plots.draw_graph(out / "facewidth.png", e.graph, title=f"face width {value}")
    print(f"face width: {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minorlab", description=__doc__)
    ap.add_argument("--out", help="output directory (default $MINORLAB_OUT or .)")
    ap.add_argument("--seed", type=int, default=0, help="seed recorded in outputs")
    ap.add_argument("--budget", type=int, default=None, help="search budget in node expansions")
    ap.add_argument("--exact-cap", type=int, default=400, help="exact-search size cap")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gadget", help="emit a ladder, fan, or wall")
    g.add_argument("--kind", choices=["ladder", "fan", "wall"], required=True)
    g.add_argument("--length", type=int, default=4)
    g.add_argument("--hubs", type=int, default=1)
    g.add_argument("--r", type=int, default=4)
    g.add_argument("--subdivide", type=int, default=0)
    g.set_defaults(func=cmd_gadget)

    m = sub.add_parser("minor", help="search a host for a pattern minor")
    m.add_argument("--host", required=True)
    m.add_argument("--pattern", required=True, help="K<n> or an edge-list file")
    m.set_defaults(func=cmd_minor)

    e = sub.add_parser("ep-solve", help="packing/covering certificate for K_p minors")
    e.add_argument("--graph", required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--decomposition", help="tree-decomposition JSON (default: min-fill)")
    e.set_defaults(func=cmd_ep_solve)

    v = sub.add_parser("verify", help="re-check a certificate file")
    v.add_argument("--graph", required=True)
    v.add_argument("--certificate", required=True)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tight-construct", help="build the tightness construction")
    t.add_argument("--base", default="c3", help="c3, c4, genus2, or a rotation-system JSON file")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--r", type=int, default=5)
    t.add_argument("--no-connectivity-check", action="store_true")
    t.set_defaults(func=cmd_tight_construct)

    l = sub.add_parser("linkage-check", help="singular/comb/orthogonality reports")
    l.add_argument("--instance", required=True, help="instance JSON file")
    l.add_argument("--s-prime", type=int, default=2)
    l.set_defaults(func=cmd_linkage_check)

    f = sub.add_parser("facewidth", help="face width of an embedded graph")
    f.add_argument("--embedding", required=True, help="rotation-system JSON file")
    f.set_defaults(func=cmd_facewidth)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (GraphError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
