"""The surface-embedded tightness construction and its arithmetic predicates.

Starting from a small 3-connected closed 2-cell base embedding, the builder
refines faces until the face-width is certified, pumps up degrees toward a
root face by processing the dual spanning tree leaf by leaf, and finally
attaches an apex set joined completely to the root face's boundary disk.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .graphs import Graph, GraphError, VertexSet, internally_disjoint_path_count, vertex_connectivity
from .erdos_posa import tight_connectivity
from .surface import (
    EmbeddedGraph,
    UNBOUNDED,
    embedded_from_faces,
    euler_genus,
    face_width,
    refine_all_faces,
)
from .treedec import SizeLimitError


def genus_budget_ok(clique_sizes: list[int], p: int) -> bool:
    """Can disjoint K_{l_1},...,K_{l_q} minors coexist in a surface where K_p
    barely embeds?  Checks sum of ceil((l-3)(l-4)/6) <= (p-3)(p-4)/6 + 1 with
    exact rational arithmetic."""
    if any(l < 5 for l in clique_sizes):
        raise GraphError("clique sizes below 5 are not covered by the budget bound")
    left = sum(ceil((l - 3) * (l - 4) / 6) for l in clique_sizes)
    right = Fraction((p - 3) * (p - 4), 6) + 1
    return Fraction(left) <= right


def _split_polygon(poly: list[int], chords: list[tuple[int, int]]) -> list[list[int]]:
    """Faces of a simple polygon subdivided by non-crossing chords; pieces
    keep the polygon's orientation."""
    if not chords:
        return [poly]
    u, w = chords[0]
    i, j = poly.index(u), poly.index(w)
    if i > j:
        i, j = j, i
    p1 = poly[i: j + 1]
    p2 = poly[j:] + poly[: i + 1]
    c1, c2 = [], []
    s1 = set(p1)
    for a, b in chords[1:]:
        if a in s1 and b in s1:
            c1.append((a, b))
        else:
            c2.append((a, b))
    return _split_polygon(p1, c1) + _split_polygon(p2, c2)


def boost_degrees(e: EmbeddedGraph, root_face: int, d: int) -> tuple[EmbeddedGraph, tuple[int, ...]]:
    """Process every non-root face of the dual spanning tree, leaves first:
    subdivide the edge shared with the tree parent and join every other
    boundary vertex to d fresh subdivision vertices inside the face.

    Returns the boosted embedding and the root face's final boundary cycle
    (the disk the apex set will attach to).  Every vertex off that disk ends
    up with d internally disjoint paths toward it.
    """
    if d < 1:
        raise GraphError("d must be >= 1")
    rs = e.rotation_system()
    walks = {i: list(w) for i, w in enumerate(rs.face_walks())}
    for w in walks.values():
        if len(set(w)) != len(w):
            raise GraphError("boosting needs a closed 2-cell embedding (a face walk repeats a vertex)")
    if root_face not in walks:
        raise GraphError(f"no face {root_face}; the embedding has {len(walks)} faces")

    def edge_set(walk: list[int]) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, b in zip(walk, walk[1:] + walk[:1])}

    # Dual spanning tree by BFS from the root, neighbours in face-id order.
    dual: dict[int, set[int]] = {i: set() for i in walks}
    ids = sorted(walks)
    for a in ids:
        ea = edge_set(walks[a])
        for b in ids:
            if b > a and ea & edge_set(walks[b]):
                dual[a].add(b)
                dual[b].add(a)
    parent: dict[int, int] = {root_face: -1}
    order = [root_face]
    qi = 0
    while qi < len(order):
        f = order[qi]
        qi += 1
        for nb in sorted(dual[f]):
            if nb not in parent:
                parent[nb] = f
                order.append(nb)
    if len(parent) != len(walks):
        raise GraphError("the dual graph is disconnected; not a 2-cell embedding")

    children_left = {f: 0 for f in walks}
    for f, pf in parent.items():
        if pf >= 0:
            children_left[pf] += 1

    next_vertex = e.graph.n
    finished: list[list[int]] = []
    pending = {f for f in walks if f != root_face}
    while pending:
        f = min(fid for fid in pending if children_left[fid] == 0)
        pending.remove(f)
        pf = parent[f]
        children_left[pf] -= 1
        walk = walks[f]
        shared = sorted(edge_set(walk) & edge_set(walks[pf]))
        if not shared:
            raise AssertionError("tree neighbours no longer share an edge")
        a_, b_ = shared[0]
        # orient so the walk traverses A -> B
        L = len(walk)
        pos = next(i for i in range(L) if {walk[i], walk[(i + 1) % L]} == {a_, b_})
        A, B = walk[pos], walk[(pos + 1) % L]
        rotated = walk[(pos + 1) % L:] + walk[: (pos + 1) % L]  # starts at B, ends at A
        q2 = len(rotated)
        M = q2 * d + 2
        svs = list(range(next_vertex, next_vertex + M))
        next_vertex += M

        # parent traverses B -> A; splice the reversed chain in
        pw = walks[pf]
        Lp = len(pw)
        ppos = next(i for i in range(Lp) if pw[i] == B and pw[(i + 1) % Lp] == A)
        walks[pf] = pw[: ppos + 1] + svs[::-1] + pw[ppos + 1:] if ppos + 1 < Lp else pw + svs[::-1]

        # chord blocks descend along [B, w_1.., A]; usable slots run s_2..s_{M-1}
        chords: list[tuple[int, int]] = []
        for zi, z in enumerate(rotated):
            hi = (M - 1) - zi * d  # 1-based top slot of this vertex's block
            for t in range(d):
                chords.append((z, svs[hi - t - 1]))
        polygon = rotated + svs
        finished.extend(_split_polygon(polygon, chords))

    all_faces = finished + [walks[root_face]]
    out = embedded_from_faces(next_vertex, all_faces)
    if euler_genus(out) != euler_genus(e):
        raise AssertionError("boosting changed the surface")
    return out, tuple(walks[root_face])


def check_disk_fan_property(e: EmbeddedGraph, disk: tuple[int, ...], d: int) -> bool:
    """Every vertex off the disk has >= d internally disjoint paths to it."""
    ds = frozenset(disk)
    for v in range(e.graph.n):
        if v in ds:
            continue
        if internally_disjoint_path_count(e.graph, v, ds) < d:
            return False
    return True


@dataclass(frozen=True)
class TightConstruction:
    graph: Graph
    core: EmbeddedGraph
    disk: tuple[int, ...]
    apexes: VertexSet
    n: int
    k: int
    p: int
    r: int
    face_width_bound: float
    face_width_exact: bool
    connectivity: int | None


def build_tight_construction(
    base: EmbeddedGraph,
    n: int,
    k: int,
    p: int,
    r: int,
    fw_cap: int = 400,
    check_connectivity: bool = True,
) -> TightConstruction:
    """Refine the base until its face-width certifiably reaches n + r, boost
    degrees toward a root disk, and attach the apex set Z completely to the
    disk boundary.  |Z| equals the target connectivity k(p-3)-(p-3)(p-4)/2-6.
    """
    if p < 5:
        raise GraphError("construction needs p >= 5")
    if k < p:
        raise GraphError("construction needs k >= p")
    if n < 1 or r < 1:
        raise GraphError("n and r must be >= 1")
    target = n + r
    core = base
    bound = face_width(base, cap=fw_cap)
    if bound == UNBOUNDED:
        raise GraphError("the base embedding has genus 0; no face-width to certify")
    exact = True
    while bound < target:
        core = refine_all_faces(core)
        try:
            bound = face_width(core, cap=fw_cap)
            exact = True
        except SizeLimitError:
            bound = bound * 2  # refinement at least doubles the face-width
            exact = False
    d = tight_connectivity(p, k)
    boosted, disk = boost_degrees(core, root_face=0, d=d)
    apex_start = boosted.graph.n
    apexes = frozenset(range(apex_start, apex_start + d))
    edges = set(boosted.graph.edges)
    for z in apexes:
        for v in disk:
            edges.add((min(z, v), max(z, v)))
    g = Graph(apex_start + d, edges)
    kappa = vertex_connectivity(g) if check_connectivity else None
    return TightConstruction(g, boosted, disk, apexes, n, k, p, r, bound, exact, kappa)


TIGHT_FORMAT = "minorlab.tight_construction/1"


def tight_certificate_to_json(tc: TightConstruction) -> str:
    doc = {
        "format": TIGHT_FORMAT,
        "n": tc.n,
        "k": tc.k,
        "p": tc.p,
        "r": tc.r,
        "apex_count": len(tc.apexes),
        "apexes": sorted(tc.apexes),
        "disk": list(tc.disk),
        "target_connectivity": tight_connectivity(tc.p, tc.k),
        "measured_connectivity": tc.connectivity,
        "face_width_bound": tc.face_width_bound if tc.face_width_bound != UNBOUNDED else "unbounded",
        "face_width_exact": tc.face_width_exact,
        "vertices": tc.graph.n,
        "edges": tc.graph.m,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def verify_tight_certificate(text: str, g: Graph) -> str | None:
    """Re-check the structural claims of a construction certificate against
    its emitted graph; returns a problem description or None."""
    doc = json.loads(text)
    if doc.get("format") != TIGHT_FORMAT:
        return f"not a tight-construction document: {doc.get('format')!r}"
    if doc["vertices"] != g.n or doc["edges"] != g.m:
        return "graph size differs from the certificate"
    apexes = set(doc["apexes"])
    disk = list(doc["disk"])
    if len(apexes) != doc["apex_count"]:
        return "apex count mismatch"
    if doc["apex_count"] != tight_connectivity(doc["p"], doc["k"]):
        return "apex count differs from the connectivity formula"
    for z in apexes:
        for v in disk:
            if not g.has_edge(z, v):
                return f"apex {z} misses disk vertex {v}"
    if doc["measured_connectivity"] is not None:
        if vertex_connectivity(g) != doc["measured_connectivity"]:
            return "recorded connectivity does not match the graph"
    return None
