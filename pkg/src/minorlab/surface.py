"""Rotation-system embeddings on orientable surfaces.

The public type pairs a simple graph with a cyclic neighbour order per vertex.
Internally everything runs on a dart structure (half-edges with a twin
involution and a rotation permutation), which also handles the multigraphs
that show up as radial graphs and cut surfaces.

Conventions: faces are the orbits of d -> sigma[twin[d]]; the Euler genus of a
connected embedded graph is 2 - (V - E + F), and cutting along a simple cycle
raises the total Euler characteristic by exactly 2 (asserted after surgery).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph, GraphError, VertexSet
from .treedec import SizeLimitError

UNBOUNDED = math.inf


class RotationSystem:
    """Dart-based embedded multigraph: dart 2i/2i+1 are the two sides of edge
    i; sigma maps a dart to the next dart around its vertex."""

    def __init__(self, n: int, vertex_of: list[int], sigma: list[int]):
        self.n = n
        self.vertex_of = vertex_of
        self.sigma = sigma
        if len(sigma) != len(vertex_of) or len(sigma) % 2 != 0:
            raise GraphError("dart arrays must pair up")

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @staticmethod
    def twin(d: int) -> int:
        return d ^ 1

    def check(self) -> None:
        seen = {}
        for d, v in enumerate(self.vertex_of):
            seen.setdefault(v, []).append(d)
        perm = [False] * self.dart_count
        for d in range(self.dart_count):
            nd = self.sigma[d]
            if self.vertex_of[nd] != self.vertex_of[d]:
                raise GraphError("sigma must stay within one vertex")
            if perm[nd]:
                raise GraphError("sigma is not a permutation")
            perm[nd] = True

    def face_darts(self) -> list[list[int]]:
        """Faces as dart orbits of d -> sigma[twin(d)]."""
        out = []
        seen = [False] * self.dart_count
        for d0 in range(self.dart_count):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.sigma[self.twin(d)]
            out.append(orbit)
        return out

    def face_walks(self) -> list[list[int]]:
        return [[self.vertex_of[d] for d in orbit] for orbit in self.face_darts()]

    def components(self) -> list[set[int]]:
        """Vertex components (isolated vertices are their own components)."""
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for d in range(0, self.dart_count, 2):
            u, v = self.vertex_of[d], self.vertex_of[d ^ 1]
            adj[u].add(v)
            adj[v].add(u)
        comps = []
        left = set(range(self.n))
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
            left -= comp
        return comps

    def euler_characteristic_by_component(self) -> list[tuple[set[int], int]]:
        comps = self.components()
        faces = self.face_darts()
        out = []
        for comp in comps:
            e = sum(1 for d in range(0, self.dart_count, 2) if self.vertex_of[d] in comp)
            f = sum(1 for orbit in faces if self.vertex_of[orbit[0]] in comp)
            if e == 0:
                f = 1  # an isolated vertex sits on a sphere
            out.append((comp, len(comp) - e + f))
        return out

    def euler_characteristic(self) -> int:
        return sum(chi for _, chi in self.euler_characteristic_by_component())

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def from_rotations(n: int, rotation: Sequence[Sequence[int]]) -> "RotationSystem":
        """From per-vertex cyclic neighbour lists of a simple graph."""
        dart_at: dict[tuple[int, int], int] = {}
        vertex_of: list[int] = []
        edges = []
        for v in range(n):
            for w in rotation[v]:
                if v < w:
                    edges.append((v, w))
        for u, v in edges:
            dart_at[(u, v)] = len(vertex_of)
            vertex_of.append(u)
            dart_at[(v, u)] = len(vertex_of)
            vertex_of.append(v)
        sigma = [0] * len(vertex_of)
        for v in range(n):
            rot = rotation[v]
            if len(set(rot)) != len(rot):
                raise GraphError(f"rotation at {v} repeats a neighbour")
            for i, w in enumerate(rot):
                d = dart_at[(v, w)]
                sigma[d] = dart_at[(v, rot[(i + 1) % len(rot)])]
        return RotationSystem(n, vertex_of, sigma)

    @staticmethod
    def from_faces(n: int, faces: Sequence[Sequence[int]]) -> "RotationSystem":
        """From oriented face walks; every edge must be traversed exactly once
        in each direction across all walks."""
        vertex_of: list[int] = []
        # allocate darts per undirected edge occurrence: pair u->v with v->u
        pending: dict[tuple[int, int], list[int]] = {}
        phi_next: dict[int, int] = {}
        walk_darts: list[list[int]] = []
        for walk in faces:
            L = len(walk)
            darts = []
            for i in range(L):
                u, v = walk[i], walk[(i + 1) % L]
                key = (min(u, v), max(u, v))
                if pending.get(key):
                    mate = pending[key].pop()
                    if vertex_of[mate] == u:
                        raise GraphError(f"edge {key} traversed twice in the same direction")
                    d = mate ^ 1
                    if vertex_of[d] != u:
                        raise GraphError("dart bookkeeping error")
                else:
                    d = len(vertex_of)
                    vertex_of.append(u)
                    vertex_of.append(v)
                    pending.setdefault(key, []).append(d)
                darts.append(d)
            walk_darts.append(darts)
        leftovers = [k for k, v in pending.items() if v]
        if leftovers:
            raise GraphError(f"edges traversed only once: {leftovers[:5]}")
        for darts in walk_darts:
            L = len(darts)
            for i in range(L):
                phi_next[darts[i]] = darts[(i + 1) % L]
        # faces are the orbits of d -> sigma[twin(d)], so sigma(d) = phi(twin(d))
        sigma = [phi_next[d ^ 1] for d in range(len(vertex_of))]
        rs = RotationSystem(n, vertex_of, sigma)
        rs.check()
        return rs

    # -- surgeries --------------------------------------------------------------

    def rotation_at(self, v: int) -> list[int]:
        """The sigma cycle at v (darts), starting from the smallest dart."""
        darts = [d for d in range(self.dart_count) if self.vertex_of[d] == v]
        if not darts:
            return []
        start = min(darts)
        out = [start]
        d = self.sigma[start]
        while d != start:
            out.append(d)
            d = self.sigma[d]
        return out

    def dart_between(self, u: int, v: int) -> int:
        for d in range(self.dart_count):
            if self.vertex_of[d] == u and self.vertex_of[d ^ 1] == v:
                return d
        raise GraphError(f"no dart from {u} to {v}")

    def cut_along(self, cycle_darts: list[int]) -> "RotationSystem":
        """Cut the surface along a simple cycle given as a dart sequence
        (dart i runs from cycle vertex i to vertex i+1).

        Cycle vertex i splits into a left copy (keeping the original id) and a
        right copy; the cycle edges are duplicated for the right side.  The
        total Euler characteristic must rise by exactly 2.
        """
        m = len(cycle_darts)
        verts = [self.vertex_of[d] for d in cycle_darts]
        if len(set(verts)) != m or m < 3:
            raise GraphError("cut requires a simple cycle of length >= 3")
        for i, d in enumerate(cycle_darts):
            if self.vertex_of[d ^ 1] != verts[(i + 1) % m]:
                raise GraphError("darts do not form the stated cycle")
        right_id = {v: self.n + i for i, v in enumerate(verts)}
        # darts of the right copies of the cycle edges
        base = self.dart_count
        new_vertex_of = list(self.vertex_of)
        right_dart = {}
        for i in range(m):
            u, v = verts[i], verts[(i + 1) % m]
            right_dart[i] = base + 2 * i
            new_vertex_of.append(right_id[u])
            new_vertex_of.append(right_id[v])
        sigma = list(self.sigma) + [0] * (2 * m)

        for i in range(m):
            v = verts[i]
            d_out = cycle_darts[i]
            d_in = cycle_darts[(i - 1) % m] ^ 1  # dart v -> previous vertex
            rot = self.rotation_at(v)
            k = rot.index(d_out)
            order = rot[k:] + rot[:k]  # starts at d_out
            j = order.index(d_in)
            left_arc = order[: j + 1]  # d_out ... d_in stays with v
            right_arc = order[j + 1:]  # strictly between d_in and d_out
            # left rotation: cycle through left_arc
            for a, b in zip(left_arc, left_arc[1:] + left_arc[:1]):
                sigma[a] = b
            # right copy: incoming right dart, the right arc, outgoing right dart
            rin = right_dart[(i - 1) % m] ^ 1  # dart right_id[v] -> right prev
            rout = right_dart[i]
            seq = [rin] + right_arc + [rout]
            for a, b in zip(seq, seq[1:] + seq[:1]):
                sigma[a] = b
            for d in right_arc:
                new_vertex_of[d] = right_id[v]
        rs = RotationSystem(self.n + m, new_vertex_of, sigma)
        rs.check()
        if rs.euler_characteristic() != self.euler_characteristic() + 2:
            raise AssertionError("cut surgery changed the Euler characteristic wrongly")
        return rs

    def delete_vertices(self, drop: Iterable[int]) -> "RotationSystem":
        ds = set(drop)
        keep_vertex = [v for v in range(self.n) if v not in ds]
        new_id = {v: i for i, v in enumerate(keep_vertex)}
        dart_new: dict[int, int] = {}
        new_vertex_of: list[int] = []
        for d in range(0, self.dart_count, 2):
            if self.vertex_of[d] in ds or self.vertex_of[d ^ 1] in ds:
                continue
            for dd in (d, d ^ 1):
                dart_new[dd] = len(new_vertex_of)
                new_vertex_of.append(new_id[self.vertex_of[dd]])
        sigma = [0] * len(new_vertex_of)
        for d in dart_new:
            nxt = self.sigma[d]
            while nxt not in dart_new:
                nxt = self.sigma[nxt]  # skip darts toward deleted neighbours
            sigma[dart_new[d]] = dart_new[nxt]
        return RotationSystem(len(keep_vertex), new_vertex_of, sigma)

    def radial(self) -> "RotationSystem":
        """The vertex-face incidence multigraph, embedded in the same surface:
        one radial edge per dart; face nodes follow the original vertices."""
        faces = self.face_darts()
        face_of = {}
        for fi, orbit in enumerate(faces):
            for d in orbit:
                face_of[d] = fi
        nv = self.n
        # radial edge r_d per dart d: connects vertex_of[d] with face_of[d];
        # dart 2d sits at the vertex, 2d+1 at the face node.
        vertex_of = [0] * (2 * self.dart_count)
        sigma = [0] * (2 * self.dart_count)
        for d in range(self.dart_count):
            vertex_of[2 * d] = self.vertex_of[d]
            vertex_of[2 * d + 1] = nv + face_of[d]
        for d in range(self.dart_count):
            sigma[2 * d] = 2 * self.sigma[d]
        for orbit in faces:
            L = len(orbit)
            for i, d in enumerate(orbit):
                sigma[2 * d + 1] = 2 * orbit[(i - 1) % L] + 1
        rs = RotationSystem(nv + len(faces), vertex_of, sigma)
        rs.check()
        if rs.euler_characteristic() != self.euler_characteristic():
            # flip the face rotations if the orientation convention mismatches
            for orbit in faces:
                L = len(orbit)
                for i, d in enumerate(orbit):
                    rs.sigma[2 * d + 1] = 2 * orbit[(i + 1) % L] + 1
            rs.check()
            if rs.euler_characteristic() != self.euler_characteristic():
                raise AssertionError("radial graph does not embed in the same surface")
        return rs


@dataclass(frozen=True)
class EmbeddedGraph:
    """A simple graph with a cyclic neighbour order at every vertex."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rotation) != self.graph.n:
            raise GraphError("one rotation list per vertex required")
        for v in range(self.graph.n):
            if frozenset(self.rotation[v]) != self.graph.adj[v] or len(self.rotation[v]) != len(
                self.graph.adj[v]
            ):
                raise GraphError(f"rotation at {v} is not a cyclic order of its neighbours")

    def rotation_system(self) -> RotationSystem:
        return RotationSystem.from_rotations(self.graph.n, self.rotation)


def trace_faces(e: EmbeddedGraph) -> list[list[int]]:
    """Facial walks (vertex sequences); every dart is used exactly once."""
    return e.rotation_system().face_walks()


def euler_genus(e: EmbeddedGraph) -> int:
    """2 - chi per connected component, summed."""
    rs = e.rotation_system()
    return sum(2 - chi for _, chi in rs.euler_characteristic_by_component())


def embedded_from_faces(n: int, faces: Sequence[Sequence[int]]) -> EmbeddedGraph:
    rs = RotationSystem.from_faces(n, faces)
    return embedded_from_rs(rs)


def embedded_from_rs(rs: RotationSystem) -> EmbeddedGraph:
    edges = set()
    for d in range(0, rs.dart_count, 2):
        u, v = rs.vertex_of[d], rs.vertex_of[d ^ 1]
        if u == v:
            raise GraphError("loops cannot be exported to a simple embedded graph")
        if (min(u, v), max(u, v)) in edges:
            raise GraphError("parallel edges cannot be exported to a simple embedded graph")
        edges.add((min(u, v), max(u, v)))
    g = Graph(rs.n, edges)
    rotation = []
    for v in range(rs.n):
        rotation.append(tuple(rs.vertex_of[d ^ 1] for d in rs.rotation_at(v)))
    return EmbeddedGraph(g, tuple(rotation))


def _cycle_darts(rs: RotationSystem, cycle: Sequence[int]) -> list[int]:
    return [rs.dart_between(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def _cut_pieces(rs: RotationSystem, cycle_darts: list[int]) -> tuple[bool, list[int]]:
    """Cut along the cycle; returns (separates, characteristics of the pieces
    containing the two cycle copies)."""
    m = len(cycle_darts)
    left_repr = rs.vertex_of[cycle_darts[0]]
    cut = rs.cut_along(cycle_darts)
    right_repr = rs.n  # first right copy id
    chis = cut.euler_characteristic_by_component()
    left_chi = right_chi = None
    same = False
    for comp, chi in chis:
        if left_repr in comp and right_repr in comp:
            same = True
            left_chi = right_chi = chi
        elif left_repr in comp:
            left_chi = chi
        elif right_repr in comp:
            right_chi = chi
    return (not same), [c for c in (left_chi, right_chi) if c is not None]


def cut_contractibility(e: EmbeddedGraph, cycle: Sequence[int]) -> bool:
    """True iff the cycle bounds a disk: cutting along it must split off a
    piece of Euler characteristic 2."""
    cyc = list(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise GraphError("need a simple cycle of length >= 3")
    for i in range(len(cyc)):
        if not e.graph.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]):
            raise GraphError("not a cycle of the graph")
    rs = e.rotation_system()
    return _rs_cycle_contractible(rs, _cycle_darts(rs, cyc))


def _rs_cycle_contractible(rs: RotationSystem, cycle_darts: list[int]) -> bool:
    separates, chis = _cut_pieces(rs, cycle_darts)
    return separates and any(chi == 2 for chi in chis)


def face_width(e: EmbeddedGraph, cap: int = 400) -> float:
    """Minimum number of graph points on a noncontractible closed curve.

    Computed as half the length of a shortest noncontractible cycle of the
    radial graph; embeddings of genus 0 return UNBOUNDED.  Raises
    SizeLimitError when the radial graph exceeds `cap` vertices.
    """
    rs = e.rotation_system()
    if all(chi == 2 for _, chi in rs.euler_characteristic_by_component()):
        return UNBOUNDED
    radial = rs.radial()
    if radial.n > cap:
        raise SizeLimitError(f"radial graph has {radial.n} vertices, cap is {cap}")
    L = _shortest_noncontractible_cycle_length(radial)
    if L is None:
        return UNBOUNDED
    return L // 2


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    """Rotation- and direction-independent key for a vertex cycle."""
    best = None
    L = len(cycle)
    for seq in (cycle, cycle[::-1]):
        for shift in range(L):
            cand = tuple(seq[shift:] + seq[:shift])
            if best is None or cand < best:
                best = cand
    return best


def _shortest_noncontractible_cycle_length(rs: RotationSystem) -> int | None:
    """Shortest noncontractible cycle length via BFS cycles through every
    vertex (the noncontractible family obeys the 3-path condition)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(rs.n)}
    for d in range(0, rs.dart_count, 2):
        u, v = rs.vertex_of[d], rs.vertex_of[d ^ 1]
        adj[u].append((v, d))
        adj[v].append((u, d))
    for v in adj:
        adj[v].sort()

    candidates: dict[tuple[int, ...], list[int]] = {}
    for root in range(rs.n):
        parent: dict[int, tuple[int, int]] = {root: (-1, -1)}
        depth = {root: 0}
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for w, eid in adj[u]:
                if w not in parent:
                    parent[w] = (u, eid)
                    depth[w] = depth[u] + 1
                    queue.append(w)
        for d in range(0, rs.dart_count, 2):
            x, y = rs.vertex_of[d], rs.vertex_of[d ^ 1]
            if x not in parent or y not in parent:
                continue
            if parent.get(y, (None,))[0] == x and parent[y][1] == d:
                continue
            if parent.get(x, (None,))[0] == y and parent[x][1] == d:
                continue
            # path x..lca..y plus the edge forms a cycle when the tree paths
            # only meet at the lca
            px, py = [x], [y]
            a, b = x, y
            while depth[a] > depth[b]:
                a = parent[a][0]
                px.append(a)
            while depth[b] > depth[a]:
                b = parent[b][0]
                py.append(b)
            while a != b:
                a = parent[a][0]
                b = parent[b][0]
                px.append(a)
                py.append(b)
            if px[-1] != py[-1]:
                continue
            cycle = px + py[-2::-1]
            if len(set(cycle)) != len(cycle) or len(cycle) < 3:
                continue
            candidates.setdefault(_canonical_cycle(cycle), cycle)

    ordered = sorted(candidates.values(), key=lambda c: (len(c), c))
    for cyc in ordered:
        try:
            darts = _cycle_darts(rs, cyc)
        except GraphError:
            continue
        if not _rs_cycle_contractible(rs, darts):
            return len(cyc)
    return None


def face_width_deletion_check(e: EmbeddedGraph, x: Iterable[int], cap: int = 400) -> bool:
    """Deleting t vertices lowers the face-width by at most t."""
    xs = frozenset(x)
    before = face_width(e, cap=cap)
    rs_after = e.rotation_system().delete_vertices(xs)
    after_embedded = embedded_from_rs(rs_after)
    after = face_width(after_embedded, cap=cap)
    if before is UNBOUNDED or before == UNBOUNDED:
        return True
    if after == UNBOUNDED:
        return True
    return after >= before - len(xs)


# -- refinement -----------------------------------------------------------------


def refine_all_faces(e: EmbeddedGraph) -> EmbeddedGraph:
    """Subdivide every edge once and star every face from a new centre vertex
    adjacent to all vertices of its subdivided boundary cycle.  Keeps the
    surface and at least doubles the face-width.  Requires every face to be
    bounded by a simple cycle."""
    rs = e.rotation_system()
    walks = rs.face_walks()
    for walk in walks:
        if len(set(walk)) != len(walk):
            raise GraphError("refinement needs a closed 2-cell embedding (a face walk repeats a vertex)")
    n = e.graph.n
    edge_list = e.graph.sorted_edges()
    mid = {edge: n + i for i, edge in enumerate(edge_list)}
    center0 = n + len(edge_list)
    new_faces: list[list[int]] = []
    for fi, walk in enumerate(walks):
        c = center0 + fi
        L = len(walk)
        for i in range(L):
            u, v = walk[i], walk[(i + 1) % L]
            m = mid[(min(u, v), max(u, v))]
            new_faces.append([u, m, c])
            new_faces.append([m, v, c])
    out = embedded_from_faces(center0 + len(walks), new_faces)
    if euler_genus(out) != euler_genus(e):
        raise AssertionError("refinement changed the surface")
    return out


# -- shipped base embeddings -----------------------------------------------------


def torus_grid(rows: int, cols: int) -> EmbeddedGraph:
    """The Cm x Cn quadrangulation of the torus."""
    if rows < 3 or cols < 3:
        raise GraphError("torus grid needs both sides >= 3")

    def vid(i: int, j: int) -> int:
        return (i % rows) * cols + (j % cols)

    rotation = []
    for i in range(rows):
        for j in range(cols):
            rotation.append((vid(i - 1, j), vid(i, j + 1), vid(i + 1, j), vid(i, j - 1)))
    edges = set()
    for i in range(rows):
        for j in range(cols):
            edges.add((min(vid(i, j), vid(i, j + 1)), max(vid(i, j), vid(i, j + 1))))
            edges.add((min(vid(i, j), vid(i + 1, j)), max(vid(i, j), vid(i + 1, j))))
    return EmbeddedGraph(Graph(rows * cols, edges), tuple(rotation))


def double_torus_base() -> EmbeddedGraph:
    """A genus-2 base: two 3x3 torus grids joined by a 4-edge tube replacing
    one quadrangle face of each."""
    g1 = torus_grid(3, 3)
    rs1 = g1.rotation_system()
    faces1 = rs1.face_walks()
    faces2 = [[v + 9 for v in w] for w in faces1]
    f1 = faces1[0]
    f2 = faces2[0]
    if len(f1) != 4 or len(f2) != 4:
        raise AssertionError("expected quadrangle faces")
    a1, b1, c1, d1 = f1
    a2, b2, c2, d2 = f2
    tube = [
        [a1, b1, d2, a2],
        [b1, c1, c2, d2],
        [c1, d1, b2, c2],
        [d1, a1, a2, b2],
    ]
    all_faces = faces1[1:] + faces2[1:] + tube
    out = embedded_from_faces(18, all_faces)
    if euler_genus(out) != 4:
        raise AssertionError(f"double torus base has Euler genus {euler_genus(out)}")
    return out


# -- serialization ----------------------------------------------------------------


ROTATION_FORMAT = "minorlab.rotation_system/1"


def embedding_to_json(e: EmbeddedGraph) -> str:
    doc = {
        "format": ROTATION_FORMAT,
        "n": e.graph.n,
        "rotation": [list(r) for r in e.rotation],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def embedding_from_json(text: str) -> EmbeddedGraph:
    doc = json.loads(text)
    if doc.get("format") != ROTATION_FORMAT:
        raise GraphError(f"not a rotation-system document: {doc.get('format')!r}")
    n = doc["n"]
    rotation = tuple(tuple(r) for r in doc["rotation"])
    edges = set()
    for v in range(n):
        for w in rotation[v]:
            edges.add((min(v, w), max(v, w)))
    return EmbeddedGraph(Graph(n, edges), rotation)
