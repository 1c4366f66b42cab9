"""Seeded random instance generators for the property-test campaigns."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import Graph, VertexSet
from .treedec import TreeDecomposition


def random_partial_3tree(n: int, seed: int, keep_prob: float = 0.75) -> tuple[Graph, TreeDecomposition]:
    """A random subgraph of a random 3-tree, with the witnessing width-3
    decomposition that the 3-tree construction hands us for free."""
    if n < 4:
        raise ValueError("needs n >= 4")
    rng = random.Random(seed)
    edges = {(u, v) for u in range(4) for v in range(u + 1, 4)}
    triangles = [(a, b, c) for a in range(4) for b in range(a + 1, 4) for c in range(b + 1, 4)]
    bags: dict[int, VertexSet] = {0: frozenset({0, 1, 2, 3})}
    tree_edges: list[tuple[int, int]] = []
    node_of_triangle: dict[tuple[int, int, int], int] = {t: 0 for t in triangles}
    for v in range(4, n):
        t = rng.choice(triangles)
        for u in t:
            edges.add((u, v))
        node = len(bags)
        bags[node] = frozenset(set(t) | {v})
        tree_edges.append((node_of_triangle[t], node))
        for new_t in [(t[0], t[1], v), (t[0], t[2], v), (t[1], t[2], v)]:
            triangles.append(new_t)
            node_of_triangle[new_t] = node
    kept = [e for e in sorted(edges) if rng.random() < keep_prob]
    g = Graph(n, kept)
    d = TreeDecomposition(Graph(len(bags), tree_edges), bags)
    return g, d


def random_connected_graph(n: int, seed: int, extra_edge_prob: float = 0.25) -> Graph:
    """Random spanning tree plus independently kept extra edges."""
    rng = random.Random(seed)
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        u, v = order[i], order[j]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return Graph(n, edges)


@dataclass(frozen=True)
class CylinderInstance:
    """A plane annulus graph with concentric ring cycles, a linkage from the
    innermost ring to the outermost, and an optional blob attached outside."""

    graph: Graph
    cycles: tuple[tuple[int, ...], ...]  # cycles[0] outermost
    paths: tuple[tuple[int, ...], ...]
    x: VertexSet  # on the innermost cycle
    y: VertexSet  # on the outermost cycle
    inner_vertices: VertexSet  # vertices of the plane part (rings)

    @property
    def s(self) -> int:
        return len(self.cycles)

    @property
    def t(self) -> int:
        return len(self.paths)


def cylinder_instance(
    s: int,
    t: int,
    seed: int,
    ring_size: int | None = None,
    blob: bool = True,
    peak: bool | None = None,
) -> CylinderInstance:
    """Concentric grid rings carrying a spiralling linkage.

    Ring j (0-based, 0 outermost) has m vertices; consecutive rings are joined
    by radial edges at every position plus seeded diagonals (planar chords of
    quad faces).  The t linkage paths drift sideways in parallel while moving
    outward, so disjointness is structural.  Seeded extras splice a local peak
    (a dip back toward an outer ring) into the last path, or a detour through
    a blob attached outside ring 0, both of which break orthogonality.
    """
    rng = random.Random(seed)
    gap = 6  # spoke spacing; dips, slides and blob anchors stay within it
    m = ring_size or max(8, gap * t + 2)
    n = s * m

    def vid(ring: int, pos: int) -> int:
        return ring * m + pos % m

    edges: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> None:
        if u != v:
            edges.add((min(u, v), max(u, v)))

    for j in range(s):
        for i in range(m):
            add(vid(j, i), vid(j, i + 1))
    for j in range(s - 1):
        for i in range(m):
            add(vid(j, i), vid(j + 1, i))
        for _ in range(rng.randrange(0, m // 2)):
            i = rng.randrange(m)
            add(vid(j, i), vid(j + 1, i + 1))  # diagonal inside one quad face
    inner = frozenset(range(n))

    # Parallel spirals: a common per-ring drift keeps the paths' columns a
    # fixed `gap` apart.  Total drift is capped so splices cannot wrap into a
    # neighbouring column.
    off = rng.randrange(m)
    spokes = [(off + gap * i) % m for i in range(t)]
    drift = [0] * s
    for j in range(s - 2, -1, -1):
        drift[j] = min(drift[j + 1] + rng.randrange(0, 2), 4)
    paths: list[list[int]] = []
    for sp in spokes:
        path = [vid(s - 1, sp + drift[s - 1])]
        for j in range(s - 2, -1, -1):
            pos = sp + drift[j + 1]
            path.append(vid(j, pos))
            for step in range(drift[j] - drift[j + 1]):
                path.append(vid(j, pos + step + 1))
        paths.append(path)

    inject_peak = rng.random() < 0.5 if peak is None else peak
    if inject_peak and s >= 3:
        # Dip: ride one ring outward and back on unused columns, then descend
        # along a shifted column.  Ring jr and ring jr-1 each end up with two
        # separate visits.
        sp = spokes[-1]
        jr = rng.randrange(1, s - 1)
        base = sp + drift[jr]
        c0, c1, c2 = base + 1, base + 2, base + 3
        prefix = paths[-1][: paths[-1].index(vid(jr, base)) + 1]
        spliced = prefix + [
            vid(jr, c0),
            vid(jr - 1, c0),
            vid(jr - 1, c1),
            vid(jr, c1),
            vid(jr, c2),
        ]
        spliced.extend(vid(j, c2) for j in range(jr - 1, -1, -1))
        others = {v for q in paths[:-1] for v in q}
        if len(set(spliced)) == len(spliced) and not others & set(spliced):
            paths[-1] = spliced

    next_id = n
    if blob and rng.random() < 0.7:
        # Blob outside ring 0, anchored next to the first path's endpoint; the
        # path detours through it and returns to ring 0 two columns over.
        end_col = paths[0][-1] % m
        a0, a1 = vid(0, end_col + 1), vid(0, end_col + 3)
        used = {v for q in paths for v in q}
        if a0 not in used and a1 not in used:
            b0, b1 = next_id, next_id + 1
            next_id += 2
            add(paths[0][-1], a0)  # ring edge, already present
            add(a0, b0)
            add(b0, b1)
            add(b1, a1)
            paths[0] = paths[0] + [a0, b0, b1, a1]

    g = Graph(next_id, edges)
    cycles = tuple(tuple(vid(j, i) for i in range(m)) for j in range(s))
    tpaths = tuple(tuple(p) for p in paths)
    x = frozenset(p[0] for p in tpaths)
    y = frozenset(p[-1] for p in tpaths)
    return CylinderInstance(g, cycles, tpaths, x, y, inner)
