"""Explicit gadget graphs: ladders, fans, and walls, with their canonical
clique models.

The fan F(p, p-3) carries a hand-built K_p model, and k translated copies of
it pack disjointly into F(kp, k(p-3)); walls come with brick and boundary
structure read off their plane coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph, GraphError, VertexSet
from .minors import MinorModel
from .graphs import complete_graph


@dataclass(frozen=True)
class Ladder:
    length: int
    graph: Graph
    top: tuple[int, ...]  # u_1..u_l
    bottom: tuple[int, ...]  # v_1..v_l

    def roles(self) -> dict[int, str]:
        out = {v: f"top[{i + 1}]" for i, v in enumerate(self.top)}
        out.update({v: f"bottom[{i + 1}]" for i, v in enumerate(self.bottom)})
        return out


@dataclass(frozen=True)
class Fan:
    length: int
    hub_count: int
    graph: Graph
    ladder: Ladder
    hubs: tuple[int, ...]  # w_1..w_n

    def roles(self) -> dict[int, str]:
        out = self.ladder.roles()
        out.update({v: f"hub[{i + 1}]" for i, v in enumerate(self.hubs)})
        return out


@dataclass(frozen=True)
class Wall:
    r: int
    graph: Graph
    coords: dict[int, tuple[int, int]]  # vertex -> (row, col), 1-based
    bricks: tuple[tuple[int, ...], ...]
    boundary: tuple[int, ...]

    def vertex_at(self, row: int, col: int) -> int:
        return (row - 1) * self.r + (col - 1)

    def roles(self) -> dict[int, str]:
        return {v: f"v[{i}][{j}]" for v, (i, j) in self.coords.items()}


def build_ladder(length: int) -> Ladder:
    """Two horizontal paths u_1..u_l and v_1..v_l joined by all rungs u_i v_i."""
    if length < 1:
        raise GraphError("ladder length must be >= 1")
    top = tuple(range(length))
    bottom = tuple(range(length, 2 * length))
    edges = []
    for i in range(length - 1):
        edges.append((top[i], top[i + 1]))
        edges.append((bottom[i], bottom[i + 1]))
    edges.extend((top[i], bottom[i]) for i in range(length))
    return Ladder(length, Graph(2 * length, edges), top, bottom)


def build_fan(length: int, hubs: int) -> Fan:
    """A ladder plus `hubs` independent vertices each joined to every bottom
    vertex."""
    if hubs < 0:
        raise GraphError("hub count must be >= 0")
    ladder = build_ladder(length)
    hub_ids = tuple(range(2 * length, 2 * length + hubs))
    edges = list(ladder.graph.edges)
    for w in hub_ids:
        edges.extend((w, v) for v in ladder.bottom)
    return Fan(length, hubs, Graph(2 * length + hubs, edges), ladder, hub_ids)


def fan_kp_model(p: int) -> MinorModel:
    """The canonical K_p model in F(p, p-3): p-3 two-vertex sets {v_i, w_i},
    singletons {v_{p-2}} and {v_{p-1}}, and the hook {v_p, u_p, u_{p-1}, u_{p-2}}."""
    if p < 4:
        raise GraphError("the fan model needs p >= 4")
    fan = build_fan(p, p - 3)
    u, v, w = fan.ladder.top, fan.ladder.bottom, fan.hubs
    sets: dict[int, VertexSet] = {}
    for i in range(p - 3):
        sets[i] = frozenset({v[i], w[i]})
    sets[p - 3] = frozenset({v[p - 3]})
    sets[p - 2] = frozenset({v[p - 2]})
    sets[p - 1] = frozenset({v[p - 1], u[p - 1], u[p - 2], u[p - 3]})
    return MinorModel(fan.graph, complete_graph(p), sets)


def fan_packing_model(p: int, k: int) -> list[MinorModel]:
    """k disjoint K_p models in F(kp, k(p-3)): copy j lives on ladder columns
    (j-1)p+1..jp and hubs (j-1)(p-3)+1..j(p-3)."""
    if p < 4:
        raise GraphError("the fan model needs p >= 4")
    if k < 1:
        raise GraphError("k must be >= 1")
    fan = build_fan(k * p, k * (p - 3))
    u, v, w = fan.ladder.top, fan.ladder.bottom, fan.hubs
    pattern = complete_graph(p)
    models = []
    for j in range(k):
        cols = range(j * p, (j + 1) * p)
        hubs = range(j * (p - 3), (j + 1) * (p - 3))
        c = list(cols)
        h = list(hubs)
        sets: dict[int, VertexSet] = {}
        for i in range(p - 3):
            sets[i] = frozenset({v[c[i]], w[h[i]]})
        sets[p - 3] = frozenset({v[c[p - 3]]})
        sets[p - 2] = frozenset({v[c[p - 2]]})
        sets[p - 1] = frozenset({v[c[p - 1]], u[c[p - 1]], u[c[p - 2]], u[c[p - 3]]})
        models.append(MinorModel(fan.graph, pattern, sets))
    return models


# -- walls --------------------------------------------------------------------


def build_wall(r: int) -> Wall:
    """The r-wall: r horizontal paths with vertical edges where row and column
    are both odd or both even (1-based)."""
    if r < 2:
        raise GraphError("wall parameter must be >= 2")
    coords = {}
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            coords[(i - 1) * r + (j - 1)] = (i, j)

    def vid(i: int, j: int) -> int:
        return (i - 1) * r + (j - 1)

    edges = []
    for i in range(1, r + 1):
        for j in range(1, r):
            edges.append((vid(i, j), vid(i, j + 1)))
    for i in range(1, r):
        for j in range(1, r + 1):
            if (i % 2 == 1 and j % 2 == 1) or (i % 2 == 0 and j % 2 == 0):
                edges.append((vid(i, j), vid(i + 1, j)))
    g = Graph(r * r, edges)

    bricks = []
    for i in range(1, r):
        for j in range(1, r - 1):
            if i % 2 == j % 2:
                bricks.append(
                    (vid(i, j), vid(i, j + 1), vid(i, j + 2), vid(i + 1, j + 2), vid(i + 1, j + 1), vid(i + 1, j))
                )
    boundary: tuple[int, ...] = ()
    block = _largest_block(g)
    if block is not None:
        boundary = outer_cycle(g, block, coords)
    return Wall(r, g, coords, tuple(bricks), boundary)


def subdivide_wall(wall: Wall, times: int) -> tuple[Graph, dict[int, str]]:
    """A subdivision TH_r of the wall: every edge gains `times` inner vertices.
    Returns the graph and role annotations (originals keep their wall role)."""
    if times < 0:
        raise GraphError("subdivision count must be >= 0")
    roles = wall.roles()
    edges = []
    nxt = wall.graph.n
    for u, v in wall.graph.sorted_edges():
        chain = [u] + list(range(nxt, nxt + times)) + [v]
        for w in chain[1:-1]:
            roles[w] = f"sub[{u}-{v}]"
        nxt += times
        edges.extend(zip(chain, chain[1:]))
    return Graph(nxt, edges), roles


def _articulation_blocks(g: Graph, within: VertexSet) -> list[frozenset[int]]:
    """Vertex sets of the biconnected blocks of g[within] (size >= 2)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[tuple[int, int]] = []
    blocks: list[frozenset[int]] = []
    counter = [0]

    def dfs(root: int) -> None:
        work = [(root, None, iter(sorted(g.adj[root] & within)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        while work:
            u, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    stack.append((u, w))
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    work.append((w, u, iter(sorted(g.adj[w] & within))))
                    advanced = True
                    break
                elif index[w] < index[u]:
                    stack.append((u, w))
                    low[u] = min(low[u], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pu = work[-1][0]
                low[pu] = min(low[pu], low[u])
                if low[u] >= index[pu]:
                    comp = set()
                    while stack and (index[stack[-1][0]] >= index[u] or stack[-1] == (pu, u)):
                        a, b = stack.pop()
                        comp.update((a, b))
                        if (a, b) == (pu, u):
                            break
                    if comp:
                        blocks.append(frozenset(comp))

    for v in sorted(within):
        if v not in index:
            dfs(v)
    return blocks


def _largest_block(g: Graph, within: VertexSet | None = None) -> frozenset[int] | None:
    """The unique largest 2-connected block (>= 3 vertices), or None."""
    vs = within if within is not None else frozenset(range(g.n))
    blocks = [b for b in _articulation_blocks(g, vs) if len(b) >= 3]
    if not blocks:
        return None
    best = max(len(b) for b in blocks)
    top = [b for b in blocks if len(b) == best]
    if len(top) > 1:
        return None  # no unique maximal block
    return top[0]


def outer_cycle(g: Graph, block: VertexSet, coords: dict[int, tuple[int, int]]) -> tuple[int, ...]:
    """Outer cycle of a 2-connected plane piece, traced from its coordinates.

    Faces are traced with the rotation induced by angular order; the outer
    face is the one enclosing the largest area.
    """
    rotation: dict[int, list[int]] = {}
    for v in sorted(block):
        nbrs = sorted(g.adj[v] & block)
        ri, ci = coords[v]
        nbrs.sort(key=lambda w: math.atan2(-(coords[w][0] - ri), coords[w][1] - ci))
        rotation[v] = nbrs

    def next_dart(u: int, v: int) -> tuple[int, int]:
        rot = rotation[v]
        i = rot.index(u)
        return v, rot[(i - 1) % len(rot)]

    seen: set[tuple[int, int]] = set()
    best_walk: list[int] | None = None
    best_area = 0.0
    for u in sorted(block):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = [u]
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(b)
                a, b = next_dart(a, b)
            walk.pop()
            area = 0.0
            for i in range(len(walk)):
                r1, c1 = coords[walk[i]]
                r2, c2 = coords[walk[(i + 1) % len(walk)]]
                area += c1 * (-r2) - c2 * (-r1)
            if abs(area) > best_area:
                best_area = abs(area)
                best_walk = walk
    if best_walk is None:
        raise GraphError("no face found")
    if len(set(best_walk)) != len(best_walk):
        raise GraphError("outer walk is not a simple cycle")
    return tuple(best_walk)


def boundary_cycles(wall: Wall, m: int) -> list[tuple[int, ...]]:
    """The first m boundary cycles: peel the outer cycle of the unique largest
    2-connected block, delete it, and repeat.  Raises with the feasible count
    when m is too large."""
    if m < 1:
        raise GraphError("m must be >= 1")
    g = wall.graph
    remaining = frozenset(range(g.n))
    out: list[tuple[int, ...]] = []
    for i in range(m):
        block = _largest_block(g, remaining)
        if block is None:
            raise GraphError(f"only {i} boundary cycles exist, requested {m}")
        cyc = outer_cycle(g, block, wall.coords)
        out.append(cyc)
        remaining -= frozenset(cyc)
    return out


def encloses(wall: Wall, cycle: tuple[int, ...], inner: VertexSet) -> bool:
    """Do all `inner` vertices lie strictly inside the cycle polygon?
    Ray casting over the wall's integer grid coordinates."""
    poly = [wall.coords[v] for v in cycle]
    edges = list(zip(poly, poly[1:] + poly[:1]))
    for v in inner:
        r, c = wall.coords[v]
        ray_r = r + 0.25
        crossings = 0
        for (r1, c1), (r2, c2) in edges:
            if c1 != c2:
                continue  # horizontal edges cannot cross the horizontal ray
            if c1 <= c:
                continue
            lo, hi = min(r1, r2), max(r1, r2)
            if lo <= ray_r <= hi:
                crossings += 1
        if crossings % 2 == 0:
            return False
    return True
