"""Simple undirected graphs and the vertex-disjoint-path primitives.

Vertices are always the integers 0..n-1.  Graphs are immutable after
construction, so they can be shared freely between searches and cached by
identity of their vertex set.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

VertexSet = frozenset[int]
Edge = tuple[int, int]


class GraphError(ValueError):
    """Domain error: an operation was called outside its precondition."""


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A loopless simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        es = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            es.add(_norm_edge(u, v))
        self.n = n
        self.edges: frozenset[Edge] = frozenset(es)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_bits(self) -> tuple[int, ...]:
        """Neighborhoods as bitmasks; the workhorse of the hot search loops."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- basic traversal ----------------------------------------------------

    def component_of(self, start: int, allowed: VertexSet | None = None) -> set[int]:
        """Vertices reachable from start, optionally staying inside `allowed`."""
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    stack.append(w)
        return seen

    def components(self) -> list[set[int]]:
        out = []
        seen: set[int] = set()
        for v in range(self.n):
            if v not in seen:
                comp = self.component_of(v)
                seen |= comp
                out.append(comp)
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.component_of(0)) == self.n

    def is_connected_subset(self, vs: Iterable[int]) -> bool:
        vs = frozenset(vs)
        if not vs:
            return False
        start = next(iter(vs))
        return len(self.component_of(start, allowed=vs)) == len(vs)


# -- constructors ------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex (r,c) has id r*cols + c."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union; vertex ids of the i-th part are shifted by the sizes before it."""
    n = 0
    edges = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, edges)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on `keep`, compacted to 0..k-1.

    Returns the new graph and the sorted list of original ids; original id of
    new vertex i is the i-th list entry.
    """
    old = sorted(set(keep))
    pos = {v: i for i, v in enumerate(old)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return Graph(len(old), edges), old


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contract edge e; the merged vertex keeps the smaller id, ids above the
    larger one shift down by one."""
    u, v = _norm_edge(*e)
    if (u, v) not in g.edges:
        raise GraphError(f"edge ({u},{v}) not in graph")

    def relabel(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    edges = set()
    for a, b in g.edges:
        a2, b2 = relabel(a), relabel(b)
        if a2 != b2:
            edges.add(_norm_edge(a2, b2))
    return Graph(g.n - 1, edges)


# -- disjoint paths and connectivity (Menger via unit-capacity max flow) ------


def _max_vertex_disjoint_paths(
    g: Graph,
    sources: VertexSet,
    sinks: VertexSet,
    free: VertexSet = frozenset(),
    edge_cost: dict[Edge, int] | None = None,
) -> list[list[int]]:
    """Maximum set of vertex-disjoint paths from `sources` to `sinks`.

    Paths touch `sources` only at their first vertex and `sinks` only at their
    last.  Vertices in `free` have unbounded capacity (used for the
    internally-disjoint variant).  If `edge_cost` is given, among maximum path
    sets one minimising the total edge cost is returned (successive shortest
    augmenting paths; costs must be nonnegative).
    """
    n = g.n
    # Node-split digraph: for vertex v, nodes 2v (in) and 2v+1 (out).
    # Arc capacities are implicit (all 1, except split arcs of `free` vertices).
    INF = n + 1
    cap: dict[tuple[int, int], int] = {}
    cost: dict[tuple[int, int], int] = {}
    S, T = 2 * n, 2 * n + 1

    def add(a: int, b: int, c: int, w: int = 0) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + c
        cap.setdefault((b, a), 0)
        cost[(a, b)] = w
        cost.setdefault((b, a), -w)

    for v in range(n):
        add(2 * v, 2 * v + 1, INF if v in free else 1)
    for v in sources:
        # A vertex in both X and Y only ever carries the trivial path, once.
        add(S, 2 * v, INF if v in free and v not in sinks else 1)
    for v in sinks:
        add(2 * v + 1, T, INF if v in free and v not in sources else 1)
    for u, v in g.sorted_edges():
        w = edge_cost.get((u, v), 0) if edge_cost else 0
        # u -> v traversal is forbidden when u is a sink-only vertex or v a
        # source-only vertex: sinks end paths, sources start them.
        if u not in sinks and v not in sources:
            add(2 * u + 1, 2 * v, 1, w)
        if v not in sinks and u not in sources:
            add(2 * v + 1, 2 * u, 1, w)

    out: dict[int, list[int]] = {}
    for a, b in cap:
        out.setdefault(a, []).append(b)
    for a in out:
        out[a].sort()

    flow: dict[tuple[int, int], int] = {k: 0 for k in cap}

    def augment_spfa() -> bool:
        # Bellman-Ford based shortest augmenting path (deterministic).
        from collections import deque

        dist = {S: 0}
        parent: dict[int, int] = {}
        in_q = {S}
        queue = deque([S])
        while queue:
            a = queue.popleft()
            in_q.discard(a)
            for b in out.get(a, ()):  # sorted, so ties are deterministic
                if cap[(a, b)] - flow[(a, b)] > 0:
                    nd = dist[a] + cost[(a, b)]
                    if b not in dist or nd < dist[b]:
                        dist[b] = nd
                        parent[b] = a
                        if b not in in_q:
                            in_q.add(b)
                            queue.append(b)
        if T not in dist:
            return False
        b = T
        while b != S:
            a = parent[b]
            flow[(a, b)] += 1
            flow[(b, a)] -= 1
            b = a
        return True

    while augment_spfa():
        pass

    # Decompose the flow into paths, following out-arcs in sorted order.
    used: dict[tuple[int, int], int] = {k: max(v, 0) for k, v in flow.items()}
    paths: list[list[int]] = []
    starts = sorted(sources)
    for s in starts:
        while used.get((S, 2 * s), 0) > 0:
            used[(S, 2 * s)] -= 1
            path = [s]
            node = 2 * s
            while True:
                node += 1  # v_in -> v_out
                nxt = None
                for b in out.get(node, ()):
                    if used.get((node, b), 0) > 0:
                        nxt = b
                        break
                if nxt is None:
                    raise AssertionError("flow decomposition lost an arc")
                used[(node, nxt)] -= 1
                if nxt == T:
                    break
                node = nxt
                path.append(node // 2)
            paths.append(path)
    return paths


def disjoint_paths(g: Graph, x: Iterable[int], y: Iterable[int], internal_only: bool = False) -> list[list[int]]:
    """Maximum-cardinality vertex-disjoint X-Y paths.

    Each path meets X only at its first vertex and Y only at its last.  With
    `internal_only`, members of X and Y may be shared between paths, i.e. the
    paths only need to be internally disjoint.
    """
    xs, ys = frozenset(x), frozenset(y)
    if not xs or not ys:
        raise GraphError("X and Y must be nonempty")
    for v in xs | ys:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} outside graph")
    free = (xs | ys) if internal_only else frozenset()
    return _max_vertex_disjoint_paths(g, xs, ys, free=free)


def min_xy_separator_size(g: Graph, x: Iterable[int], y: Iterable[int]) -> int:
    """Size of a minimum X-Y vertex separator (Menger dual of disjoint_paths)."""
    return len(disjoint_paths(g, x, y))


def local_connectivity(g: Graph, s: int, t: int) -> int:
    """Number of internally disjoint s-t paths (kappa(s,t); infinite-ish for edges)."""
    if g.has_edge(s, t):
        raise GraphError("local connectivity is only defined for non-adjacent pairs")
    return len(disjoint_paths(g, [s], [t], internal_only=True))


def vertex_connectivity(g: Graph) -> int:
    """kappa(g): the minimum number of vertex deletions that disconnect g or
    leave a single vertex.  Complete graphs give n-1, disconnected graphs 0.
    """
    if g.n < 2:
        raise GraphError("connectivity needs at least 2 vertices")
    if not g.is_connected():
        return 0
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    # Esfahanian-Hakimi: a minimum cut either avoids a fixed vertex v (then it
    # separates v from some non-neighbour) or contains v (then it separates two
    # non-adjacent neighbours of v).
    v = min(range(g.n), key=lambda u: (g.degree(u), u))
    best = g.degree(v)
    for t in range(g.n):
        if t != v and not g.has_edge(v, t):
            best = min(best, local_connectivity(g, v, t))
    nbrs = sorted(g.adj[v])
    for a, b in combinations(nbrs, 2):
        if not g.has_edge(a, b):
            best = min(best, local_connectivity(g, a, b))
    return best


def internally_disjoint_path_count(g: Graph, v: int, targets: Iterable[int]) -> int:
    """Max paths from v to the set `targets` that pairwise share only v."""
    ts = frozenset(targets) - {v}
    if not ts:
        return 0
    return len(_max_vertex_disjoint_paths(g, frozenset([v]), ts, free=frozenset([v])))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
