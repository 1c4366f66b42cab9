"""Tree and path decompositions: validation, exact width, min-fill heuristic.

Exact treewidth runs a memoized search over elimination orderings (subset
dynamic programming), exact pathwidth the analogous search over vertex
layouts; both are capped because the state space is 2^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph, GraphError, VertexSet, induced_subgraph, iter_bits
from .minors import Violation


class SizeLimitError(GraphError):
    """Input exceeds the configured exact-search cap; use the heuristic."""


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: dict[int, VertexSet]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags.values()) - 1


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[VertexSet, ...]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    def as_tree(self) -> TreeDecomposition:
        t = len(self.bags)
        tree = Graph(t, [(i, i + 1) for i in range(t - 1)])
        return TreeDecomposition(tree, {i: b for i, b in enumerate(self.bags)})


def validate_decomposition(
    g: Graph, d: TreeDecomposition | PathDecomposition, vertices: Iterable[int] | None = None
) -> Violation | None:
    """Check the three decomposition axioms; None means valid.

    `vertices` restricts the decomposed graph to an induced subgraph (used to
    validate restrictions); by default all of g must be covered.
    """
    if isinstance(d, PathDecomposition):
        d = d.as_tree()
    vs = frozenset(vertices) if vertices is not None else frozenset(range(g.n))
    t = d.tree
    if set(d.bags) != set(range(t.n)):
        return Violation("structure", "bags must be keyed by the tree nodes")
    if t.n == 0 or t.m != t.n - 1 or not t.is_connected():
        return Violation("structure", "the decomposition tree is not a tree")
    for node, bag in d.bags.items():
        extra = bag - vs
        if extra:
            return Violation("structure", f"bag {node} contains {min(extra)}, outside the decomposed vertex set")
    covered = frozenset().union(*d.bags.values()) if d.bags else frozenset()
    missing = vs - covered
    if missing:
        return Violation("vertex-coverage", f"vertex {min(missing)} is in no bag")
    for u, v in g.sorted_edges():
        if u in vs and v in vs and not any(u in bag and v in bag for bag in d.bags.values()):
            return Violation("edge-coverage", f"edge ({u},{v}) is inside no bag")
    for v in sorted(vs):
        nodes = frozenset(node for node, bag in d.bags.items() if v in bag)
        sub_nodes = sorted(nodes)
        start = sub_nodes[0]
        if len(t.component_of(start, allowed=nodes)) != len(nodes):
            return Violation("connected-trace", f"the bags containing vertex {v} do not induce a subtree")
    return None


# -- exact treewidth -----------------------------------------------------------


def _eliminated_degree(adj: tuple[int, ...], done: int, v: int) -> int:
    """Degree of v after eliminating `done`: neighbours reached through done."""
    allowed = done | (1 << v)
    comp = 1 << v
    while True:
        grow = comp
        for u in iter_bits(comp):
            grow |= adj[u]
        reach = grow & allowed
        if reach == comp:
            break
        comp = reach
    outside = grow & ~allowed
    return bin(outside).count("1")


def exact_treewidth(g: Graph, cap: int = 12) -> tuple[int, TreeDecomposition]:
    """Minimum width and an optimal decomposition, by subset DP over
    elimination prefixes.  Raises SizeLimitError above the cap."""
    if g.n > cap:
        raise SizeLimitError(f"{g.n} vertices exceeds the exact-treewidth cap {cap}")
    if g.n == 0:
        return -1, TreeDecomposition(Graph(1), {0: frozenset()})
    adj = g.adj_bits
    memo: dict[int, int] = {0: -1}
    choice: dict[int, int] = {}

    def best(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        val = g.n + 1
        pick = -1
        for v in iter_bits(mask):
            prev = mask & ~(1 << v)
            cand = max(best(prev), _eliminated_degree(adj, prev, v))
            if cand < val:
                val = cand
                pick = v
        memo[mask] = val
        choice[mask] = pick
        return val

    full = (1 << g.n) - 1
    width = best(full)
    order = []
    mask = full
    while mask:
        v = choice[mask]
        order.append(v)
        mask &= ~(1 << v)
    order.reverse()
    dec = decomposition_from_order(g, order)
    return width, dec


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by an elimination ordering: the bag of v is
    v plus its neighbours in the fill-in graph at elimination time."""
    work = [set(g.adj[v]) for v in range(g.n)]
    pos = {v: i for i, v in enumerate(order)}
    bags: dict[int, VertexSet] = {}
    for i, v in enumerate(order):
        nbrs = {u for u in work[v] if pos[u] > i}
        bags[i] = frozenset(nbrs | {v})
        for a in nbrs:
            for b in nbrs:
                if a != b:
                    work[a].add(b)
    edges = []
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v]
        if later:
            edges.append((i, min(later)))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(Graph(max(len(order), 1), edges), bags or {0: frozenset()})


# -- exact pathwidth -----------------------------------------------------------


def exact_pathwidth(g: Graph, cap: int = 10) -> tuple[int, PathDecomposition]:
    """Minimum pathwidth via the vertex-separation subset DP."""
    if g.n > cap:
        raise SizeLimitError(f"{g.n} vertices exceeds the exact-pathwidth cap {cap}")
    if g.n == 0:
        return -1, PathDecomposition((frozenset(),))
    adj = g.adj_bits

    def boundary(mask: int) -> int:
        count = 0
        for v in iter_bits(mask):
            if adj[v] & ~mask:
                count += 1
        return count

    memo: dict[int, int] = {0: -1}
    choice: dict[int, int] = {}

    def best(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        inner = g.n + 1
        pick = -1
        for v in iter_bits(mask):
            cand = best(mask & ~(1 << v))
            if cand < inner:
                inner = cand
                pick = v
        val = max(boundary(mask), inner)
        memo[mask] = val
        choice[mask] = pick
        return val

    full = (1 << g.n) - 1
    width = best(full)
    layout = []
    mask = full
    while mask:
        v = choice[mask]
        layout.append(v)
        mask &= ~(1 << v)
    layout.reverse()

    bags = []
    prefix = 0
    for v in layout:
        border = {u for u in iter_bits(prefix) if adj[u] & ~prefix}
        bags.append(frozenset(border | {v}))
        prefix |= 1 << v
    return width, PathDecomposition(tuple(bags))


# -- heuristic -----------------------------------------------------------------


def heuristic_decomposition(g: Graph) -> TreeDecomposition:
    """Min-fill elimination: a valid decomposition of width >= treewidth.
    Ties broken by vertex id, so the output is deterministic."""
    if g.n == 0:
        return TreeDecomposition(Graph(1), {0: frozenset()})
    work = [set(g.adj[v]) for v in range(g.n)]
    alive = set(range(g.n))
    order = []

    def fill_cost(v: int) -> int:
        nbrs = [u for u in work[v] if u in alive]
        cost = 0
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if b not in work[a]:
                    cost += 1
        return cost

    while alive:
        v = min(alive, key=lambda u: (fill_cost(u), u))
        nbrs = [u for u in work[v] if u in alive]
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                work[a].add(b)
                work[b].add(a)
        alive.remove(v)
        order.append(v)
    return decomposition_from_order(g, order)


def restrict_decomposition(d: TreeDecomposition, s: Iterable[int]) -> TreeDecomposition:
    """Intersect every bag with s: a decomposition of the induced subgraph."""
    ss = frozenset(s)
    return TreeDecomposition(d.tree, {node: bag & ss for node, bag in d.bags.items()})


# -- serialization -------------------------------------------------------------


DECOMPOSITION_FORMAT = "minorlab.tree_decomposition/1"


def decomposition_to_json(d: TreeDecomposition) -> str:
    doc = {
        "format": DECOMPOSITION_FORMAT,
        "nodes": d.tree.n,
        "tree_edges": [list(e) for e in d.tree.sorted_edges()],
        "bags": {str(node): sorted(bag) for node, bag in sorted(d.bags.items())},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def decomposition_from_json(text: str) -> TreeDecomposition:
    doc = json.loads(text)
    if doc.get("format") != DECOMPOSITION_FORMAT:
        raise GraphError(f"not a tree-decomposition document: {doc.get('format')!r}")
    tree = Graph(doc["nodes"], [tuple(e) for e in doc["tree_edges"]])
    bags = {int(k): frozenset(v) for k, v in doc["bags"].items()}
    return TreeDecomposition(tree, bags)
