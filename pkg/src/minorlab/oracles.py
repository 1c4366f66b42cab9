"""Brute-force oracles used to cross-check the search engines on small inputs.

These deliberately share no machinery with the production code paths: minors
are decided by exhaustive partition enumeration, connectivity by cut
enumeration, disjoint paths by path enumeration.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .graphs import Graph, VertexSet


def minor_by_partitions(host: Graph, pattern: Graph) -> dict[int, VertexSet] | None:
    """Decide pattern <= host by enumerating all partitions of all vertex
    subsets into exactly |pattern| connected blocks.

    Returns one witnessing branch-set map or None.  Exponential; intended for
    hosts with <= 8 vertices.
    """
    p = pattern.n
    if p > host.n:
        return None
    blocks: list[set[int]] = []

    def place(v: int) -> Iterator[list[set[int]]]:
        if v == host.n:
            if len(blocks) == p:
                yield blocks
            return
        # Unused blocks must still be fillable from the remaining vertices.
        if len(blocks) + (host.n - v) >= p:
            yield from place(v + 1)
        for blk in blocks:
            blk.add(v)
            yield from place(v + 1)
            blk.remove(v)
        if len(blocks) < p:
            blocks.append({v})
            yield from place(v + 1)
            blocks.pop()

    for part in place(0):
        if not all(host.is_connected_subset(b) for b in part):
            continue
        assign = _embed_pattern(host, pattern, part)
        if assign is not None:
            return {c: frozenset(part[assign[c]]) for c in range(p)}
    return None


def _embed_pattern(host: Graph, pattern: Graph, blocks: list[set[int]]) -> list[int] | None:
    """Bijection pattern vertex -> block index covering every pattern edge."""
    p = pattern.n
    touch = [[False] * p for _ in range(p)]
    for i in range(p):
        for j in range(i + 1, p):
            touch[i][j] = touch[j][i] = any(host.adj[u] & blocks[j] for u in blocks[i])
    assign = [-1] * p
    used = [False] * p

    def go(c: int) -> bool:
        if c == p:
            return True
        for b in range(p):
            if used[b]:
                continue
            if all(assign[d] == -1 or touch[b][assign[d]] for d in pattern.adj[c]):
                assign[c] = b
                used[b] = True
                if go(c + 1):
                    return True
                assign[c] = -1
                used[b] = False
        return False

    return assign if go(0) else None


def min_vertex_cut_by_enumeration(g: Graph) -> int:
    """kappa(g) by trying all deletion sets in increasing size (n <= ~8)."""
    if g.n < 2:
        raise ValueError("needs at least 2 vertices")
    if not g.is_connected():
        return 0
    for size in range(g.n - 1):
        for cut in combinations(range(g.n), size):
            rest = [v for v in range(g.n) if v not in cut]
            if len(rest) <= 1:
                continue
            seen = g.component_of(rest[0], allowed=frozenset(rest))
            if len(seen) < len(rest):
                return size
    return g.n - 1


def enumerate_xy_paths(g: Graph, xs: VertexSet, ys: VertexSet) -> Iterator[tuple[int, ...]]:
    """All X-Y paths: first vertex is the only one in X, last the only one in Y."""
    for x in sorted(xs):
        if x in ys:
            yield (x,)
            continue
        stack: list[tuple[int, ...]] = [(x,)]
        while stack:
            path = stack.pop()
            u = path[-1]
            for w in sorted(g.adj[u], reverse=True):
                if w in path:
                    continue
                if w in ys:
                    yield path + (w,)
                elif w not in xs:
                    stack.append(path + (w,))


def max_disjoint_xy_paths_by_enumeration(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> int:
    """Maximum number of vertex-disjoint X-Y paths by exhaustive search."""
    xs, ys = frozenset(xs), frozenset(ys)
    paths = [frozenset(p) for p in enumerate_xy_paths(g, xs, ys)]
    best = 0

    def extend(idx: int, used: frozenset[int], count: int) -> None:
        nonlocal best
        best = max(best, count)
        if count + len(paths) - idx <= best:
            return
        for i in range(idx, len(paths)):
            if not (paths[i] & used):
                extend(i + 1, used | paths[i], count + 1)

    extend(0, frozenset(), 0)
    return best


def min_xy_separator_by_enumeration(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> int:
    """Smallest vertex set meeting every X-Y path (Menger dual, exhaustive)."""
    xs, ys = frozenset(xs), frozenset(ys)
    paths = [frozenset(p) for p in enumerate_xy_paths(g, xs, ys)]
    if not paths:
        return 0
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            cs = frozenset(cand)
            if all(p & cs for p in paths):
                return size
    raise AssertionError("unreachable")
