"""Linkages and their rerouting machinery: singularity, combs, orthogonality.

A linkage is a set of vertex-disjoint paths; an X-Y linkage covers all of
X and Y.  Combs reroute a linkage through a subgraph H; orthogonalization
rebuilds a linkage so that it crosses a family of concentric cycles cleanly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .graphs import Graph, GraphError, VertexSet, _max_vertex_disjoint_paths, disjoint_paths
from .minors import Violation
from .treedec import SizeLimitError, exact_pathwidth


@dataclass(frozen=True)
class Linkage:
    paths: tuple[tuple[int, ...], ...]
    x: VertexSet
    y: VertexSet

    @property
    def order(self) -> int:
        return len(self.paths)

    def vertices(self) -> VertexSet:
        out: set[int] = set()
        for p in self.paths:
            out.update(p)
        return frozenset(out)

    def edges(self) -> frozenset[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for p in self.paths:
            for a, b in zip(p, p[1:]):
                out.add((min(a, b), max(a, b)))
        return frozenset(out)


def validate_linkage(g: Graph, link: Linkage, xy: bool = True) -> Violation | None:
    """Disjoint paths; with xy=True additionally a proper X-Y linkage."""
    seen: set[int] = set()
    for i, p in enumerate(link.paths):
        if not p:
            return Violation("path", f"path {i} is empty")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                return Violation("path", f"path {i} uses the non-edge ({a},{b})")
        if len(set(p)) != len(p):
            return Violation("path", f"path {i} repeats a vertex")
        if seen & set(p):
            return Violation("disjointness", f"path {i} shares a vertex with an earlier path")
        seen.update(p)
    if xy:
        if len(link.x) != len(link.paths) or len(link.y) != len(link.paths):
            return Violation("cover", "an X-Y linkage needs |X| = |paths| = |Y|")
        for i, p in enumerate(link.paths):
            if p[0] not in link.x:
                return Violation("cover", f"path {i} does not start in X")
            if p[-1] not in link.y:
                return Violation("cover", f"path {i} does not end in Y")
            inner_hits = [v for v in p if v in link.x and v != p[0]] + [
                v for v in p if v in link.y and v != p[-1]
            ]
            if inner_hits:
                return Violation("cover", f"path {i} meets X or Y at interior vertex {inner_hits[0]}")
        if {p[0] for p in link.paths} != link.x or {p[-1] for p in link.paths} != link.y:
            return Violation("cover", "the paths do not meet all of X and Y")
    return None


# -- singular linkages ---------------------------------------------------------


def enumerate_xy_linkages(g: Graph, xs: VertexSet, ys: VertexSet) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All X-Y linkages (each path's interior avoids X and Y).  Exponential."""
    if len(xs) != len(ys):
        return
    order = sorted(xs)

    def route(i: int, used: frozenset[int], taken_y: frozenset[int], acc: list[tuple[int, ...]]) -> Iterator[tuple]:
        if i == len(order):
            yield tuple(acc)
            return
        x = order[i]
        if x in used:
            return
        if x in ys:
            acc.append((x,))
            yield from route(i + 1, used | {x}, taken_y | {x}, acc)
            acc.pop()
            return
        stack: list[tuple[int, ...]] = [(x,)]
        while stack:
            path = stack.pop()
            u = path[-1]
            for w in sorted(g.adj[u], reverse=True):
                if w in path or w in used:
                    continue
                if w in ys:
                    if w not in taken_y:
                        acc.append(path + (w,))
                        yield from route(i + 1, used | set(path) | {w}, taken_y | {w}, acc)
                        acc.pop()
                elif w not in xs:
                    stack.append(path + (w,))

    yield from route(0, frozenset(), frozenset(), [])


def distinct_linkage_edge_sets(g: Graph, xs: VertexSet, ys: VertexSet, limit: int = 2):
    """Up to `limit` X-Y linkages with pairwise different edge sets."""
    found: list[tuple[frozenset, tuple]] = []
    for paths in enumerate_xy_linkages(g, xs, ys):
        es = frozenset((min(a, b), max(a, b)) for p in paths for a, b in zip(p, p[1:]))
        if all(es != known for known, _ in found):
            found.append((es, paths))
            if len(found) >= limit:
                break
    return found


def is_singular(g: Graph, link: Linkage, cap: int = 10) -> bool:
    """True iff the linkage spans V(g) and g has no X-Y linkage with a
    different edge set.  Decided by exhaustive enumeration, hence the cap."""
    if g.n > cap:
        raise SizeLimitError(f"{g.n} vertices exceeds the singularity cap {cap}")
    bad = validate_linkage(g, link)
    if bad is not None:
        raise GraphError(f"not an X-Y linkage: {bad}")
    if len(link.vertices()) != g.n:
        return False
    own = link.edges()
    for paths in enumerate_xy_linkages(g, link.x, link.y):
        es = frozenset((min(a, b), max(a, b)) for p in paths for a, b in zip(p, p[1:]))
        if es != own:
            return False
    return True


def check_singular_pathwidth(g: Graph, link: Linkage, cap: int = 10) -> bool:
    """Pathwidth is at most the order of a singular linkage; this replays the
    claim with the exact-pathwidth oracle."""
    if not is_singular(g, link, cap=cap):
        raise GraphError("linkage is not singular")
    width, _ = exact_pathwidth(g, cap=cap)
    return width <= link.order


def find_singular_linkages(g: Graph, cap_per_pair: int = 2) -> Iterator[Linkage]:
    """Exhaustively search a small graph for all singular linkage instances.

    Walks every (X, Y) pair with |X| = |Y|; for a singular instance the graph
    carries exactly one linkage edge set and it spans V(g).
    """
    n = g.n
    vs = list(range(n))
    for qx in range(1, n + 1):
        for xs in itertools.combinations(vs, qx):
            for ys in itertools.combinations(vs, qx):
                xset, yset = frozenset(xs), frozenset(ys)
                if (min(ys), ys) < (min(xs), xs) and xset != yset:
                    continue  # (X,Y) and (Y,X) carry the same instances
                found = distinct_linkage_edge_sets(g, xset, yset, limit=cap_per_pair)
                if len(found) != 1:
                    continue
                paths = found[0][1]
                covered = set()
                for p in paths:
                    covered.update(p)
                if len(covered) == n:
                    yield Linkage(paths, xset, yset)


# -- combs ---------------------------------------------------------------------


class SegmentKind(Enum):
    EMPTY = "empty"
    TRIVIAL = "trivial"
    PROPER = "proper"


@dataclass(frozen=True)
class Segment:
    """The maximal subpath of a linkage path bounded by comb/H vertices."""

    path_index: int
    start: int | None  # position within the path
    end: int | None

    @property
    def kind(self) -> SegmentKind:
        if self.start is None:
            return SegmentKind.EMPTY
        return SegmentKind.TRIVIAL if self.start == self.end else SegmentKind.PROPER


@dataclass(frozen=True)
class Comb:
    linkage: Linkage
    h: VertexSet
    paths: tuple[tuple[int, ...], ...]

    def finals(self) -> VertexSet:
        return frozenset(p[-1] for p in self.paths)


def comb_segments(linkage: Linkage, h: VertexSet, comb_paths: Sequence[tuple[int, ...]]) -> list[Segment]:
    anchors = set(h)
    for q in comb_paths:
        anchors.update(q)
    out = []
    for i, p in enumerate(linkage.paths):
        hits = [pos for pos, v in enumerate(p) if v in anchors]
        if hits:
            out.append(Segment(i, hits[0], hits[-1]))
        else:
            out.append(Segment(i, None, None))
    return out


def segment_endpoints(linkage: Linkage, h: VertexSet, comb_paths: Sequence[tuple[int, ...]]) -> VertexSet:
    pts: set[int] = set()
    for seg in comb_segments(linkage, h, comb_paths):
        if seg.start is not None:
            p = linkage.paths[seg.path_index]
            pts.add(p[seg.start])
            pts.add(p[seg.end])
    return frozenset(pts)


def validate_comb(g: Graph, comb: Comb) -> Violation | None:
    link_vertices = comb.linkage.vertices()
    seen: set[int] = set()
    for i, q in enumerate(comb.paths):
        if not q:
            return Violation("comb-path", f"comb path {i} is empty")
        for a, b in zip(q, q[1:]):
            if not g.has_edge(a, b):
                return Violation("comb-path", f"comb path {i} uses the non-edge ({a},{b})")
        if len(set(q)) != len(q):
            return Violation("comb-path", f"comb path {i} repeats a vertex")
        if set(q) & seen:
            return Violation("disjointness", f"comb path {i} overlaps an earlier comb path")
        seen.update(q)
        if q[0] not in comb.h:
            return Violation("start", f"comb path {i} does not start in H")
        if any(v in comb.h for v in q[1:]):
            return Violation("start", f"comb path {i} re-enters H")
        if q[-1] not in link_vertices:
            return Violation("end", f"comb path {i} does not end on the linkage")
    pts = segment_endpoints(comb.linkage, comb.h, comb.paths)
    finals = comb.finals()
    if pts != finals:
        return Violation(
            "segment-endpoints",
            f"segment endpoints {sorted(pts)} differ from comb finals {sorted(finals)}",
        )
    return None


class CombExtractionError(RuntimeError):
    pass


def extract_comb(g: Graph, link: Linkage, h: VertexSet, t: int) -> Comb:
    """A comb of at least t paths rerouting `link` through H.

    Requires t disjoint H-(X u Y) paths to exist (flow-checked).  Builds a
    maximum such path family with as few off-linkage edges as possible, then
    trims every path back to the last segment endpoint it carries.
    """
    targets = link.x | link.y
    probe = disjoint_paths(g, h, targets)
    if len(probe) < t:
        raise GraphError(f"only {len(probe)} disjoint H-(X u Y) paths exist, need {t}")
    link_edges = link.edges()
    cost = {e: (0 if e in link_edges else 1) for e in g.edges}
    paths = [list(p) for p in _max_vertex_disjoint_paths(g, frozenset(h), frozenset(targets), edge_cost=cost)]

    budget = sum(len(p) for p in paths) + len(h) + 4
    for _ in range(budget):
        pts = segment_endpoints(link, h, [tuple(p) for p in paths])
        on_paths: set[int] = set()
        for p in paths:
            on_paths.update(p)
        finals = {p[-1] for p in paths}
        if pts == finals:
            break
        changed = False
        for missing in sorted(pts - on_paths):
            # A segment endpoint not on any comb path must be an H vertex on
            # the linkage; it joins as a trivial comb path.
            paths.append([missing])
            changed = True
        if changed:
            continue
        for i, p in enumerate(paths):
            # Delete the tail after the first segment endpoint on the path.
            cut = next((pos for pos, v in enumerate(p) if v in pts), None)
            if cut is not None and cut < len(p) - 1:
                paths[i] = p[: cut + 1]
                changed = True
        if not changed:
            # No trim can fix the mismatch; drop paths carrying no endpoint.
            keep = [p for p in paths if any(v in pts for v in p)]
            if len(keep) == len(paths):
                raise CombExtractionError("comb trimming stalled")
            paths = keep
    comb = Comb(link, frozenset(h), tuple(tuple(p) for p in paths))
    bad = validate_comb(g, comb)
    if bad is not None:
        raise CombExtractionError(f"comb construction failed: {bad}")
    if len(comb.paths) < t:
        raise CombExtractionError(f"comb has {len(comb.paths)} paths, expected >= {t}")
    return comb


def subcomb(g: Graph, comb: Comb, sub_paths: Iterable[int]) -> Comb:
    """Restrict a comb to a sub-linkage: keep the comb paths sharing an
    endpoint with a segment of the kept linkage paths."""
    idx = sorted(set(sub_paths))
    if any(i < 0 or i >= comb.linkage.order for i in idx):
        raise GraphError("sub-linkage indices out of range")
    sub_link = Linkage(
        tuple(comb.linkage.paths[i] for i in idx),
        frozenset(comb.linkage.paths[i][0] for i in idx),
        frozenset(comb.linkage.paths[i][-1] for i in idx),
    )
    segs = comb_segments(comb.linkage, comb.h, comb.paths)
    keep_pts: set[int] = set()
    for i in idx:
        seg = segs[i]
        if seg.start is not None:
            p = comb.linkage.paths[i]
            keep_pts.add(p[seg.start])
            keep_pts.add(p[seg.end])
    kept = tuple(q for q in comb.paths if set(q) & keep_pts)
    return Comb(sub_link, comb.h, kept)


# -- orthogonal linkages -------------------------------------------------------


def path_cycle_intersection_is_path(g: Graph, path: Sequence[int], cycle: Sequence[int]) -> bool:
    """Is the graph (V(P) & V(C), E(P) & E(C)) a single (possibly trivial) path?"""
    cset = set(cycle)
    verts = [v for v in path if v in cset]
    if not verts:
        return False
    cyc_edges = set()
    L = len(cycle)
    for i in range(L):
        a, b = cycle[i], cycle[(i + 1) % L]
        cyc_edges.add((min(a, b), max(a, b)))
    shared = []
    for a, b in zip(path, path[1:]):
        e = (min(a, b), max(a, b))
        if e in cyc_edges and a in cset and b in cset:
            shared.append(e)
    # A path on k vertices has exactly k-1 edges and must be connected.
    if len(shared) != len(verts) - 1:
        return False
    deg: dict[int, int] = {}
    for a, b in shared:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if any(d > 2 for d in deg.values()):
        return False
    # Connectivity: walk from a degree-<=1 vertex through shared edges.
    if not shared:
        return len(verts) == 1
    adj: dict[int, list[int]] = {}
    for a, b in shared:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    start = min((v for v in adj if len(adj[v]) == 1), default=None)
    if start is None:
        return False  # a cycle, not a path
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def is_orthogonal(g: Graph, link: Linkage, cycles: Sequence[Sequence[int]]) -> bool:
    """Every path meets every cycle in one contiguous subpath, in the listed
    order along the path (either traversal direction)."""
    csets = [set(c) for c in cycles]
    for i, a in enumerate(csets):
        for b in csets[i + 1:]:
            if a & b:
                raise GraphError("cycles must be pairwise disjoint")
    for p in link.paths:
        blocks = []
        for ci, c in enumerate(cycles):
            positions = [pos for pos, v in enumerate(p) if v in csets[ci]]
            if not positions:
                return False
            if positions != list(range(positions[0], positions[-1] + 1)):
                return False
            if not path_cycle_intersection_is_path(g, p, c):
                return False
            blocks.append((positions[0], positions[-1]))
        fwd = all(blocks[i][1] < blocks[i + 1][0] for i in range(len(blocks) - 1))
        bwd = all(blocks[i + 1][1] < blocks[i][0] for i in range(len(blocks) - 1))
        if not (fwd or bwd):
            return False
    return True


@dataclass(frozen=True)
class OrthogonalizeResult:
    cycles: tuple[tuple[int, ...], ...]
    x_new: VertexSet
    linkage: Linkage
    rerouted: bool  # False when the input linkage already passed


class OrthogonalizationError(RuntimeError):
    pass


def _vertex_depths(g: Graph, cycles: Sequence[Sequence[int]], plane: VertexSet) -> dict[int, float]:
    """Depth of every vertex relative to the concentric family: cycle j has
    depth j, vertices strictly between cycles j and j+1 have depth j+0.5, and
    everything outside cycle 0 (including the attached graph) has depth -0.5."""
    depth: dict[int, float] = {}
    for j, c in enumerate(cycles):
        for v in c:
            if v in depth:
                raise OrthogonalizationError("cycles are not disjoint")
            depth[v] = float(j)
    on_cycles = frozenset(depth)
    rest = frozenset(range(g.n)) - on_cycles
    seen: set[int] = set()
    for v in sorted(rest):
        if v in seen:
            continue
        comp = g.component_of(v, allowed=rest)
        seen |= comp
        touched: set[int] = set()
        for u in comp:
            for w in g.adj[u]:
                if w in on_cycles:
                    touched.add(int(depth[w]))
        if not touched or not comp <= plane:
            d = -0.5
        elif len(touched) == 1:
            d = touched.pop() + 0.5
        elif max(touched) - min(touched) == 1:
            d = min(touched) + 0.5
        else:
            raise OrthogonalizationError("a component touches non-consecutive cycles; not a concentric input")
        for u in comp:
            depth[u] = d
    return depth


def _local_improvement(g: Graph, paths: list[list[int]], cycles: Sequence[Sequence[int]]) -> list[list[int]]:
    """Peak elimination and visit consolidation along cycle arcs, accepted
    only while the total number of linkage edges strictly decreases."""
    cyc_pos = []
    for c in cycles:
        cyc_pos.append({v: i for i, v in enumerate(c)})

    def arc(ci: int, u: int, v: int, forbidden: set[int]) -> list[int] | None:
        c = cycles[ci]
        L = len(c)
        iu, iv = cyc_pos[ci][u], cyc_pos[ci][v]
        best: list[int] | None = None
        for step in (1, -1):
            walk = [u]
            i = iu
            ok = True
            while i != iv:
                i = (i + step) % L
                w = c[i]
                if w != v and w in forbidden:
                    ok = False
                    break
                walk.append(w)
            if ok and (best is None or len(walk) < len(best)):
                best = walk
        return best

    total = lambda ps: sum(len(p) - 1 for p in ps)
    improved = True
    while improved:
        improved = False
        used_all = set()
        for p in paths:
            used_all.update(p)
        for pi, p in enumerate(paths):
            for ci in range(len(cycles)):
                pos = [i for i, v in enumerate(p) if v in cyc_pos[ci]]
                if len(pos) < 2 or pos[-1] - pos[0] == len(pos) - 1:
                    continue
                u, v = p[pos[0]], p[pos[-1]]
                forbidden = (used_all - set(p[pos[0]: pos[-1] + 1])) | set(p[: pos[0]]) | set(p[pos[-1] + 1:])
                detour = arc(ci, u, v, forbidden)
                if detour is None:
                    continue
                candidate = p[: pos[0]] + detour + p[pos[-1] + 1:]
                if len(set(candidate)) != len(candidate):
                    continue
                new_paths = [q if qi != pi else candidate for qi, q in enumerate(paths)]
                if total(new_paths) < total(paths):
                    paths = new_paths
                    improved = True
                    break
            if improved:
                break
    return paths


def orthogonalize(
    g: Graph,
    cycles: Sequence[Sequence[int]],
    link: Linkage,
    s_prime: int,
    plane_vertices: Iterable[int] | None = None,
) -> OrthogonalizeResult:
    """Concentric cycles plus a linkage orthogonal to them.

    `cycles` is the concentric family, outermost first; the linkage runs from
    X on the innermost cycle to Y on the outermost.  `plane_vertices` names
    the plane part of g (everything else is attached material outside the
    outermost cycle); by default all of g.  Requires
    len(cycles) >= s_prime + order.  The output keeps Y, starts on the new
    innermost cycle, and crosses the s_prime innermost input cycles once each.

    Strategy: local improvement of the given linkage first (shortcutting
    repeat visits along cycle arcs); if the result is not yet orthogonal, an
    exhaustive layered disjoint-path search re-routes from scratch: inside the
    reroute zone only outward moves and moves along a cycle are allowed, so
    any routed family is orthogonal by construction.
    """
    s, t = len(cycles), link.order
    if s < s_prime + t:
        raise GraphError(f"need s >= s' + t, got s={s}, s'={s_prime}, t={t}")
    if s_prime < 1:
        raise GraphError("s' must be >= 1")
    bad = validate_linkage(g, link)
    if bad is not None:
        raise GraphError(f"invalid linkage: {bad}")
    plane = frozenset(plane_vertices) if plane_vertices is not None else frozenset(range(g.n))
    out_cycles = tuple(tuple(c) for c in cycles[s - s_prime:])
    inner_cycle = out_cycles[-1]

    candidate = _local_improvement(g, [list(p) for p in link.paths], cycles)
    cand_link = Linkage(tuple(tuple(p) for p in candidate), link.x, link.y)
    if validate_linkage(g, cand_link) is None and is_orthogonal(g, cand_link, out_cycles):
        rerouted = candidate != [list(p) for p in link.paths]
        return OrthogonalizeResult(out_cycles, cand_link.x, cand_link, rerouted)

    depth = _vertex_depths(g, cycles, plane)
    zone = float(s - s_prime)

    # Layered digraph: inside the zone only strictly outward arcs and arcs
    # along a cycle; outside the zone all arcs.  Encoded as a graph search via
    # max vertex-disjoint paths on an auxiliary directed structure.
    allowed_arcs: set[tuple[int, int]] = set()
    cyc_edges: set[tuple[int, int]] = set()
    for c in cycles:
        L = len(c)
        for i in range(L):
            a, b = c[i], c[(i + 1) % L]
            cyc_edges.add((min(a, b), max(a, b)))
    for u, v in g.edges:
        du, dv = depth[u], depth[v]
        e = (min(u, v), max(u, v))
        if du < zone and dv < zone:
            allowed_arcs.add((u, v))
            allowed_arcs.add((v, u))
        elif du == dv:
            if e in cyc_edges or du != int(du):
                allowed_arcs.add((u, v))
                allowed_arcs.add((v, u))
        else:
            hi, lo = (u, v) if du > dv else (v, u)
            allowed_arcs.add((hi, lo))

    paths = _directed_disjoint_paths(g.n, allowed_arcs, frozenset(inner_cycle), link.y)
    if len(paths) < t:
        raise OrthogonalizationError(
            f"only {len(paths)} zone-monotone disjoint paths found, need {t}; "
            "the instance may violate the concentric hypotheses"
        )
    new_link = Linkage(tuple(tuple(p) for p in paths), frozenset(p[0] for p in paths), link.y)
    bad = validate_linkage(g, new_link)
    if bad is not None:
        raise OrthogonalizationError(f"rerouted linkage invalid: {bad}")
    if not is_orthogonal(g, new_link, out_cycles):
        raise OrthogonalizationError("rerouted linkage is not orthogonal; not a concentric plane input")
    return OrthogonalizeResult(out_cycles, new_link.x, new_link, True)


def _directed_disjoint_paths(
    n: int, arcs: set[tuple[int, int]], sources: VertexSet, sinks: VertexSet
) -> list[list[int]]:
    """Max vertex-disjoint source-sink paths in a digraph (node-split flow)."""
    S, T = 2 * n, 2 * n + 1
    cap: dict[tuple[int, int], int] = {}

    def add(a: int, b: int) -> None:
        cap[(a, b)] = 1
        cap.setdefault((b, a), 0)

    for v in range(n):
        add(2 * v, 2 * v + 1)
    for v in sources:
        add(S, 2 * v)
    for v in sinks:
        add(2 * v + 1, T)
    for u, v in arcs:
        # Sinks end paths (no out-arcs); passing through a source is fine,
        # that vertex simply is not used as a start.
        if u not in sinks:
            add(2 * u + 1, 2 * v)
    out: dict[int, list[int]] = {}
    for a, b in cap:
        out.setdefault(a, []).append(b)
    for a in out:
        out[a].sort()
    flow = {k: 0 for k in cap}

    def bfs() -> bool:
        from collections import deque

        parent = {S: S}
        q = deque([S])
        while q:
            a = q.popleft()
            if a == T:
                break
            for b in out.get(a, ()):
                if b not in parent and cap[(a, b)] - flow[(a, b)] > 0:
                    parent[b] = a
                    q.append(b)
        if T not in parent:
            return False
        b = T
        while b != S:
            a = parent[b]
            flow[(a, b)] += 1
            flow[(b, a)] -= 1
            b = a
        return True

    while bfs():
        pass
    used = {k: max(v, 0) for k, v in flow.items()}
    paths = []
    for sv in sorted(sources):
        while used.get((S, 2 * sv), 0) > 0:
            used[(S, 2 * sv)] -= 1
            path = [sv]
            node = 2 * sv
            while True:
                node += 1
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
