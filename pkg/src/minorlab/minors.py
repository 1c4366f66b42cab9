"""Deciding H <= G (minor order) by explicit branch-set search.

A model maps every pattern vertex to a branch set: the sets are pairwise
disjoint, each induces a connected subgraph of the host, and every pattern
edge is witnessed by a host edge between the two branch sets.  The search
assigns host vertices to branch sets one at a time with connectivity and
edge-coverage pruning; `verify_model` is a separate checker that shares no
code with the search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph, GraphError, VertexSet, disjoint_union, induced_subgraph, iter_bits


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


#: Exhaustive search finished without finding a model.
ABSENT = _Sentinel("ABSENT")
#: The step budget ran out; the answer is unknown (not the same as ABSENT).
BUDGET_EXCEEDED = _Sentinel("BUDGET_EXCEEDED")


class Budget:
    """Mutable counter of backtracking node expansions, shared across searches."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.spent = 0

    def charge(self) -> bool:
        """Account one node expansion; False once the limit is exhausted."""
        self.spent += 1
        return self.limit is None or self.spent <= self.limit


class _BudgetHit(Exception):
    pass


@dataclass(frozen=True)
class MinorModel:
    host: Graph
    pattern: Graph
    branch_sets: dict[int, VertexSet]

    def used_vertices(self) -> VertexSet:
        out: set[int] = set()
        for bs in self.branch_sets.values():
            out |= bs
        return frozenset(out)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def verify_model(m: MinorModel) -> Violation | None:
    """Check the three model invariants; None means the model is valid.

    Deliberately independent of the search: plain set arithmetic over the
    host adjacency, no shared state.
    """
    host, pattern = m.host, m.pattern
    if set(m.branch_sets) != set(range(pattern.n)):
        return Violation("domain", f"branch sets keyed by {sorted(m.branch_sets)}, pattern has 0..{pattern.n - 1}")
    for pv, bs in m.branch_sets.items():
        for v in bs:
            if not (0 <= v < host.n):
                return Violation("domain", f"branch set {pv} contains {v}, outside the host")
    items = sorted(m.branch_sets.items())
    for i, (pu, bu) in enumerate(items):
        for pv, bv in items[i + 1:]:
            shared = bu & bv
            if shared:
                return Violation("disjointness", f"branch sets {pu} and {pv} share vertex {min(shared)}")
    for pv, bs in items:
        if not bs:
            return Violation("connectivity", f"branch set {pv} is empty")
        if not host.is_connected_subset(bs):
            return Violation("connectivity", f"branch set {pv} induces a disconnected subgraph")
    for pu, pv in pattern.sorted_edges():
        bu, bv = m.branch_sets[pu], m.branch_sets[pv]
        if not any(host.adj[u] & bv for u in bu):
            return Violation("edge-coverage", f"pattern edge ({pu},{pv}) has no host edge between its branch sets")
    return None


# -- host kernelization -------------------------------------------------------
#
# Two reductions that preserve the existence of a pattern minor:
#   * vertices of host degree <= 1 may be deleted when the pattern has minimum
#     degree >= 2 (such a vertex can witness at most one adjacency);
#   * a degree-2 vertex may be contracted onto a neighbour when the pattern has
#     minimum degree >= 3 (its branch set can never stand alone).
# Models found on the kernel lift back by replacing each kernel vertex with the
# set of original vertices merged into it.


def _kernelize(host: Graph, min_pattern_degree: int) -> tuple[Graph, list[VertexSet]]:
    g = host
    reps: list[VertexSet] = [frozenset([v]) for v in range(host.n)]
    while g.n:
        if min_pattern_degree >= 2:
            drop = {v for v in range(g.n) if g.degree(v) <= 1}
            if drop:
                keep = [v for v in range(g.n) if v not in drop]
                g, old = induced_subgraph(g, keep)
                reps = [reps[o] for o in old]
                continue
        if min_pattern_degree >= 3:
            v2 = next((v for v in range(g.n) if g.degree(v) == 2), None)
            if v2 is not None:
                u = min(g.adj[v2])
                a, b = min(u, v2), max(u, v2)
                merged = [(reps[a] | reps[b]) if w == a else reps[w] for w in range(g.n) if w != b]
                g = _contract_for_kernel(g, a, b)
                reps = merged
                continue
        break
    return g, reps


def _contract_for_kernel(g: Graph, a: int, b: int) -> Graph:
    edges = set()
    for x, y in g.edges:
        x2 = a if x == b else (x - 1 if x > b else x)
        y2 = a if y == b else (y - 1 if y > b else y)
        if x2 != y2:
            edges.add((min(x2, y2), max(x2, y2)))
    return Graph(g.n - 1, edges)


# -- the branch-set search ----------------------------------------------------


class _ModelSearch:
    """Backtracking over per-vertex branch-set labels with bitmask pruning."""

    def __init__(self, host: Graph, pattern: Graph, budget: Budget):
        self.host = host
        self.pattern = pattern
        self.budget = budget
        self.adj = host.adj_bits
        self.p = pattern.n
        # Pattern vertices are processed in descending degree (ties by id).
        self.class_rank = {c: i for i, c in enumerate(sorted(range(self.p), key=lambda c: (-pattern.degree(c), c)))}
        self.pedges = pattern.sorted_edges()
        self.edge_index = {e: i for i, e in enumerate(self.pedges)}
        self.all_covered = (1 << len(self.pedges)) - 1
        # Symmetry breaking: if swapping pattern vertices c and d is an
        # automorphism (N(c)-{d} == N(d)-{c}), then c may only be introduced
        # while every such smaller d is already in use.
        self.swap_mask = [0] * self.p
        for c in range(self.p):
            for d in range(self.p):
                if d != c and pattern.adj_bits[c] & ~(1 << d) == pattern.adj_bits[d] & ~(1 << c):
                    self.swap_mask[c] |= 1 << d

    def run(self) -> dict[int, VertexSet] | None:
        """First model under the fixed search order, or None after exhaustion."""
        n = self.host.n
        full = (1 << n) - 1
        found = self._descend(full, (0,) * self.p, (0,) * self.p, 0, 0)
        if found is None:
            return None
        return {c: frozenset(iter_bits(found[c])) for c in range(self.p)}

    # State: U = unassigned mask, bsets/nbrs per class, covered edge mask,
    # intro = mask of introduced classes.  All immutable, so backtracking is
    # plain recursion.
    def _descend(
        self,
        U: int,
        bsets: tuple[int, ...],
        nbrs: tuple[int, ...],
        covered: int,
        intro: int,
    ) -> tuple[int, ...] | None:
        if not self.budget.charge():
            raise _BudgetHit
        p = self.p
        remaining_classes = p - bin(intro).count("1")

        if covered == self.all_covered and remaining_classes == 0:
            if all(self._connected(bsets[c], bsets[c]) for c in range(p)):
                return bsets

        if bin(U).count("1") < remaining_classes:
            return None

        # Connectivity: the fragments of every branch set must be joinable
        # through the unassigned region.
        for c in range(p):
            if bsets[c] and not self._connected(bsets[c], bsets[c] | U):
                return None

        # Edge coverage: every uncovered pattern edge still needs a potential
        # witness edge between (B_a | U) and (B_b | U).
        if U:
            adjU = 0
            for v in iter_bits(U):
                adjU |= self.adj[v]
            for i, (a, b) in enumerate(self.pedges):
                if covered >> i & 1:
                    continue
                wa = bsets[a] | U
                wb = bsets[b] | U
                if not ((nbrs[a] | adjU) & wb and (nbrs[b] | adjU) & wa):
                    return None
        elif covered != self.all_covered:
            return None

        if not U:
            return None

        v = self._pick_vertex(U, bsets)
        vbit = 1 << v
        U2 = U & ~vbit

        # Existing classes first (pattern order), then admissible fresh
        # classes, then skipping the vertex.
        existing = sorted((c for c in range(p) if intro >> c & 1), key=lambda c: self.class_rank[c])
        fresh = sorted(
            (
                c
                for c in range(p)
                if not intro >> c & 1 and not (self.swap_mask[c] & ((1 << c) - 1) & ~intro)
            ),
            key=lambda c: self.class_rank[c],
        )
        for c in existing + fresh:
            nb = list(bsets)
            nn = list(nbrs)
            nb[c] |= vbit
            nn[c] |= self.adj[v]
            cov2 = covered
            for w in iter_bits(self.adj[v] & ~U2 & ~vbit):
                d = self._label_of(w, nb)
                if d is not None and d != c:
                    e = (c, d) if c < d else (d, c)
                    idx = self.edge_index.get(e)
                    if idx is not None:
                        cov2 |= 1 << idx
            res = self._descend(U2, tuple(nb), tuple(nn), cov2, intro | 1 << c)
            if res is not None:
                return res
        return self._descend(U2, bsets, nbrs, covered, intro)

    def _label_of(self, w: int, bsets: list[int]) -> int | None:
        bit = 1 << w
        for c, mask in enumerate(bsets):
            if mask & bit:
                return c
        return None

    def _pick_vertex(self, U: int, bsets: tuple[int, ...]) -> int:
        assigned = 0
        for m in bsets:
            assigned |= m
        if assigned:
            frontier = 0
            for v in iter_bits(assigned):
                frontier |= self.adj[v]
            frontier &= U
            if frontier:
                return (frontier & -frontier).bit_length() - 1
        return (U & -U).bit_length() - 1

    def _connected(self, mask: int, allowed: int) -> bool:
        """All vertices of `mask` lie in one component of `allowed`."""
        if not mask:
            return True
        comp = mask & -mask
        while True:
            grow = 0
            for v in iter_bits(comp):
                grow |= self.adj[v]
            grow = (grow | comp) & allowed
            if grow == comp:
                break
            comp = grow
            if mask & ~comp == 0:
                return True
        return mask & ~comp == 0


def _minimalize(host: Graph, pattern: Graph, branch_sets: dict[int, VertexSet]) -> dict[int, VertexSet]:
    """Shrink each branch set to an inclusion-minimal connected set that still
    witnesses all its pattern edges (deterministic ascending-id scan)."""
    sets = {c: set(bs) for c, bs in branch_sets.items()}
    changed = True
    while changed:
        changed = False
        for c in sorted(sets):
            needed = [d for d in pattern.adj[c]]
            for v in sorted(sets[c]):
                if len(sets[c]) == 1:
                    break
                trial = sets[c] - {v}
                if not host.is_connected_subset(trial):
                    continue
                ok = True
                for d in needed:
                    if not any(host.adj[u] & sets[d] for u in trial):
                        ok = False
                        break
                if ok:
                    sets[c] = trial
                    changed = True
    return {c: frozenset(s) for c, s in sets.items()}


def find_minor(host: Graph, pattern: Graph, budget: int | Budget | None = None):
    """Search for a model of `pattern` in `host`.

    Returns a MinorModel, ABSENT (only after exhaustive search), or
    BUDGET_EXCEEDED.  The result is deterministic: the first model under the
    fixed search order, its branch sets pruned to inclusion-minimal sets.
    """
    if pattern.n == 0:
        raise GraphError("pattern must be nonempty")
    b = budget if isinstance(budget, Budget) else Budget(budget)
    if pattern.n > host.n or pattern.m > host.m:
        return ABSENT

    min_deg = min((pattern.degree(v) for v in range(pattern.n)), default=0)
    kernel, reps = _kernelize(host, min_deg)
    if pattern.n > kernel.n or pattern.m > kernel.m:
        return ABSENT

    try:
        raw = _ModelSearch(kernel, pattern, b).run()
    except _BudgetHit:
        return BUDGET_EXCEEDED
    if raw is None:
        return ABSENT
    lifted = {c: frozenset().union(*(reps[v] for v in bs)) for c, bs in raw.items()}
    model = MinorModel(host, pattern, _minimalize(host, pattern, lifted))
    bad = verify_model(model)
    if bad is not None:
        raise AssertionError(f"search produced an invalid model: {bad}")
    return model


def find_disjoint_minors(host: Graph, pattern: Graph, k: int, budget: int | Budget | None = None):
    """k pairwise vertex-disjoint models of `pattern`, via a single search for
    the disjoint union of k pattern copies."""
    if k < 1:
        raise GraphError("k must be >= 1")
    kpattern = disjoint_union([pattern] * k)
    res = find_minor(host, kpattern, budget)
    if res is ABSENT or res is BUDGET_EXCEEDED:
        return res
    models = []
    for j in range(k):
        sets = {c: res.branch_sets[j * pattern.n + c] for c in range(pattern.n)}
        models.append(MinorModel(host, pattern, sets))
    return models


# -- serialization -------------------------------------------------------------


MODEL_FORMAT = "minorlab.minor_model/1"


def model_to_json(m: MinorModel) -> str:
    doc = {
        "format": MODEL_FORMAT,
        "host_n": m.host.n,
        "pattern_n": m.pattern.n,
        "pattern_edges": [list(e) for e in m.pattern.sorted_edges()],
        "branch_sets": {str(c): sorted(bs) for c, bs in sorted(m.branch_sets.items())},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def model_from_json(text: str, host: Graph) -> MinorModel:
    doc = json.loads(text)
    if doc.get("format") != MODEL_FORMAT:
        raise GraphError(f"not a minor-model document: {doc.get('format')!r}")
    if doc["host_n"] != host.n:
        raise GraphError(f"model was produced for a host with {doc['host_n']} vertices, got {host.n}")
    pattern = Graph(doc["pattern_n"], [tuple(e) for e in doc["pattern_edges"]])
    sets = {int(c): frozenset(vs) for c, vs in doc["branch_sets"].items()}
    return MinorModel(host, pattern, sets)
