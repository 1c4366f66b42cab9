"""Packing/covering solver for clique minors on graphs of bounded treewidth.

`ep_solve` turns the tree-decomposition argument into an algorithm: orient
every tree edge toward sides that still carry a K_p model; an edge oriented
both ways splits the instance into two vertex-disjoint halves solved for k-1,
and a sink node of a consistently oriented tree yields a hitting set (its
bag).  Every certificate it returns is re-checked before being handed out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graphs import Graph, GraphError, VertexSet, complete_graph, induced_subgraph
from .minors import (
    ABSENT,
    BUDGET_EXCEEDED,
    Budget,
    MinorModel,
    Violation,
    _BudgetHit,
    find_minor,
    verify_model,
)
from .treedec import TreeDecomposition, validate_decomposition


@dataclass(frozen=True)
class Packing:
    models: tuple[MinorModel, ...]


@dataclass(frozen=True)
class HittingSet:
    vertices: VertexSet
    bound: int


EPCertificate = Packing | HittingSet


def f_w(w: int, p: int, k: int) -> int:
    """The covering bound recursion: 0 for k=1, else twice the previous value
    plus w.  Closed form (2^(k-1) - 1) * w; p is carried for interface parity
    but does not enter the recursion."""
    if k < 1:
        raise GraphError("k must be >= 1")
    if w < 1:
        raise GraphError("w must be >= 1")
    if k == 1:
        return 0
    return 2 * f_w(w, p, k - 1) + w


def required_connectivity(p: int, k: int) -> int:
    """Connectivity that forces the packing/covering dichotomy: k(p-3)+14p+14."""
    if p < 1 or k < 1:
        raise GraphError("p and k must be >= 1")
    return k * (p - 3) + 14 * p + 14


def tight_connectivity(p: int, k: int) -> int:
    """Connectivity of the tightness construction: k(p-3) - (p-3)(p-4)/2 - 6."""
    if p < 5:
        raise GraphError("the tightness construction needs p >= 5")
    return k * (p - 3) - (p - 3) * (p - 4) // 2 - 6


class _Solver:
    def __init__(self, g: Graph, d: TreeDecomposition, p: int, w: int, budget: Budget, verify: bool):
        self.g = g
        self.d = d
        self.p = p
        self.w = w
        self.pattern = complete_graph(p)
        self.budget = budget
        self.verify = verify
        self.minor_cache: dict[frozenset[int], MinorModel | object] = {}
        # For every tree edge, the node sets of the two sides.
        self.side_nodes: dict[tuple[int, int], tuple[frozenset[int], frozenset[int]]] = {}
        for a, b in d.tree.sorted_edges():
            side_a = d.tree.component_of(a, allowed=frozenset(range(d.tree.n)) - {b})
            side_b = frozenset(range(d.tree.n)) - frozenset(side_a)
            self.side_nodes[(a, b)] = (frozenset(side_a), side_b)

    def minor_in(self, vertices: frozenset[int]):
        key = vertices
        if key not in self.minor_cache:
            if len(vertices) < self.p:
                self.minor_cache[key] = ABSENT
            else:
                sub, old = induced_subgraph(self.g, vertices)
                res = find_minor(sub, self.pattern, self.budget)
                if res is BUDGET_EXCEEDED:
                    raise _BudgetHit
                if res is ABSENT:
                    self.minor_cache[key] = ABSENT
                else:
                    sets = {c: frozenset(old[v] for v in bs) for c, bs in res.branch_sets.items()}
                    self.minor_cache[key] = MinorModel(self.g, self.pattern, sets)
        return self.minor_cache[key]

    def side_vertices(self, s: frozenset[int], a: int, b: int) -> tuple[frozenset[int], frozenset[int]]:
        nodes_a, nodes_b = self.side_nodes[(a, b)]
        bag_a = self.d.bags[a] & s
        bag_b = self.d.bags[b] & s
        va: set[int] = set()
        for t in nodes_a:
            va |= self.d.bags[t] & s
        vb: set[int] = set()
        for t in nodes_b:
            vb |= self.d.bags[t] & s
        return frozenset(va - bag_b), frozenset(vb - bag_a)

    def solve(self, s: frozenset[int], k: int) -> EPCertificate:
        bound = f_w(self.w, self.p, k)
        whole = self.minor_in(s)
        if whole is ABSENT:
            return HittingSet(frozenset(), bound)
        if k == 1:
            return Packing((whole,))

        doubly: tuple[int, int] | None = None
        directions: dict[tuple[int, int], tuple[bool, bool]] = {}
        for a, b in self.d.tree.sorted_edges():
            va, vb = self.side_vertices(s, a, b)
            da = self.minor_in(va) is not ABSENT
            db = self.minor_in(vb) is not ABSENT
            directions[(a, b)] = (da, db)
            if da and db and doubly is None:
                doubly = (a, b)

        if doubly is None:
            x = self.d.bags[self._sink(directions)] & s
            self._check_hitting(s, x)
            return HittingSet(x, bound)

        a, b = doubly
        va, vb = self.side_vertices(s, a, b)
        left = self.solve(va, k - 1)
        if isinstance(left, Packing):
            extra = self.minor_in(vb)
            return Packing(left.models + (extra,))
        right = self.solve(vb, k - 1)
        if isinstance(right, Packing):
            extra = self.minor_in(va)
            return Packing(right.models + (extra,))
        x = left.vertices | right.vertices | (self.d.bags[a] & self.d.bags[b] & s)
        self._check_hitting(s, x)
        return HittingSet(x, bound)

    def _sink(self, directions: dict[tuple[int, int], tuple[bool, bool]]) -> int:
        """Follow single directions from node 0 to a node with no outgoing edge."""
        node = 0
        while True:
            moved = False
            for a, b in self.d.tree.sorted_edges():
                if node not in (a, b):
                    continue
                da, db = directions[(a, b)]
                # Edge directed toward side i means G_i still has a model.
                if node == a and db:
                    node = b
                    moved = True
                    break
                if node == b and da:
                    node = a
                    moved = True
                    break
            if not moved:
                return node

    def _check_hitting(self, s: frozenset[int], x: frozenset[int]) -> None:
        if self.verify and self.minor_in(s - x) is not ABSENT:
            raise AssertionError("hitting set fails to meet every model; solver bug")


def ep_solve(
    g: Graph,
    d: TreeDecomposition,
    p: int,
    k: int,
    budget: int | Budget | None = None,
    w: int | None = None,
    verify: bool = True,
):
    """Packing of k disjoint K_p models, or a hitting set of at most
    f_w(w,p,k) vertices whose deletion leaves no K_p model, or BUDGET_EXCEEDED.

    The decomposition must validate for g with width < w (w defaults to
    width+1).  With verify=True every hitting set is re-checked against the
    minor engine before being returned, so a wrong certificate is impossible.
    """
    if k < 1 or p < 1:
        raise GraphError("p and k must be >= 1")
    bad = validate_decomposition(g, d)
    if bad is not None:
        raise GraphError(f"invalid decomposition: {bad}")
    if w is None:
        w = d.width + 1
    if d.width >= w:
        raise GraphError(f"decomposition width {d.width} is not < {w}")
    w = max(w, 1)
    b = budget if isinstance(budget, Budget) else Budget(budget)
    solver = _Solver(g, d, p, w, b, verify)
    try:
        return solver.solve(frozenset(range(g.n)), k)
    except _BudgetHit:
        return BUDGET_EXCEEDED


def verify_certificate(
    g: Graph, cert: EPCertificate, p: int, k: int, w: int, budget: int | Budget | None = None
) -> Violation | None:
    """Independent check of an Erdos-Posa certificate against its graph."""
    if isinstance(cert, Packing):
        if len(cert.models) != k:
            return Violation("packing-size", f"{len(cert.models)} models, expected {k}")
        used: set[int] = set()
        for i, m in enumerate(cert.models):
            if m.host != g:
                return Violation("packing-host", f"model {i} was built on a different host")
            if m.pattern != complete_graph(p):
                return Violation("packing-pattern", f"model {i} is not a K_{p} model")
            v = verify_model(m)
            if v is not None:
                return Violation("packing-model", f"model {i}: {v}")
            mine = m.used_vertices()
            if mine & used:
                return Violation("packing-disjointness", f"model {i} overlaps an earlier model")
            used |= mine
        return None
    if len(cert.vertices) > cert.bound:
        return Violation("hitting-size", f"{len(cert.vertices)} vertices exceed the bound {cert.bound}")
    if cert.bound > f_w(w, p, k):
        return Violation("hitting-bound", f"recorded bound {cert.bound} exceeds f_w = {f_w(w, p, k)}")
    rest = frozenset(range(g.n)) - cert.vertices
    sub, _ = induced_subgraph(g, rest)
    res = find_minor(sub, complete_graph(p), budget)
    if res is BUDGET_EXCEEDED:
        return Violation("budget", "could not confirm minor-freeness within budget")
    if res is not ABSENT:
        return Violation("hitting-incomplete", "a K_p model survives the deletion")
    return None


# -- serialization -------------------------------------------------------------


EP_FORMAT = "minorlab.ep_certificate/1"


def certificate_to_json(cert: EPCertificate, p: int, k: int, w: int, seed: int | None = None) -> str:
    doc: dict = {"format": EP_FORMAT, "p": p, "k": k, "w": w}
    if seed is not None:
        doc["seed"] = seed
    if isinstance(cert, Packing):
        doc["kind"] = "packing"
        doc["models"] = [
            {str(c): sorted(bs) for c, bs in sorted(m.branch_sets.items())} for m in cert.models
        ]
    else:
        doc["kind"] = "hitting_set"
        doc["vertices"] = sorted(cert.vertices)
        doc["bound"] = cert.bound
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def certificate_from_json(text: str, g: Graph) -> tuple[EPCertificate, int, int, int]:
    doc = json.loads(text)
    if doc.get("format") != EP_FORMAT:
        raise GraphError(f"not an Erdos-Posa certificate: {doc.get('format')!r}")
    p, k, w = int(doc["p"]), int(doc["k"]), int(doc["w"])
    if doc["kind"] == "packing":
        pattern = complete_graph(p)
        models = tuple(
            MinorModel(g, pattern, {int(c): frozenset(vs) for c, vs in sets.items()})
            for sets in doc["models"]
        )
        return Packing(models), p, k, w
    if doc["kind"] == "hitting_set":
        return HittingSet(frozenset(doc["vertices"]), int(doc["bound"])), p, k, w
    raise GraphError(f"unknown certificate kind {doc['kind']!r}")
