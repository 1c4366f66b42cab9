"""Figure rendering for the CLI report path.

Every drawing is deterministic: layouts are computed, never force-directed,
and PNG metadata is stripped so identical runs produce identical bytes.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .gadgets import Fan, Ladder, Wall
from .generators import CylinderInstance
from .graphs import Graph, VertexSet
from .surface import EmbeddedGraph

_PALETTE = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
    "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a",
]


def circular_layout(g: Graph) -> dict[int, tuple[float, float]]:
    n = max(g.n, 1)
    return {
        v: (math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n))
        for v in range(g.n)
    }


def ladder_layout(l: Ladder) -> dict[int, tuple[float, float]]:
    pos = {v: (float(i), 1.0) for i, v in enumerate(l.top)}
    pos.update({v: (float(i), 0.0) for i, v in enumerate(l.bottom)})
    return pos


def fan_layout(f: Fan) -> dict[int, tuple[float, float]]:
    pos = ladder_layout(f.ladder)
    span = max(f.length - 1, 1)
    for i, w in enumerate(f.hubs):
        frac = (i + 1) / (len(f.hubs) + 1)
        pos[w] = (frac * span, -1.5)
    return pos


def wall_layout(w: Wall) -> dict[int, tuple[float, float]]:
    return {v: (float(c), float(-r)) for v, (r, c) in w.coords.items()}


def ring_layout(inst: CylinderInstance) -> dict[int, tuple[float, float]]:
    pos: dict[int, tuple[float, float]] = {}
    s = inst.s
    for j, cyc in enumerate(inst.cycles):
        radius = s - j + 0.5
        m = len(cyc)
        for i, v in enumerate(cyc):
            ang = 2 * math.pi * i / m
            pos[v] = (radius * math.cos(ang), radius * math.sin(ang))
    outer = s + 1.6
    blob = [v for v in range(inst.graph.n) if v not in pos]
    for i, v in enumerate(blob):
        ang = 2 * math.pi * (i + 1) / (len(blob) + 1)
        pos[v] = (outer * math.cos(ang), outer * math.sin(ang))
    return pos


def embedding_layout(e: EmbeddedGraph) -> dict[int, tuple[float, float]]:
    return circular_layout(e.graph)


def draw_graph(
    path: str | Path,
    g: Graph,
    pos: dict[int, tuple[float, float]] | None = None,
    vertex_groups: dict[int, VertexSet] | None = None,
    highlight: VertexSet | None = None,
    paths: list[tuple[int, ...]] | None = None,
    cycles: list[tuple[int, ...]] | None = None,
    title: str = "",
    labels: bool = True,
) -> None:
    """Render the graph with optional branch-set colouring, a highlighted
    vertex set, and emphasised paths/cycles; writes a PNG."""
    pos = pos or circular_layout(g)
    fig, ax = plt.subplots(figsize=(7, 7))
    for u, v in g.sorted_edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="#c8c8c8", linewidth=0.8, zorder=1)
    if cycles:
        for ci, cyc in enumerate(cycles):
            col = _PALETTE[ci % len(_PALETTE)]
            for i in range(len(cyc)):
                (x1, y1), (x2, y2) = pos[cyc[i]], pos[cyc[(i + 1) % len(cyc)]]
                ax.plot([x1, x2], [y1, y2], color=col, linewidth=2.0, zorder=2)
    if paths:
        for pi, p in enumerate(paths):
            col = _PALETTE[pi % len(_PALETTE)]
            for a, b in zip(p, p[1:]):
                (x1, y1), (x2, y2) = pos[a], pos[b]
                ax.plot([x1, x2], [y1, y2], color=col, linewidth=2.4, zorder=3)
    colour = {}
    if vertex_groups:
        for ci, (_, bs) in enumerate(sorted(vertex_groups.items())):
            for v in bs:
                colour[v] = _PALETTE[ci % len(_PALETTE)]
    xs = [pos[v][0] for v in range(g.n)]
    ys = [pos[v][1] for v in range(g.n)]
    cs = [colour.get(v, "#404040") for v in range(g.n)]
    sizes = [70.0 if highlight and v in highlight else 28.0 for v in range(g.n)]
    edgecols = ["#b30000" if highlight and v in highlight else "none" for v in range(g.n)]
    ax.scatter(xs, ys, c=cs, s=sizes, zorder=4, edgecolors=edgecols, linewidths=1.4)
    if labels and g.n <= 120:
        for v in range(g.n):
            ax.annotate(str(v), pos[v], fontsize=6, zorder=5,
                        textcoords="offset points", xytext=(3, 3))
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
