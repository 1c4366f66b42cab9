"""Readers and writers for the on-disk graph formats.

Edge-list text: first line "n m", then m lines "u v".  graph6 is read-only and
only used for corpus ingestion.
"""

from __future__ import annotations

from pathlib import Path

from .graphs import Graph, GraphError


def write_edge_list(g: Graph, path: str | Path) -> None:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    Path(path).write_text("\n".join(lines) + "\n")


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphError("empty edge-list input")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
    except (IndexError, ValueError) as exc:
        raise GraphError(f"bad edge-list header {rows[0]!r}") from exc
    if len(rows) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(rows) - 1}")
    edges = []
    for row in rows[1:]:
        try:
            edges.append((int(row[0]), int(row[1])))
        except (IndexError, ValueError) as exc:
            raise GraphError(f"bad edge line {row!r}") from exc
    return Graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (standard ASCII encoding, n < 258048)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise GraphError("invalid graph6 character")
    if data[0] <= 62:
        n, idx = data[0], 1
    elif data[1] <= 62:
        n = (data[1] << 12) + (data[2] << 6) + data[3]
        idx = 4
    else:
        n = (data[2] << 30) + (data[3] << 24) + (data[4] << 18) + (data[5] << 12) + (data[6] << 6) + data[7]
        idx = 8
    bits = []
    for b in data[idx:]:
        bits.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise GraphError("graph6 string too short")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph(n, edges)


def read_graph6(path: str | Path) -> list[Graph]:
    return [parse_graph6(ln) for ln in Path(path).read_text().splitlines() if ln.strip()]


def read_graph_file(path: str | Path) -> Graph:
    """Edge list by default; .g6 files are read as a single graph6 line."""
    p = Path(path)
    if p.suffix == ".g6":
        graphs = read_graph6(p)
        if len(graphs) != 1:
            raise GraphError(f"{p} holds {len(graphs)} graphs, expected exactly one")
        return graphs[0]
    return read_edge_list(p)


def write_roles(roles: dict[int, str], path: str | Path) -> None:
    """Vertex role annotations as tab-separated `vertex<TAB>role` rows."""
    lines = [f"{v}\t{roles[v]}" for v in sorted(roles)]
    Path(path).write_text("\n".join(lines) + "\n")
