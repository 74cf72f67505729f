"""Point-line geometries, bipartite graphs and distance computations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence


class GeometryError(ValueError):
    """A structural check on a geometry or graph failed."""


@dataclass(frozen=True)
class IncidenceGeometry:
    """Points and lines indexed from 0, with flags as sorted ``(point, line)`` pairs."""

    points: tuple[Hashable, ...]
    lines: tuple[Hashable, ...]
    flags: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if len(set(self.flags)) != len(self.flags):
            raise GeometryError("repeated flag")
        if list(self.flags) != sorted(self.flags):
            raise GeometryError("flags must be listed in (point, line) order")
        ps = {p for p, _ in self.flags}
        ls = {l for _, l in self.flags}
        if ps != set(range(len(self.points))) or ls != set(range(len(self.lines))):
            raise GeometryError("every point and line must lie in a flag")

    @property
    def npoints(self) -> int:
        return len(self.points)

    @property
    def nlines(self) -> int:
        return len(self.lines)

    @cached_property
    def flag_index(self) -> dict[tuple[int, int], int]:
        return {f: i for i, f in enumerate(self.flags)}

    @cached_property
    def lines_on_point(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.points]
        for p, l in self.flags:
            out[p].append(l)
        return tuple(tuple(x) for x in out)

    @cached_property
    def points_on_line(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.lines]
        for p, l in self.flags:
            out[l].append(p)
        return tuple(tuple(x) for x in out)


@dataclass(frozen=True)
class BipartiteGraph:
    """Vertices ``0..n0-1`` have colour 0, ``n0..n0+n1-1`` colour 1.

    Edges are pairs ``(u, v)`` with ``u`` of colour 0 and ``v`` of colour 1;
    the edge list order is the canonical edge numbering.
    """

    n0: int
    n1: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if len(set(self.edges)) != len(self.edges):
            raise GeometryError("multiple edges")
        for u, v in self.edges:
            if not (0 <= u < self.n0 <= v < self.n0 + self.n1):
                raise GeometryError(f"edge ({u},{v}) does not cross the colour classes")

    @property
    def nvertices(self) -> int:
        return self.n0 + self.n1

    def color(self, v: int) -> int:
        return 0 if v < self.n0 else 1

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.nvertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def to_adjacency_text(self) -> str:
        """One line per vertex: ``<vertex> <colour> <neighbour> ...`` (0-based)."""
        lines = [f"# bipartite graph {self.name}: {self.n0}+{self.n1} vertices, {len(self.edges)} edges"]
        for v, nbrs in enumerate(self.adjacency):
            lines.append(" ".join([str(v), str(self.color(v))] + [str(u) for u in nbrs]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_adjacency_text(cls, text: str, name: str = "") -> "BipartiteGraph":
        colors = {}
        edges = set()
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            v, c, *nbrs = (int(x) for x in line.split())
            colors[v] = c
            for u in nbrs:
                edges.add((min(u, v), max(u, v)))
        n0 = sum(1 for c in colors.values() if c == 0)
        if sorted(v for v, c in colors.items() if c == 0) != list(range(n0)):
            raise GeometryError("colour-0 vertices must come first")
        return cls(n0, len(colors) - n0, tuple(sorted(edges)), name)


def build_Kmm(m: int) -> IncidenceGeometry:
    """The complete bipartite geometry: ``m`` points, ``m`` lines, all flags."""
    if m < 2:
        raise GeometryError("m must be at least 2")
    flags = tuple((p, l) for p in range(m) for l in range(m))
    return IncidenceGeometry(tuple(range(m)), tuple(range(m)), flags, f"K{m},{m}")


def incidence_graph(geom: IncidenceGeometry) -> BipartiteGraph:
    """Points become vertices ``0..P-1``, lines ``P..P+L-1``; edge ``i`` is flag ``i``."""
    P = geom.npoints
    return BipartiteGraph(P, geom.nlines, tuple((p, P + l) for p, l in geom.flags), geom.name)


def graph_from_edges(n0: int, n1: int, edges: Iterable[tuple[int, int]], name: str = "") -> BipartiteGraph:
    return BipartiteGraph(n0, n1, tuple(sorted(set(edges))), name)


def cycle_graph(k: int) -> BipartiteGraph:
    """The cycle on ``2k`` vertices, alternately coloured."""
    if k < 2:
        raise GeometryError("a bipartite cycle needs k >= 2")
    edges = []
    for i in range(k):
        edges.append((i, k + i))
        edges.append((i, k + (i - 1) % k))
    return graph_from_edges(k, k, edges, f"C{2 * k}")


def _bfs(adj: Sequence[Sequence[int]], root: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def diameter(g: BipartiteGraph) -> int:
    """Largest distance; raises :class:`GeometryError` for a disconnected graph."""
    adj = g.adjacency
    best = 0
    for v in range(g.nvertices):
        dist = _bfs(adj, v)
        if min(dist) < 0:
            raise GeometryError("graph is disconnected (infinite diameter)")
        best = max(best, max(dist))
    return best


def girth(g: BipartiteGraph) -> int:
    """Length of a shortest cycle; raises :class:`GeometryError` for a forest."""
    adj = g.adjacency
    best = None
    for root in range(g.nvertices):
        dist = [-1] * len(adj)
        parent = [-1] * len(adj)
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    if best is None:
        raise GeometryError("graph has no cycle (girth undefined)")
    return best


def distance_profile(g: BipartiteGraph, v: int) -> tuple[int, ...]:
    """Number of vertices at each distance from ``v``."""
    dist = _bfs(g.adjacency, v)
    top = max(dist)
    counts = [0] * (top + 2)
    for d in dist:
        counts[d] += 1   # unreachable vertices land in the final slot
    return tuple(counts)


def is_generalized_polygon(geom: IncidenceGeometry, m: int) -> tuple[int, int]:
    """Order ``(s, t)`` when ``geom`` is a generalized ``m``-gon; raises otherwise."""
    line_sizes = {len(x) for x in geom.points_on_line}
    point_degrees = {len(x) for x in geom.lines_on_point}
    if len(line_sizes) != 1 or len(point_degrees) != 1:
        raise GeometryError("line sizes or point degrees are not uniform")
    g = incidence_graph(geom)
    d = diameter(g)
    c = girth(g)
    if d != m or c != 2 * m:
        raise GeometryError(f"diameter {d} and girth {c} do not fit a generalized {m}-gon")
    return line_sizes.pop() - 1, point_degrees.pop() - 1


def graph_polygon_order(g: BipartiteGraph, m: int) -> tuple[int, int]:
    """Same test as :func:`is_generalized_polygon`, read off a bipartite graph.

    Colour-0 vertices play the points; returns ``(s, t)``.
    """
    deg = [len(a) for a in g.adjacency]
    d0 = {deg[v] for v in range(g.n0)}
    d1 = {deg[v] for v in range(g.n0, g.nvertices)}
    if len(d0) != 1 or len(d1) != 1:
        raise GeometryError("vertex degrees are not uniform on a colour class")
    d = diameter(g)
    c = girth(g)
    if d != m or c != 2 * m:
        raise GeometryError(f"diameter {d} and girth {c} do not fit a generalized {m}-gon")
    return d1.pop() - 1, d0.pop() - 1
