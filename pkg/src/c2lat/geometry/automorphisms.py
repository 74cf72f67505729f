"""Automorphisms and isomorphisms of bipartite graphs by individualization-refinement.

The search fixes one path of individualized vertices down to a discrete
partition.  Working from the deepest level up, it then tries to send the
vertex individualized at each level to every other vertex of its cell,
skipping vertices already in the same orbit of the automorphisms found so
far.  Each candidate leaf is checked edge by edge, so every returned
generator is a genuine automorphism; the product of the orbit lengths is the
group order.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Sequence

from ..permcore import PermGroup
from .incidence import BipartiteGraph, distance_profile

Cells = list[list[int]]


def refine(cells: Cells, adj: Sequence[Sequence[int]]) -> Cells:
    """Coarsest equitable refinement of an ordered partition.

    Cells are split by the number of neighbours in a splitter cell; the
    fragments are ordered by that count, so the result depends only on the
    isomorphism type of (graph, ordered partition).
    """
    cells = [list(c) for c in cells]
    where = {}
    for i, c in enumerate(cells):
        for v in c:
            where[v] = i
    queue = deque(list(c) for c in cells)
    while queue:
        W = queue.popleft()
        count: dict[int, int] = {}
        for w in W:
            for u in adj[w]:
                count[u] = count.get(u, 0) + 1
        touched = sorted({where[u] for u in count}, reverse=True)
        changed = False
        for ci in touched:
            X = cells[ci]
            if len(X) == 1:
                continue
            groups: dict[int, list[int]] = {}
            for x in X:
                groups.setdefault(count.get(x, 0), []).append(x)
            if len(groups) == 1:
                continue
            frags = [groups[k] for k in sorted(groups)]
            cells[ci:ci + 1] = frags
            queue.extend(frags)
            changed = True
        if changed:
            for i, c in enumerate(cells):
                for v in c:
                    where[v] = i
    return cells


def individualize(cells: Cells, v: int) -> Cells:
    out = []
    for c in cells:
        if v in c:
            out.append([v])
            rest = [x for x in c if x != v]
            if rest:
                out.append(rest)
        else:
            out.append(list(c))
    return out


def target_cell(cells: Cells) -> int | None:
    """Index of the first smallest non-singleton cell."""
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _shape(cells: Cells) -> tuple[int, ...]:
    return tuple(len(c) for c in cells)


def initial_partition(g: BipartiteGraph, fix_colors: bool, reverse: bool = False) -> tuple[Cells, list]:
    """Cells keyed by (colour when fixed, degree, distance profile).

    ``reverse`` lists the cells in the opposite key order, which gives an
    independent second run of the search.
    """
    keys = {}
    for v in range(g.nvertices):
        key = (g.color(v) if fix_colors else 0, len(g.adjacency[v]), distance_profile(g, v))
        keys.setdefault(key, []).append(v)
    order = sorted(keys, reverse=reverse)
    return [keys[k] for k in order], order


def _is_isomorphism(g: BipartiteGraph, h: BipartiteGraph, mapping: Sequence[int]) -> bool:
    hset = h.edge_set
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        if (min(a, b), max(a, b)) not in hset:
            return False
    return len(g.edges) == len(h.edges)


class _Search:
    def __init__(self, g: BipartiteGraph):
        self.g = g
        self.adj = g.adjacency

    def first_path(self, cells: Cells) -> tuple[list[Cells], list[int]]:
        path = [refine(cells, self.adj)]
        chosen = []
        while True:
            t = target_cell(path[-1])
            if t is None:
                return path, chosen
            v = path[-1][t][0]
            chosen.append(v)
            path.append(refine(individualize(path[-1], v), self.adj))

    def leaf_search(self, cells: Cells, level: int, shapes: list[tuple[int, ...]],
                    accept: Callable[[Cells], bool], adj) -> Cells | None:
        """Depth-first search below ``cells`` for a leaf that ``accept`` approves."""
        if target_cell(cells) is None:
            return cells if accept(cells) else None
        t = target_cell(cells)
        for w in list(cells[t]):
            nxt = refine(individualize(cells, w), adj)
            if _shape(nxt) != shapes[level + 1]:
                continue
            found = self.leaf_search(nxt, level + 1, shapes, accept, adj)
            if found is not None:
                return found
        return None


def _leaf_map(leaf_from: Cells, leaf_to: Cells) -> list[int]:
    n = sum(len(c) for c in leaf_from)
    out = [0] * n
    for a, b in zip(leaf_from, leaf_to):
        out[a[0]] = b[0]
    return out


def _orbit_of(v: int, gens: list[list[int]]) -> set[int]:
    seen = {v}
    queue = [v]
    while queue:
        x = queue.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def graph_automorphisms(g: BipartiteGraph, fix_colors: bool = True,
                        reverse_cells: bool = False) -> PermGroup:
    """Automorphism group of ``g`` (colour classes preserved when ``fix_colors``)."""
    cells, _ = initial_partition(g, fix_colors, reverse_cells)
    S = _Search(g)
    path, chosen = S.first_path(cells)
    shapes = [_shape(c) for c in path]
    leaf0 = path[-1]
    gens: list[list[int]] = []
    for level in range(len(chosen) - 1, -1, -1):
        v = chosen[level]
        cell = path[level][target_cell(path[level])]
        level_gens = list(gens)    # everything found so far fixes chosen[:level]
        orbit = _orbit_of(v, level_gens)
        for w in cell:
            if w in orbit:
                continue
            start = refine(individualize(path[level], w), S.adj)
            if _shape(start) != shapes[level + 1]:
                continue

            def accept(leaf: Cells) -> bool:
                return _is_isomorphism(g, g, _leaf_map(leaf0, leaf))

            leaf = S.leaf_search(start, level + 1, shapes, accept, S.adj)
            if leaf is not None:
                gamma = _leaf_map(leaf0, leaf)
                gens.append(gamma)
                level_gens.append(gamma)
                orbit = _orbit_of(v, level_gens)
    n = g.nvertices
    return PermGroup([tuple(x) for x in gens], n)


def graph_isomorphism(g: BipartiteGraph, h: BipartiteGraph, fix_colors: bool = True) -> tuple[int, ...] | None:
    """A vertex bijection ``g -> h`` preserving edges (and colours when fixed), or ``None``."""
    if (g.nvertices, len(g.edges)) != (h.nvertices, len(h.edges)):
        return None
    if fix_colors and (g.n0, g.n1) != (h.n0, h.n1):
        return None
    cg, kg = initial_partition(g, fix_colors)
    ch, kh = initial_partition(h, fix_colors)
    if kg != kh or _shape(cg) != _shape(ch):
        return None
    Sg, Sh = _Search(g), _Search(h)
    path, _ = Sg.first_path(cg)
    shapes = [_shape(c) for c in path]
    leaf0 = path[-1]
    start = refine(ch, Sh.adj)
    if _shape(start) != shapes[0]:
        return None

    def accept(leaf: Cells) -> bool:
        return _is_isomorphism(g, h, _leaf_map(leaf0, leaf))

    leaf = Sh.leaf_search(start, 0, shapes, accept, Sh.adj)
    return None if leaf is None else tuple(_leaf_map(leaf0, leaf))
