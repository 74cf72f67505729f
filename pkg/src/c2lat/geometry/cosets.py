"""Coset graphs of a finite group with respect to two subgroups."""

from __future__ import annotations

from dataclasses import dataclass

from ..permcore import CayleyGroup, PermGroup
from .incidence import BipartiteGraph, GeometryError


@dataclass(frozen=True)
class CosetGraph:
    """The graph on ``G/E`` (colour 0) and ``G/F`` (colour 1), edges ``{gE, gF}``.

    ``action`` lists, for each generator of ``G``, the induced permutation of
    the vertices by left multiplication; ``edge_of`` gives for each element
    index of ``cayley`` the edge ``{gE, gF}`` it lies on.
    """

    graph: BipartiteGraph
    action: tuple[tuple[int, ...], ...]
    cayley: CayleyGroup
    edge_of: tuple[int, ...]


def coset_graph(G: PermGroup, E: PermGroup, F: PermGroup, cayley: CayleyGroup | None = None) -> CosetGraph:
    if not (G.contains_group(E) and G.contains_group(F)):
        raise GeometryError("E and F must be subgroups of G")
    if E.contains_group(F) and F.contains_group(E):
        raise GeometryError("E and F must differ")
    C = cayley or CayleyGroup(G)
    Eidx = sorted(C.index(x) for x in E.elements())
    Fidx = sorted(C.index(x) for x in F.elements())

    def cosets(sub):
        label: dict[int, int] = {}
        reps: list[int] = []
        for g in range(C.order):
            if g in label:
                continue
            members = C.table[g, sub]
            for m in members:
                label[int(m)] = len(reps)
            reps.append(g)
        return label, reps

    lab_e, reps_e = cosets(Eidx)
    lab_f, reps_f = cosets(Fidx)
    n0 = len(reps_e)
    edge_pairs = sorted({(lab_e[g], n0 + lab_f[g]) for g in range(C.order)})
    graph = BipartiteGraph(n0, len(reps_f), tuple(edge_pairs), "coset graph")
    eidx = graph.edge_index
    edge_of = tuple(eidx[(lab_e[g], n0 + lab_f[g])] for g in range(C.order))
    action = []
    for s in G.generators:
        si = C.index(s)
        perm = [0] * graph.nvertices
        for i, r in enumerate(reps_e):
            perm[i] = lab_e[C.mul(si, r)]
        for i, r in enumerate(reps_f):
            perm[n0 + i] = n0 + lab_f[C.mul(si, r)]
        action.append(tuple(perm))
    return CosetGraph(graph, tuple(action), C, edge_of)
