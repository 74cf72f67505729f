"""Edge-regular actions on Q, K4,4 and K6,6 and their classification.

A local action is a finite group ``G`` with two subgroups ``E_a`` and ``E_b``
that intersect trivially and generate ``G``; ``G`` acts on its coset graph
with vertices ``G/E_b`` (colour 0, the points) and ``G/E_a`` (colour 1, the
lines), regularly on the edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Sequence

from .geometry import (
    BipartiteGraph,
    build_Kmm,
    build_Q,
    coset_graph,
    graph_automorphisms,
    graph_isomorphism,
    incidence_graph,
    vertex_to_flag_perm,
)
from .geometry.cosets import CosetGraph
from .permcore import (
    CayleyGroup,
    extend_homomorphism,
    subgroup_isomorphisms,
    PermGroup,
    enumerate_regular_subgroups,
    format_cycles,
)
from .presentations import edge_subgroups, library_presentation, regular_representation
from .presentations.library import K44_IDS, K66_IDS, Q_IDS

TARGETS = ("Q", "K44", "K66")
SWAP_IDS = frozenset({12, 13, 16, 17, 22, 25, 26, 29})


class ActionError(RuntimeError):
    pass


def target_of(i: int) -> str:
    if i in Q_IDS:
        return "Q"
    if i in K44_IDS:
        return "K44"
    if i in K66_IDS:
        return "K66"
    raise ValueError(f"no library action {i}")


def library_ids(target: str) -> tuple[int, ...]:
    return {"Q": Q_IDS, "K44": K44_IDS, "K66": K66_IDS}[target]


@lru_cache(maxsize=None)
def target_graph(target: str) -> BipartiteGraph:
    if target == "Q":
        return incidence_graph(build_Q())
    if target == "K44":
        return incidence_graph(build_Kmm(4))
    if target == "K66":
        return incidence_graph(build_Kmm(6))
    raise ValueError(f"unknown target {target!r}")


def edge_group_type(order: int, max_element_order: int) -> str:
    """Name of a group of order 4 or 6 from its largest element order."""
    names = {(4, 4): "C4", (4, 2): "C2xC2", (6, 6): "C6", (6, 3): "S3"}
    if (order, max_element_order) not in names:
        raise ValueError(f"no edge model of order {order} with elements of order {max_element_order}")
    return names[(order, max_element_order)]


def _generating_subset(C: CayleyGroup, members: Sequence[int]) -> list[int]:
    """A short generating list for the subgroup with the given element indices."""
    target = set(int(m) for m in members)
    gens: list[int] = []
    have = {C.identity}
    for m in sorted(target, key=lambda x: (-int(C.element_orders[x]), x)):
        if m not in have:
            gens.append(m)
            have = set(int(x) for x in C.closure(gens))
            if have == target:
                break
    return gens


@dataclass
class LocalAction:
    """A group with its two edge subgroups, as element indices of ``cayley``."""

    id: int | None
    group: PermGroup
    cayley: CayleyGroup
    Ea: tuple[int, ...]
    Eb: tuple[int, ...]
    target: str
    gens_a: tuple[int, ...] = ()
    gens_b: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.gens_a:
            self.gens_a = tuple(_generating_subset(self.cayley, self.Ea))
        if not self.gens_b:
            self.gens_b = tuple(_generating_subset(self.cayley, self.Eb))

    @property
    def order(self) -> int:
        return self.cayley.order

    def edge_types(self) -> tuple[str, str]:
        out = []
        for E in (self.Ea, self.Eb):
            exp = max(int(self.cayley.element_orders[x]) for x in E)
            out.append(edge_group_type(len(E), exp))
        return out[0], out[1]

    def subgroup(self, members: Sequence[int]) -> PermGroup:
        gens = _generating_subset(self.cayley, members)
        return PermGroup([self.cayley.elements[x] for x in gens] or [self.group.identity()],
                         self.group.degree)

    @cached_property
    def coset(self) -> CosetGraph:
        return coset_graph(self.group, self.subgroup(self.Eb), self.subgroup(self.Ea), self.cayley)

    def verify(self) -> dict:
        """Edge-regularity and identification of the coset graph with the target."""
        C = self.cayley
        common = set(self.Ea) & set(self.Eb)
        graph = self.coset.graph
        tgt = target_graph(self.target)
        gen_ok = len(C.closure(list(self.gens_a) + list(self.gens_b))) == C.order
        report = {
            "order": C.order,
            "edges": len(graph.edges),
            "edge stabilizer trivial": common == {C.identity},
            "edge regular": len(graph.edges) == C.order and common == {C.identity},
            "edge subgroups generate": gen_ok,
            "coset graph is target": graph_isomorphism(graph, tgt) is not None,
        }
        report["ok"] = all(v for k, v in report.items() if isinstance(v, bool))
        return report


@lru_cache(maxsize=None)
def library_action(i: int) -> LocalAction:
    """The action of ``L_i`` on its coset graph, verified against the target graph."""
    P = library_presentation(i)
    G = regular_representation(P)
    C = CayleyGroup(G)
    A, B = edge_subgroups(P, G)
    Ea = tuple(sorted(C.index(x) for x in A.elements()))
    Eb = tuple(sorted(C.index(x) for x in B.elements()))
    gens_a = tuple(C.index(G.generators[k]) for k in P.side_indices("a"))
    gens_b = tuple(C.index(G.generators[k]) for k in P.side_indices("b"))
    X = LocalAction(i, G, C, Ea, Eb, target_of(i), gens_a, gens_b)
    rep = X.verify()
    if not rep["ok"]:
        raise ActionError(f"L{i} fails verification: {rep}")
    return X


def _bipartition_balanced(target: str) -> bool:
    return target in ("K44", "K66")


def actions_isomorphic(X: LocalAction, Y: LocalAction, type_preserving: bool = True
                       ) -> dict[str, object] | None:
    """A group isomorphism ``G_X -> G_Y`` carrying ``(E_a, E_b)`` onto ``(E_a', E_b')``.

    With ``type_preserving=False`` the swapped pair ``(E_b', E_a')`` is also
    tried, which is only meaningful when both colour classes have equal size.
    Returns the witness as images of the generators of ``E_a`` and ``E_b``.
    """
    if X.target != Y.target or X.order != Y.order:
        return None
    modes = [False]
    if not type_preserving and _bipartition_balanced(X.target):
        modes.append(True)
    Cs, Cd = X.cayley, Y.cayley
    gens = list(X.gens_a) + list(X.gens_b)
    for swapped in modes:
        ta, tb = (Y.Eb, Y.Ea) if swapped else (Y.Ea, Y.Eb)
        for alpha in subgroup_isomorphisms(Cs, list(X.gens_a), X.Ea, Cd, ta):
            for beta in subgroup_isomorphisms(Cs, list(X.gens_b), X.Eb, Cd, tb):
                f = extend_homomorphism(Cs, gens, Cd, alpha + beta)
                if f is not None and len(f) == Cs.order and len(set(f.values())) == Cd.order:
                    return {
                        "swapped": swapped,
                        "images": [Cd.elements[y] for y in alpha + beta],
                        "map": f,
                    }
    return None


def admits_edge_swap(X: LocalAction) -> dict[str, object] | None:
    """An automorphism of ``G`` exchanging ``E_a`` and ``E_b``, or ``None``.

    The generator swap ``a_k <-> b_k`` is tried first; when it extends to an
    automorphism it is the returned witness.
    """
    C = X.cayley
    if len(X.gens_a) == len(X.gens_b) and X.id is not None:
        gens = list(X.gens_a) + list(X.gens_b)
        imgs = list(X.gens_b) + list(X.gens_a)
        f = extend_homomorphism(C, gens, C, imgs)
        if f is not None and len(f) == C.order and len(set(f.values())) == C.order:
            return {"generator_swap": True, "images": [C.elements[y] for y in imgs], "map": f}
    if len(X.Ea) != len(X.Eb):
        return None
    swapped = LocalAction(X.id, X.group, C, X.Eb, X.Ea, X.target, X.gens_b, X.gens_a)
    w = actions_isomorphic(X, swapped, type_preserving=True)
    if w is None:
        return None
    return {"generator_swap": False, "images": w["images"], "map": w["map"]}


# ---------------------------------------------------------------------------
# exhaustive enumeration

def _kmm_edge_group(m: int) -> PermGroup:
    """``Sym(m) x Sym(m)`` acting on the ``m*m`` edges ``(p, l) -> p*m + l``."""
    def on_points(s):
        return tuple(s[p] * m + l for p in range(m) for l in range(m))

    def on_lines(s):
        return tuple(p * m + s[l] for p in range(m) for l in range(m))

    cyc = tuple(list(range(1, m)) + [0])
    tr = tuple([1, 0] + list(range(2, m)))
    return PermGroup([on_points(cyc), on_points(tr), on_lines(cyc), on_lines(tr)], m * m)


@lru_cache(maxsize=None)
def automorphism_group_Q() -> PermGroup:
    """Colour-preserving automorphisms of the incidence graph of Q on its 160 vertices."""
    return graph_automorphisms(target_graph("Q"), fix_colors=True)


def edge_automorphism_group(target: str) -> PermGroup:
    """The bipartition-preserving automorphism group acting on the edges of the target."""
    if target == "Q":
        geom = build_Q()
        aut = automorphism_group_Q()
        return PermGroup([vertex_to_flag_perm(g, geom) for g in aut.generators], len(geom.flags))
    m = {"K44": 4, "K66": 6}[target]
    return _kmm_edge_group(m)


def action_from_regular_subgroup(R: PermGroup, target: str) -> LocalAction:
    """Read off ``E_a`` (line stabilizer) and ``E_b`` (point stabilizer) of the base edge."""
    g = target_graph(target)
    edges = g.edges
    C = CayleyGroup(R)
    p0, l0 = edges[0]
    Ea, Eb = [], []
    for i, r in enumerate(C.elements):
        p, l = edges[r[0]]
        if l == l0:
            Ea.append(i)
        if p == p0:
            Eb.append(i)
    return LocalAction(None, R, C, tuple(Ea), tuple(Eb), target)


@dataclass
class EdgeRegularClass:
    library_id: int
    order: int
    edge_types: tuple[str, str]
    generators: list[str]
    conjugacy_classes: int = 1
    swapped: bool = False

    def as_dict(self) -> dict:
        return {
            "library_id": self.library_id,
            "group_order": self.order,
            "edge_subgroup_types": list(self.edge_types),
            "ambient_conjugacy_classes": self.conjugacy_classes,
            "witness_generators": self.generators,
        }


def classify_edge_regular(target: str, progress: Callable[[str], None] | None = None
                          ) -> dict[str, object]:
    """Enumerate edge-regular subgroups of the target's automorphism group and match them.

    Returns a report with the number of ambient conjugacy classes, the number
    of action-isomorphism classes, and the bijective matching to library ids.
    Raises :class:`ActionError` on an unmatched class or an unhit library id.
    """
    A = edge_automorphism_group(target)
    n_edges = len(target_graph(target).edges)
    regs = enumerate_regular_subgroups(A, range(n_edges), progress)
    actions = [action_from_regular_subgroup(R, target) for R in regs]
    classes: list[list[int]] = []
    for k, X in enumerate(actions):
        for cl in classes:
            if actions_isomorphic(actions[cl[0]], X, type_preserving=False) is not None:
                cl.append(k)
                break
        else:
            classes.append([k])
    ids = library_ids(target)
    out: list[EdgeRegularClass] = []
    hit: dict[int, int] = {}
    for cl in classes:
        X = actions[cl[0]]
        match = None
        for i in ids:
            if actions_isomorphic(library_action(i), X, type_preserving=False) is not None:
                match = i
                break
        if match is None:
            raise ActionError(f"edge-regular class of order {X.order} matches no library action")
        if match in hit:
            raise ActionError(f"two classes match L{match}")
        hit[match] = len(out)
        gens = [format_cycles(g) for g in X.group.generators]
        out.append(EdgeRegularClass(match, X.order, X.edge_types(), gens, len(cl)))
    missing = sorted(set(ids) - set(hit))
    if missing:
        raise ActionError(f"library actions not found: {missing}")
    out.sort(key=lambda c: c.library_id)
    return {
        "target": target,
        "ambient_conjugacy_classes": len(regs),
        "action_classes": len(out),
        "classes": [c.as_dict() for c in out],
    }


def count_point_line_regular(which: str, progress: Callable[[str], None] | None = None) -> int:
    """Number of ``Aut(Q)``-classes of subgroups regular on the points or on the lines."""
    aut = automorphism_group_Q()
    if which == "points":
        omega = range(64)
    elif which == "lines":
        omega = range(64, 160)
    else:
        raise ValueError("which must be 'points' or 'lines'")
    return len(enumerate_regular_subgroups(aut, omega, progress))
