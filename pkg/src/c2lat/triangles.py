"""Triangles of groups with trivial face group, their links and the building test.

Vertex ``k`` (1, 2, 3) carries a library action ``V_k``; edge ``i`` carries a
model edge group ``E_i`` and embeds into the two vertices ``j != i``.  For a
family triple ``(r, s, t)`` the vertices are ``L_r``, ``L_s``, ``L_t`` and
the embedding ``eps_ij`` is ``kappa o gamma_ij``, where ``kappa`` is the
standard embedding of the model onto the a-side or b-side edge subgroup of
``V_j`` fixed by the family type.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .actions import LocalAction, library_action
from .edgemodels import EdgeModel, edge_model
from .geometry import BipartiteGraph, GeometryError, coset_graph, diameter, girth
from .geometry.incidence import graph_polygon_order
from .permcore import CayleyGroup, extend_homomorphism
from .presentations import FinPresentation, invert_word
from .presentations.library import K44_IDS, K66_IDS, Q_IDS

# order in which the six edge automorphisms are listed
EMBEDDING_KEYS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))

# side of V_j receiving eps_ij, per family type
SIDES = {
    1: {(1, 2): "a", (1, 3): "a", (2, 1): "a", (2, 3): "b", (3, 1): "b", (3, 2): "b"},
    2: {(1, 2): "b", (1, 3): "a", (2, 1): "b", (2, 3): "b", (3, 1): "a", (3, 2): "a"},
}

LINK_NAMES = {(4, (3, 5)): "Q(3,5)", (4, (5, 3)): "Q(5,3)", (2, (3, 3)): "K4,4", (2, (5, 5)): "K6,6"}


class TriangleError(ValueError):
    pass


@lru_cache(maxsize=None)
def standard_embedding(i: int, side: str) -> tuple[int, ...]:
    """``kappa``: element index of the model -> element index of ``L_i`` for one side."""
    X = library_action(i)
    model = edge_model(side_model(i, side))
    gens = X.gens_a if side == "a" else X.gens_b
    if len(gens) != len(model.gens):
        raise TriangleError(f"L{i} side {side} has {len(gens)} generators, model {model.name} "
                            f"has {len(model.gens)}")
    f = extend_homomorphism(model.cayley, model.gens, X.cayley, gens)
    if f is None or len(set(f.values())) != model.order:
        raise TriangleError(f"e_k -> {side}_k is not a monomorphism {model.name} -> L{i}")
    return tuple(f[x] for x in range(model.order))


@lru_cache(maxsize=None)
def side_model(i: int, side: str) -> str:
    ta, tb = library_action(i).edge_types()
    return ta if side == "a" else tb


@dataclass(frozen=True)
class Embedding:
    edge: int
    vertex: int
    side: str
    gamma: int
    images: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TriangleOfGroups:
    """Vertex groups ``L_r, L_s, L_t``, model edge groups and the six embeddings."""

    family_type: int
    ids: tuple[int, int, int]
    vertices: tuple[LocalAction, LocalAction, LocalAction]
    edges: tuple[EdgeModel, EdgeModel, EdgeModel]
    embeddings: Mapping[tuple[int, int], Embedding]

    def vertex(self, k: int) -> LocalAction:
        return self.vertices[k - 1]

    def edge(self, i: int) -> EdgeModel:
        return self.edges[i - 1]

    def gamma_labels(self) -> tuple[str, ...]:
        return tuple(self.edge(i).labels[self.embeddings[(i, j)].gamma] for i, j in EMBEDDING_KEYS)

    def spec(self) -> dict:
        r, s, t = self.ids
        return {"r": r, "s": s, "t": t, "family_type": self.family_type,
                "gammas": list(self.gamma_labels())}


def family_edge_models(family_type: int, r: int, s: int, t: int) -> tuple[str, str, str]:
    """Model names of ``E_1, E_2, E_3``; raises when the sides do not match up."""
    if family_type not in SIDES:
        raise TriangleError(f"family type must be 1 or 2, got {family_type}")
    if r not in Q_IDS or s not in Q_IDS:
        raise TriangleError(f"r and s must be quadrangle actions 1..11, got {r}, {s}")
    allowed = K44_IDS if family_type == 1 else K66_IDS
    if t not in allowed:
        raise TriangleError(f"t = {t} is not allowed for family type {family_type}")
    ids = {1: r, 2: s, 3: t}
    out = []
    for i in (1, 2, 3):
        j, k = (x for x in (1, 2, 3) if x != i)
        mj = side_model(ids[j], SIDES[family_type][(i, j)])
        mk = side_model(ids[k], SIDES[family_type][(i, k)])
        if mj != mk:
            raise TriangleError(f"edge {i}: {mj} in L{ids[j]} does not match {mk} in L{ids[k]}")
        out.append(mj)
    return out[0], out[1], out[2]


def make_triangle(r: int, s: int, t: int, family_type: int,
                  gammas: Sequence[str] | Mapping[tuple[int, int], str] | None = None,
                  check: bool = True) -> TriangleOfGroups:
    """Build ``T(L_r, L_s, L_t, E_1, E_2, E_3, (kappa o gamma_ij))`` and check it.

    ``gammas`` lists automorphism labels in the order of ``EMBEDDING_KEYS``
    (or maps those keys to labels); omitted means all identities.
    """
    models = family_edge_models(family_type, r, s, t)
    ids = (r, s, t)
    if gammas is None:
        labels = ["id"] * 6
    elif isinstance(gammas, Mapping):
        labels = [gammas.get(key, "id") for key in EMBEDDING_KEYS]
    else:
        labels = list(gammas)
    if len(labels) != 6:
        raise TriangleError(f"six automorphism labels expected, got {len(labels)}")
    embeddings = {}
    for (i, j), lab in zip(EMBEDDING_KEYS, labels):
        E = edge_model(models[i - 1])
        try:
            g = E.label_index(lab)
        except ValueError as exc:
            raise TriangleError(f"gamma_{i}{j}: {exc}") from None
        side = SIDES[family_type][(i, j)]
        kappa = standard_embedding(ids[j - 1], side)
        gamma = E.automorphisms[g]
        embeddings[(i, j)] = Embedding(i, j, side, g, tuple(kappa[gamma[x]] for x in range(E.order)))
    T = TriangleOfGroups(family_type, ids, tuple(library_action(x) for x in ids),
                         tuple(edge_model(m) for m in models), embeddings)
    if check:
        problems = nondegeneracy_problems(T)
        if problems:
            raise TriangleError("; ".join(problems))
    return T


def triangle_from_spec(spec: Mapping) -> TriangleOfGroups:
    missing = [k for k in ("r", "s", "t", "family_type", "gammas") if k not in spec]
    if missing:
        raise TriangleError(f"triangle spec lacks {', '.join(missing)}")
    return make_triangle(int(spec["r"]), int(spec["s"]), int(spec["t"]), int(spec["family_type"]),
                         list(spec["gammas"]))


def load_triangle(path: str) -> TriangleOfGroups:
    with open(path) as fh:
        text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TriangleError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(spec, dict):
        raise TriangleError(f"{path}: a JSON object is expected")
    return triangle_from_spec(spec)


# ---------------------------------------------------------------------------
# non-degeneracy

def _incident(T: TriangleOfGroups, k: int) -> list[Embedding]:
    return [T.embeddings[(i, k)] for i in (1, 2, 3) if i != k]


def nondegeneracy_problems(T: TriangleOfGroups) -> list[str]:
    """Violated conditions; empty for a non-degenerate triangle with trivial face group."""
    problems = []
    for (i, j), emb in T.embeddings.items():
        E = T.edge(i)
        C = T.vertex(j).cayley
        imgs = [emb.images[g] for g in E.gens]
        for rel in E.presentation.relators:
            if C.evaluate(rel, imgs) != C.identity:
                problems.append(f"eps_{i}{j} does not respect the relators of {E.name}")
                break
        if len(set(emb.images)) != E.order:
            problems.append(f"eps_{i}{j} is not injective")
    for k in (1, 2, 3):
        V = T.vertex(k)
        C = V.cayley
        e1, e2 = _incident(T, k)
        I1, I2 = set(e1.images), set(e2.images)
        common = I1 & I2
        if common != {C.identity}:
            problems.append(f"edge images in V_{k} meet in {len(common)} elements")
        if I1 == common or I2 == common:
            problems.append(f"an edge image in V_{k} lies in the other")
        if len(C.closure(sorted(I1 | I2))) != C.order:
            problems.append(f"edge images do not generate V_{k}")
    return problems


# ---------------------------------------------------------------------------
# links

@dataclass(frozen=True)
class LocalActionSummary:
    vertex: int
    graph: BipartiteGraph
    girth: int
    diameter: int
    angle: tuple[int, int]

    @property
    def angle_fraction(self) -> Fraction:
        """The angle ``2 pi / girth`` as a multiple of ``pi``."""
        return Fraction(self.angle[0], self.angle[1])


@lru_cache(maxsize=256)
def _link(vertex_id: int, points: tuple[int, ...], lines: tuple[int, ...]) -> tuple:
    V = library_action(vertex_id)
    graph = coset_graph(V.group, V.subgroup(points), V.subgroup(lines), V.cayley).graph
    c = girth(graph)
    d = diameter(graph)
    order = None
    if c % 2 == 0:
        try:
            order = graph_polygon_order(graph, c // 2)
        except GeometryError:
            order = None
    return graph, c, d, order


def _link_data(T: TriangleOfGroups, k: int) -> tuple:
    by_side = {e.side: tuple(sorted(e.images)) for e in _incident(T, k)}
    # points are the cosets of the b-side image, as for the library actions
    return _link(T.ids[k - 1], by_side["b"], by_side["a"])


def local_action(T: TriangleOfGroups, k: int) -> LocalActionSummary:
    if k not in (1, 2, 3):
        raise ValueError("vertex type must be 1, 2 or 3")
    graph, c, d, _ = _link_data(T, k)
    return LocalActionSummary(k, graph, c, d, (2, c))


@dataclass(frozen=True)
class BuildingVerdict:
    nondegenerate: bool
    problems: tuple[str, ...]
    links: tuple[tuple[int, tuple[int, int] | None], ...]
    angles: tuple[Fraction, Fraction, Fraction]
    is_building: bool

    @property
    def angle_sum(self) -> Fraction:
        return sum(self.angles, Fraction(0))

    def link_names(self) -> tuple[str, ...]:
        return tuple(LINK_NAMES.get((m, st), f"{m}-gon {st}") if st else "not a polygon"
                     for m, st in self.links)

    def as_dict(self) -> dict:
        return {
            "building": self.is_building,
            "nondegenerate": self.nondegenerate,
            "problems": list(self.problems),
            "links": [{"m": m, "order": list(st) if st else None, "name": name}
                      for (m, st), name in zip(self.links, self.link_names())],
            "angles_over_pi": [str(a) for a in self.angles],
            "angle_sum_over_pi": str(self.angle_sum),
        }


def check_building_criterion(T: TriangleOfGroups) -> BuildingVerdict:
    """Each link a generalized ``m_k``-gon and the angles ``pi/m_k`` summing to ``pi``."""
    problems = nondegeneracy_problems(T)
    links = []
    angles = []
    for k in (1, 2, 3):
        _, c, d, order = _link_data(T, k)
        m = c // 2
        links.append((m, order if d == m else None))
        angles.append(Fraction(2, c))
    ok = (not problems and all(st is not None for _, st in links)
          and sum(angles, Fraction(0)) == 1)
    return BuildingVerdict(not problems, tuple(problems), tuple(links), tuple(angles), ok)


# ---------------------------------------------------------------------------
# fundamental group

@lru_cache(maxsize=None)
def _element_words(vertex_id: int) -> tuple[tuple[int, ...], ...]:
    """A shortest word in the presentation generators for every element of ``L_i``."""
    V = library_action(vertex_id)
    C: CayleyGroup = V.cayley
    gens = [C.index(g) for g in V.group.generators]
    words: dict[int, tuple[int, ...]] = {C.identity: ()}
    frontier = [C.identity]
    while frontier:
        new = []
        for x in frontier:
            for k, g in enumerate(gens):
                for sign, y in ((1, C.mul(x, g)), (-1, C.mul(x, C.inverse[g]))):
                    if y not in words:
                        words[y] = words[x] + (sign * (k + 1),)
                        new.append(y)
        frontier = new
    return tuple(words[x] for x in range(C.order))


def fundamental_presentation(T: TriangleOfGroups) -> FinPresentation:
    """Presentation of the colimit: vertex presentations plus edge identifications.

    Generator ``g`` of ``V_k`` is renamed ``g_k``.  For each edge ``i`` and
    each generator ``e`` of ``E_i`` the relator ``eps_ij(e) eps_ik(e)^-1``
    identifies its two images.
    """
    from .presentations import library_presentation

    names: list[str] = []
    offsets = []
    relators: list[tuple[int, ...]] = []
    for k in (1, 2, 3):
        P = library_presentation(T.ids[k - 1])
        offsets.append(len(names))
        names += [f"{g}_{k}" for g in P.generators]
        off = offsets[-1]
        relators += [tuple(x + off if x > 0 else x - off for x in rel) for rel in P.relators]

    def word_in(k: int, element: int) -> tuple[int, ...]:
        off = offsets[k - 1]
        return tuple(x + off if x > 0 else x - off for x in _element_words(T.ids[k - 1])[element])

    for i in (1, 2, 3):
        j, k = (x for x in (1, 2, 3) if x != i)
        E = T.edge(i)
        for g in E.gens:
            left = word_in(j, T.embeddings[(i, j)].images[g])
            right = word_in(k, T.embeddings[(i, k)].images[g])
            relators.append(left + invert_word(right))
    r, s, t = T.ids
    return FinPresentation(f"pi1 T({r},{s},{t})", tuple(names), tuple(relators))
