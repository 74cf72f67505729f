"""Type-preserving and full isomorphism classes of triangles within a family.

A triangle in a family is the tuple ``(g12, g13, g21, g23, g31, g32)`` of
edge automorphisms, an element of ``C = Aut(E_1)^2 x Aut(E_2)^2 x Aut(E_3)^2``.
A type-preserving isomorphism changes it to ``g_ij -> theta_ij g_ij phi_i^-1``
where ``phi_i`` is any automorphism of ``E_i`` and ``(theta_ij)`` comes from
the local automorphism group of ``V_j`` acting on the side ``eps_ij`` lands
on.  Classes are the orbits of this action, found by label propagation over
all of ``C``; each class is represented by its lexicographically least tuple
(automorphism indices, identity first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from ..edgemodels import EdgeModel, edge_model
from ..triangles import EMBEDDING_KEYS, SIDES
from .families import FamilyRecord
from .sigma import SigmaGroup, sigma

# position of gamma_ij in the tuple
POS = {key: k for k, key in enumerate(EMBEDDING_KEYS)}
MIRROR = tuple(POS[key] for key in ((2, 1), (2, 3), (1, 2), (1, 3), (3, 2), (3, 1)))


class CountError(RuntimeError):
    pass


@dataclass
class ClassCount:
    family: FamilyRecord
    tp_count: int
    iso_count: int
    representatives: list[tuple[str, ...]]
    coset_sizes: list[int]
    factored_count: int | None = None
    checks: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        f = self.family
        return {
            "family_type": f.family_type,
            "r": f.label[0], "s": f.label[1], "t": f.label[2],
            "computed_as": list(f.triple),
            "item": f.item,
            "edge_models": list(f.models),
            "tp_count": self.tp_count,
            "iso_count": self.iso_count,
            "representatives": [list(r) for r in self.representatives],
        }


class FamilySpace:
    """The set ``C`` of a family with the two groups acting on it."""

    def __init__(self, family: FamilyRecord):
        self.family = family
        ftype = family.family_type
        ids = family.triple
        self.edge_models: list[EdgeModel] = [edge_model(m) for m in family.models]
        self.comp_models = [self.edge_models[i - 1] for i, _ in EMBEDDING_KEYS]
        self.sizes = [m.naut for m in self.comp_models]
        self.size = int(np.prod(self.sizes))
        self.sigmas: list[SigmaGroup] = [sigma(x) for x in ids]
        # (vertex j) -> list of (position, side)
        self.vertex_slots = {j: [(POS[(i, j)], SIDES[ftype][(i, j)])
                                 for i in (1, 2, 3) if i != j] for j in (1, 2, 3)}
        for j, slots in self.vertex_slots.items():
            S = self.sigmas[j - 1]
            for pos, side in slots:
                model, _ = S.side(side)
                if model is not self.comp_models[pos]:
                    raise CountError(f"{family.name()}: side {side} of L{ids[j - 1]} is "
                                     f"{model.name}, slot holds {self.comp_models[pos].name}")
        radix = [int(np.prod(self.sizes[k + 1:])) for k in range(6)]
        self.radix = np.array(radix, dtype=np.int64)
        grid = np.indices(self.sizes).reshape(6, -1).T
        self.tuples = grid.astype(np.int64)

    # -- elementary maps on index tuples -------------------------------------
    def encode(self, tuples: np.ndarray) -> np.ndarray:
        return tuples @ self.radix

    def left(self, j: int, pair: tuple[int, int]) -> np.ndarray:
        """Permutation of ``C`` for ``theta`` from ``Sigma^j``: ``g_ij -> theta g_ij``."""
        out = self.tuples.copy()
        for pos, side in self.vertex_slots[j]:
            th = pair[0] if side == "a" else pair[1]
            table = np.array(self.comp_models[pos].mult_table[th], dtype=np.int64)
            out[:, pos] = table[out[:, pos]]
        return self.encode(out)

    def right(self, i: int, phi: int) -> np.ndarray:
        """Permutation of ``C`` for ``phi`` in ``Aut(E_i)``: ``g_ij -> g_ij phi^-1``."""
        E = self.edge_models[i - 1]
        inv = E.inverse(phi)
        col = np.array([E.mult_table[x][inv] for x in range(E.naut)], dtype=np.int64)
        out = self.tuples.copy()
        for (a, b), pos in POS.items():
            if a == i:
                out[:, pos] = col[out[:, pos]]
        return self.encode(out)

    def mirror(self) -> np.ndarray:
        if self.comp_models[0] is not self.comp_models[2] or self.family.r != self.family.s:
            raise CountError(f"{self.family.name()} has no mirror symmetry")
        return self.encode(self.tuples[:, list(MIRROR)])

    def generators(self) -> list[np.ndarray]:
        gens = []
        for j in (1, 2, 3):
            for pair in _generating_pairs(self.sigmas[j - 1]):
                gens.append(self.left(j, pair))
        for i in (1, 2, 3):
            E = self.edge_models[i - 1]
            for phi in _generating_auts(E):
                gens.append(self.right(i, phi))
        return gens

    def labels_of(self, tup) -> tuple[str, ...]:
        return tuple(m.labels[int(x)] for m, x in zip(self.comp_models, tup))


def _generating_pairs(S: SigmaGroup) -> list[tuple[int, int]]:
    A, B = S.model_a, S.model_b
    gens: list[tuple[int, int]] = []
    have = {(0, 0)}
    for p in sorted(S.elements):
        if p in have:
            continue
        gens.append(p)
        frontier = list(have)
        while frontier:
            new = []
            for x, y in frontier:
                for g, h in gens:
                    z = (A.mult_table[g][x], B.mult_table[h][y])
                    if z not in have:
                        have.add(z)
                        new.append(z)
            frontier = new
    return gens


def _generating_auts(E: EdgeModel) -> list[int]:
    gens: list[int] = []
    have = {0}
    for a in range(E.naut):
        if a in have:
            continue
        gens.append(a)
        have = set(E.subgroup([E.labels[g] for g in gens]))
    return gens


def orbit_labels(n: int, gens: list[np.ndarray]) -> np.ndarray:
    """Least member of the orbit of each point under the permutations ``gens``."""
    labels = np.arange(n, dtype=np.int64)
    inverses = [np.argsort(g) for g in gens]
    while True:
        new = labels.copy()
        for g, ginv in zip(gens, inverses):
            np.minimum(new, labels[g], out=new)
            np.minimum(new, labels[ginv], out=new)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def _small_double_cosets(E: EdgeModel, H: frozenset[int], K: frozenset[int]) -> int:
    """Number of double cosets ``H \\ Aut(E) / K``."""
    seen: set[int] = set()
    count = 0
    for x in range(E.naut):
        if x in seen:
            continue
        count += 1
        for h in H:
            for k in K:
                seen.add(E.mult_table[E.mult_table[h][x]][k])
    return count


def factored_count(space: FamilySpace) -> int | None:
    """Product of three small double-coset counts, valid when every Sigma is decomposable.

    For edge ``i`` with embeddings into ``V_j`` and ``V_k`` the classes of
    ``(g_ij, g_ik)`` are the double cosets of ``g_ik g_ij^-1`` under the
    ``V_k`` projection on the left and the ``V_j`` projection on the right.
    """
    if not all(S.decomposable for S in space.sigmas):
        return None
    total = 1
    for i in (1, 2, 3):
        j, k = (x for x in (1, 2, 3) if x != i)
        E = space.edge_models[i - 1]
        sides = SIDES[space.family.family_type]
        Sj, Sk = space.sigmas[j - 1], space.sigmas[k - 1]
        Hj = Sj.proj_a if sides[(i, j)] == "a" else Sj.proj_b
        Hk = Sk.proj_a if sides[(i, k)] == "a" else Sk.proj_b
        total *= _small_double_cosets(E, Hk, Hj)
    return total


def _stabilizer_size(space: FamilySpace, tup: np.ndarray) -> int:
    """``|{(l, k) : l x k^-1 = x}|``, counted over the right group ``prod Aut(E_i)``."""
    sig_sets = []
    for j in (1, 2, 3):
        sig_sets.append(space.sigmas[j - 1].elements)
    count = 0
    for phis in product(*(range(E.naut) for E in space.edge_models)):
        # theta_ij = g_ij phi_i g_ij^-1 must come from Sigma^j on the right sides
        theta = []
        for (i, j), pos in POS.items():
            m = space.comp_models[pos]
            g = int(tup[pos])
            theta.append(m.mult_table[m.mult_table[g][phis[i - 1]]][m.inverse(g)])
        ok = True
        for j in (1, 2, 3):
            pair = [0, 0]
            for pos, side in space.vertex_slots[j]:
                pair[0 if side == "a" else 1] = theta[pos]
            if tuple(pair) not in sig_sets[j - 1]:
                ok = False
                break
        if ok:
            count += 1
    return count


@lru_cache(maxsize=None)
def count_family(family: FamilyRecord) -> ClassCount:
    """Type-preserving classes with representatives, the factored cross-check and the
    mirror reduction when the family admits it."""
    space = FamilySpace(family)
    labels = orbit_labels(space.size, space.generators())
    reps, sizes = np.unique(labels, return_counts=True)
    tp = len(reps)
    # independent size of each double coset from its stabilizer
    left_order = int(np.prod([S.order for S in space.sigmas]))
    right_order = int(np.prod([E.naut for E in space.edge_models]))
    stab_sizes = [left_order * right_order // _stabilizer_size(space, space.tuples[x])
                  for x in reps]
    checks = {
        "orbit sizes sum to |C|": int(sizes.sum()) == space.size,
        "orbit sizes match stabilizers": [int(s) for s in sizes] == stab_sizes,
        "sizes from stabilizers sum to |C|": sum(stab_sizes) == space.size,
    }
    fc = factored_count(space)
    if fc is not None:
        checks["factored count agrees"] = fc == tp
    iso = tp
    if family.mirror_eligible:
        m = space.mirror()
        # the mirror maps classes to classes
        image = {}
        consistent = True
        for x, y in zip(labels, labels[m]):
            if image.setdefault(int(x), int(y)) != int(y):
                consistent = False
                break
        checks["mirror is an involution"] = bool(np.array_equal(m[m], np.arange(space.size)))
        checks["mirror preserves classes"] = consistent
        iso = len({frozenset((x, image[x])) for x in image})
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise CountError(f"{family.name()}: {', '.join(failed)}")
    rep_labels = [space.labels_of(space.tuples[x]) for x in reps]
    return ClassCount(family, tp, iso, rep_labels, [int(s) for s in sizes], fc, checks)


def count_tp_classes(family: FamilyRecord) -> ClassCount:
    return count_family(family)


def count_iso_classes(family: FamilyRecord) -> int:
    return count_family(family).iso_count


# ---------------------------------------------------------------------------
# direct route for the vertex-exchanging isomorphisms

def _edge_preserving_automorphisms(i: int) -> list[tuple[dict[int, int], bool]]:
    """Automorphisms of ``L_i`` mapping the edge subgroups onto themselves or onto each
    other, with a flag telling whether they are exchanged."""
    from ..actions import library_action
    from ..permcore import extend_homomorphism, subgroup_isomorphisms

    X = library_action(i)
    C = X.cayley
    gens = list(X.gens_a) + list(X.gens_b)
    out = []
    for swapped in (False, True):
        ta, tb = (X.Eb, X.Ea) if swapped else (X.Ea, X.Eb)
        for alpha in subgroup_isomorphisms(C, list(X.gens_a), X.Ea, C, ta):
            for beta in subgroup_isomorphisms(C, list(X.gens_b), X.Eb, C, tb):
                f = extend_homomorphism(C, gens, C, alpha + beta)
                if f is not None and len(f) == C.order and len(set(f.values())) == C.order:
                    out.append((f, swapped))
    return out


def mirror_classes_direct(family: FamilyRecord) -> int:
    """Isomorphism classes of a family with ``r == s``, from the definition.

    Every isomorphism of triangles exchanging vertex types 1 and 2 is a
    triple of vertex group isomorphisms ``sigma_k`` carrying the embedded edge
    subgroups onto those of the image; applying it to each class
    representative and reading off the tuple of the image triangle joins
    classes.  This does not use the tuple formula for the mirror.
    """
    from ..triangles import make_triangle, standard_embedding

    if family.r != family.s:
        return count_family(family).tp_count
    space = FamilySpace(family)
    labels = orbit_labels(space.size, space.generators())
    reps = np.unique(labels)
    ftype = family.family_type
    ids = family.triple
    perm = {1: 2, 2: 1, 3: 3}
    inv_kappa = {}
    for (i, j), side in SIDES[ftype].items():
        k = standard_embedding(ids[j - 1], side)
        inv_kappa[(i, j)] = {y: x for x, y in enumerate(k)}
    # sides are not filtered here; maps landing on the wrong subgroup are skipped below
    auts_q = [f for f, _ in _edge_preserving_automorphisms(family.r)]
    auts_t = [f for f, _ in _edge_preserving_automorphisms(family.t)]
    parent = {int(x): int(x) for x in reps}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for x in reps:
        T = make_triangle(*ids, ftype, space.labels_of(space.tuples[x]), check=False)
        for s1 in auts_q:
            for s2 in auts_q:
                for s3 in auts_t:
                    sig = {1: s1, 2: s2, 3: s3}
                    tup = [0] * 6
                    ok = True
                    for (i, j), emb in T.embeddings.items():
                        key = (perm[i], perm[j])
                        img = [sig[j][y] for y in emb.images]
                        ik = inv_kappa[key]
                        if any(y not in ik for y in img):
                            ok = False
                            break
                        m = space.comp_models[POS[key]]
                        tup[POS[key]] = m.aut_index([ik[y] for y in img])
                    if not ok:
                        continue
                    y = int(labels[int(np.array(tup) @ space.radix)])
                    a, b = find(int(x)), find(y)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    return len({find(int(x)) for x in reps})
