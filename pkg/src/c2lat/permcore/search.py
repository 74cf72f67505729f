"""Backtracking searches: conjugators, isomorphisms from presentations, regular subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .finite import MAX_TABLE_ORDER, CayleyGroup
from .group import PermGroup
from .perm import Permutation, cycle_type, identity, inverse, mul

Progress = Callable[[str], None]


@dataclass(frozen=True)
class GroupIso:
    """Images of a source group's generators, in source generator order."""

    source_generators: tuple[str, ...]
    images: tuple[Permutation, ...]

    def as_dict(self) -> dict[str, Permutation]:
        return dict(zip(self.source_generators, self.images))


# ---------------------------------------------------------------------------
# stabilizer cosets as arrays

_STAB_CACHE: dict[tuple[int, int], tuple] = {}


def _stabilizer_data(G: PermGroup, point: int):
    """(transversal dict for the orbit of ``point``, stabilizer elements array)."""
    key = (id(G), point)
    hit = _STAB_CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1], hit[2]
    chain = G.chain_with_base([point])
    trans = chain.transversals[0] if chain.base and chain.base[0] == point else {point: G.identity()}
    stab = np.array(list(chain.elements(start=1)), dtype=np.int32).reshape(-1, G.degree)
    _STAB_CACHE[key] = (G, trans, stab)
    return trans, stab


def _as_array(perms: Iterable[Permutation], degree: int) -> np.ndarray:
    return np.array(list(perms), dtype=np.int32).reshape(-1, degree)


def _conjugates(cands: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Rows ``g h g^-1`` for every row ``g`` of ``cands``."""
    inv = np.argsort(cands, axis=1)
    return np.take_along_axis(cands, h[inv], axis=1)


# ---------------------------------------------------------------------------
# conjugacy

def _element_keys(group: PermGroup) -> set[bytes]:
    return {np.asarray(g, dtype=np.int32).tobytes() for g in group.elements()}


def find_conjugator(G: PermGroup, H: PermGroup, K: PermGroup,
                    *, K_elements: set[bytes] | None = None) -> Permutation | None:
    """An element ``g`` of ``G`` with ``g H g^-1 == K``, or ``None``.

    Any witness can be multiplied on the left by elements of ``K``, so the
    image of one fixed point moved by ``H`` only needs to range over
    representatives of the ``K``-orbits; the rest of ``g`` then runs through
    a coset of that point's stabilizer.
    """
    for X in (H, K):
        if X.degree != G.degree or not G.contains_group(X):
            raise ValueError("H and K must be subgroups of G")
    if H.order() != K.order():
        return None
    if H.order() == 1:
        return G.identity()
    if sorted(cycle_type(h) for h in H.elements()) != sorted(cycle_type(k) for k in K.elements()):
        return None
    members = K_elements if K_elements is not None else _element_keys(K)
    moved = [p for p in range(G.degree) if any(h[p] != p for h in H.generators)]
    w0 = moved[0]
    h_orbit = len(H.orbit(w0))
    trans, stab = _stabilizer_data(G, w0)
    hgens = [np.asarray(h, dtype=np.int32) for h in H.generators]
    for orb in K.orbits():
        r = orb[0]
        if len(orb) != h_orbit or r not in trans:
            continue
        t = np.asarray(trans[r], dtype=np.int32)
        cands = t[stab]
        ok = np.ones(len(cands), dtype=bool)
        for h in hgens:
            conj = _conjugates(cands[ok], h)
            hits = np.array([row.tobytes() in members for row in conj], dtype=bool)
            idx = np.flatnonzero(ok)
            ok[idx[~hits]] = False
            if not ok.any():
                break
        if ok.any():
            return tuple(int(x) for x in cands[np.flatnonzero(ok)[0]])
    return None


# ---------------------------------------------------------------------------
# isomorphism with a presented group

def search_generator_images(src: CayleyGroup, src_gens: Sequence[int],
                            relators: Sequence[Sequence[int]], dst: CayleyGroup,
                            *, allowed: Sequence[Sequence[int]] | None = None,
                            require_generation: bool = True,
                            class_reps_first: bool = True,
                            find_all: bool = False) -> list[list[int]]:
    """Assignments of ``dst`` elements to the source generators satisfying the relators.

    Generators are tried in decreasing element order.  Every image must have
    the same order as its source generator, products of assigned pairs must
    match in order, and each relator is checked as soon as all its letters
    are assigned.  ``allowed`` optionally restricts the candidates for each
    generator.  With ``class_reps_first`` the first generator only runs over
    conjugacy class representatives, which is sound when ``allowed`` is
    invariant under conjugation.
    """
    k = len(src_gens)
    order_of = src.element_orders
    seq = sorted(range(k), key=lambda i: -int(order_of[src_gens[i]]))
    pos = {g: p for p, g in enumerate(seq)}
    rel_at: list[list[Sequence[int]]] = [[] for _ in range(k)]
    for r in relators:
        if r:
            rel_at[max(pos[abs(s) - 1] for s in r)].append(r)
    pair_orders = {}
    for a in range(k):
        for b in range(a):
            ga, gb = src_gens[seq[a]], src_gens[seq[b]]
            pair_orders[(a, b)] = (int(order_of[src.table[ga, gb]]),
                                   int(order_of[src.table[ga, src.inverse[gb]]]))
    dst_orders = dst.element_orders
    cands: list[np.ndarray] = []
    for p, i in enumerate(seq):
        pool = np.flatnonzero(dst_orders == order_of[src_gens[i]])
        if allowed is not None:
            pool = np.intersect1d(pool, np.asarray(allowed[i], dtype=np.int64))
        cands.append(pool)
    if class_reps_first and k and allowed is None:
        reps = np.array([int(c[0]) for c in dst.conjugacy_classes()])
        cands[0] = np.intersect1d(cands[0], reps)

    results: list[list[int]] = []
    images = [0] * k

    def rec(p: int) -> bool:
        if p == k:
            if require_generation and not dst.generates(images):
                return False
            results.append(list(images))
            return not find_all
        i = seq[p]
        for x in cands[p]:
            x = int(x)
            ok = True
            for b in range(p):
                y = images[seq[b]]
                o1, o2 = pair_orders[(p, b)]
                if (dst_orders[dst.table[x, y]] != o1
                        or dst_orders[dst.table[x, dst.inverse[y]]] != o2):
                    ok = False
                    break
            if not ok:
                continue
            images[i] = x
            if all(dst.evaluate(r, images) == dst.identity for r in rel_at[p]):
                if rec(p + 1):
                    return True
        return False

    rec(0)
    return results


def isomorphic_groups(P, G: PermGroup, limit: int = MAX_TABLE_ORDER) -> GroupIso | None:
    """An isomorphism from the group presented by ``P`` onto ``G``, or ``None``.

    ``P`` is a :class:`c2lat.presentations.FinPresentation`.  Both sides are
    compared on element-order profile, centre order and abelianization order
    before any search is made.
    """
    from ..presentations import regular_representation

    if G.order() > limit:
        raise OverflowError(f"target group of order {G.order()} exceeds the search bound {limit}")
    src_group = regular_representation(P)
    if src_group.order() != G.order():
        return None
    src = CayleyGroup(src_group, limit)
    dst = CayleyGroup(G, limit)
    if src.invariants() != dst.invariants():
        return None
    gens = [src.index(g) for g in src_group.generators]
    found = search_generator_images(src, gens, P.relators, dst)
    if not found:
        return None
    return GroupIso(P.generators, tuple(dst.elements[x] for x in found[0]))


def groups_isomorphic(G: PermGroup, H: PermGroup, limit: int = MAX_TABLE_ORDER) -> tuple | None:
    """Isomorphism between two permutation groups, as generator images of ``G``.

    The relators come from a spanning tree of the Cayley graph of ``G`` (see
    :func:`presentation_relators`); generator images satisfying them and
    generating ``H`` of equal order give an isomorphism.
    """
    if G.order() != H.order():
        return None
    src = CayleyGroup(G, limit)
    dst = CayleyGroup(H, limit)
    if src.invariants() != dst.invariants():
        return None
    rels = presentation_relators(src, [src.index(g) for g in G.generators])
    found = search_generator_images(src, [src.index(g) for g in G.generators], rels, dst)
    if not found:
        return None
    return tuple(dst.elements[x] for x in found[0])


def presentation_relators(group: CayleyGroup, gens: Sequence[int]) -> list[tuple[int, ...]]:
    """Defining relators for ``group`` on ``gens`` read off a spanning tree of the Cayley graph.

    Every element gets a word from a breadth-first search; for each element
    ``x`` and generator ``s`` the word of ``s x`` must equal ``s`` followed by
    the word of ``x``.  These relators define the group.
    """
    words: dict[int, tuple[int, ...]] = {group.identity: ()}
    order = [group.identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for k, s in enumerate(gens):
            y = group.mul(s, x)
            if y not in words:
                words[y] = (k + 1,) + words[x]
                order.append(y)
    rels = []
    seen = set()
    for x in order:
        for k, s in enumerate(gens):
            y = group.mul(s, x)
            rel = (k + 1,) + words[x] + tuple(-t for t in reversed(words[y]))
            red = _reduce(rel)
            if red and red not in seen:
                seen.add(red)
                rels.append(red)
    return rels


def _reduce(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# regular subgroups

def _semiregular_closure(base_elems: np.ndarray, gens: list[np.ndarray], omega: np.ndarray,
                         limit: int) -> np.ndarray | None:
    """Closure of ``base_elems`` (a group) under ``gens``; ``None`` once it stops being
    semiregular on ``omega`` or grows beyond ``limit`` elements."""
    seen = {row.tobytes() for row in base_elems}
    elems = list(base_elems)
    frontier = list(base_elems)
    while frontier:
        new = []
        F = np.array(frontier)
        for g in gens:
            Y = g[F]
            for y in Y:
                key = y.tobytes()
                if key in seen:
                    continue
                if (y[omega] == omega).any():
                    return None
                seen.add(key)
                elems.append(y)
                new.append(y)
                if len(elems) > limit:
                    return None
        frontier = new
    return np.array(elems)


def _power_is_identity(cands: np.ndarray, n: int) -> np.ndarray:
    """Row mask of candidates ``g`` with ``g^n == 1``."""
    deg = cands.shape[1]
    ident = np.arange(deg)
    result = np.broadcast_to(ident, cands.shape).copy()
    base = cands.copy()
    k = n
    while k:
        if k & 1:
            result = np.take_along_axis(base, result, axis=1)
        base = np.take_along_axis(base, base, axis=1)
        k >>= 1
    return (result == ident).all(axis=1)


def _generators_of(rows: np.ndarray, degree: int) -> list[np.ndarray]:
    """A generating subset of the group whose elements are the given rows."""
    gens: list[Permutation] = []
    group = PermGroup([], degree)
    for row in rows:
        if group.order() == len(rows):
            break
        g = tuple(int(x) for x in row)
        if g not in group:
            gens.append(g)
            group = PermGroup(gens, degree)
    return [np.asarray(g, dtype=np.int32) for g in gens]


def _orbit_representatives(cands: np.ndarray, gens: list[np.ndarray]) -> list[int]:
    """Least row index in each orbit of ``cands`` under conjugation by ``gens``."""
    parent = list(range(len(cands)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    index = {row.tobytes(): i for i, row in enumerate(cands)}
    for h in gens:
        conj = h[cands[:, np.argsort(h)]]
        for i, row in enumerate(conj):
            a, b = find(i), find(index[row.tobytes()])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [i for i in range(len(cands)) if find(i) == i]


@dataclass
class _Found:
    elems: np.ndarray
    gens: list[Permutation]
    keyset: set[bytes]


def _class_invariant(elems: np.ndarray) -> tuple:
    return (len(elems), tuple(sorted(cycle_type(tuple(int(x) for x in e)) for e in elems)))


def enumerate_regular_subgroups(A: PermGroup, omega: Iterable[int],
                                progress: Progress | None = None) -> list[PermGroup]:
    """Representatives of the ``A``-conjugacy classes of subgroups regular on ``omega``.

    The search grows semiregular subgroups one generator at a time: from a
    class representative ``S`` it adjoins an element taking the least point
    ``w0`` of ``omega`` to the least point outside ``S w0``.  Every regular
    subgroup arises this way up to conjugacy, and semiregular intermediates
    are deduplicated by conjugacy at each step.  Candidate elements run over
    one coset of the stabilizer of ``w0``, taken up to conjugation by the
    elements fixing both points and normalizing ``S``.
    """
    pts = sorted(set(omega))
    if not pts:
        return []
    if not A.is_transitive_on(pts) or A.orbit(pts[0]) != pts:
        raise ValueError("A must be transitive on the given point set")
    n = len(pts)
    d = A.degree
    w0 = pts[0]
    om = np.array(pts, dtype=np.int64)
    trans, stab = _stabilizer_data(A, w0)
    say = progress or (lambda msg: None)

    ident = np.arange(d, dtype=np.int32)
    trivial = _Found(ident[None, :], [], {ident.tobytes()})
    buckets: dict[tuple, list[_Found]] = {}
    found_order: list[_Found] = []

    def register(T: np.ndarray, gens: list[Permutation]) -> bool:
        keyset = {row.tobytes() for row in T}
        inv = _class_invariant(T)
        bucket = buckets.setdefault(inv, [])
        cand_group = PermGroup(gens, d)
        for other in bucket:
            if other.keyset == keyset:
                return False
            if find_conjugator(A, cand_group, PermGroup(other.gens, d),
                               K_elements=other.keyset) is not None:
                return False
        rec = _Found(T, gens, keyset)
        bucket.append(rec)
        found_order.append(rec)
        return True

    layer = [trivial]
    regular: list[_Found] = []
    depth = 0
    while layer:
        depth += 1
        nxt: list[_Found] = []
        for S in layer:
            covered = set(int(x) for x in S.elems[:, w0])
            target = next(p for p in pts if p not in covered)
            t = np.asarray(trans[target], dtype=np.int32)
            cands = t[stab]
            mask = (cands[:, om] != om).all(axis=1)
            mask &= _power_is_identity(cands, n)
            cands = cands[mask]
            sgens = [np.asarray(g, dtype=np.int32) for g in S.gens]
            # conjugating by elements that fix w0 and target and normalize S
            # permutes the candidates and gives conjugate subgroups
            H = stab[stab[:, target] == target]
            for sg in sgens:
                conj = _conjugates(H, sg)
                H = H[np.array([row.tobytes() in S.keyset for row in conj], dtype=bool)]
            for rep in _orbit_representatives(cands, _generators_of(H, d)):
                g = cands[rep]
                T = _semiregular_closure(S.elems, sgens + [g], om, n)
                if T is None or n % len(T):
                    continue
                gens = S.gens + [tuple(int(x) for x in g)]
                if register(T, gens):
                    if len(T) == n:
                        regular.append(found_order[-1])
                    else:
                        nxt.append(found_order[-1])
        say(f"depth {depth}: {len(nxt)} new semiregular classes, {len(regular)} regular so far")
        layer = nxt

    regular.sort(key=lambda f: sorted(f.keyset))
    return [PermGroup(f.gens, d) for f in regular]
