"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .perm import (
    Permutation,
    check_permutation,
    identity,
    inverse,
    is_identity,
    mul,
)


class StabilizerChain:
    """Base, strong generators and explicit transversals.

    ``transversals[i]`` maps each point ``x`` of the orbit of ``base[i]`` under
    the ``i``-th stabilizer to an element ``u`` with ``u[base[i]] == x``.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[Permutation] = []
        self.transversals: list[dict[int, Permutation]] = []
        self._level_gens: list[list[Permutation]] = []
        self._build([g for g in generators if not is_identity(g)], list(base_prefix))

    # -- construction -------------------------------------------------
    def _moved_point(self, g: Permutation) -> int:
        for i, x in enumerate(g):
            if i != x:
                return i
        raise ValueError("identity has no moved point")

    def _fixes_base(self, g: Permutation, upto: int) -> bool:
        return all(g[b] == b for b in self.base[:upto])

    def _extend_level(self, i: int) -> None:
        """Bring level ``i`` up to date with the strong generators.

        Existing transversal entries are kept, so Schreier generators that
        were already sifted remain valid and are not checked again.
        """
        known = self._level_gens[i]
        have = {id(s) for s in known}
        for s in self.strong:
            if id(s) not in have and self._fixes_base(s, i):
                known.append(s)
                have.add(id(s))
        trans = self.transversals[i]
        if not trans:
            trans[self.base[i]] = identity(self.degree)
        queue = deque(trans)
        while queue:
            x = queue.popleft()
            ux = trans[x]
            for s in known:
                y = s[x]
                if y not in trans:
                    trans[y] = mul(s, ux)
                    queue.append(y)

    def _append_base_point(self, point: int) -> None:
        self.base.append(point)
        self.transversals.append({})
        self._level_gens.append([])
        self._checked.append(set())

    def _build(self, gens: list[Permutation], prefix: list[int]) -> None:
        self._checked: list[set[tuple[int, int]]] = []
        for b in prefix:
            if b not in self.base:
                self._append_base_point(b)
        self.strong = list(gens)
        for g in self.strong:
            if self._fixes_base(g, len(self.base)):
                self._append_base_point(self._moved_point(g))
        for i in range(len(self.base)):
            self._extend_level(i)
        i = len(self.base) - 1
        while i >= 0:
            restart = self._check_level(i)
            if restart is None:
                i -= 1
            else:
                i = restart

    def _check_level(self, i: int) -> int | None:
        """Sift unchecked Schreier generators of level ``i``.

        Returns the level to resume at when a new strong generator was added.
        """
        trans = self.transversals[i]
        checked = self._checked[i]
        for x in list(trans):
            ux = trans[x]
            for k, s in enumerate(self._level_gens[i]):
                if (x, k) in checked:
                    continue
                checked.add((x, k))
                h = mul(inverse(trans[s[x]]), mul(s, ux))
                residue, level = self.strip(h, start=i + 1)
                if is_identity(residue):
                    continue
                self.strong.append(residue)
                if level == len(self.base):
                    self._append_base_point(self._moved_point(residue))
                for j in range(level + 1):
                    self._extend_level(j)
                return level
        return None

    # -- queries ------------------------------------------------------
    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Sift ``g`` from level ``start``; return residue and the level it stopped at."""
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            u = self.transversals[i].get(x)
            if u is None:
                return g, i
            g = mul(inverse(u), g)
        return g, len(self.base)

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, g: Permutation) -> bool:
        residue, _ = self.strip(g)
        return is_identity(residue)

    def elements(self, start: int = 0) -> Iterator[Permutation]:
        """Every element of the ``start``-th stabilizer, in backtrack order."""
        if start >= len(self.base):
            yield identity(self.degree)
            return
        reps = [self.transversals[i] for i in range(start, len(self.base))]
        keyed = [sorted(t.items()) for t in reps]

        def rec(level: int, acc: Permutation) -> Iterator[Permutation]:
            if level == len(keyed):
                yield acc
                return
            for _, u in keyed[level]:
                yield from rec(level + 1, mul(acc, u))

        yield from rec(0, identity(self.degree))

    def stabilizer_generators(self, level: int) -> list[Permutation]:
        return [s for s in self.strong if self._fixes_base(s, level)]


class PermGroup:
    """A group generated by permutations of a common degree.

    The stabilizer chain is built lazily with base points chosen smallest
    moved point first, so results are reproducible run to run.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None):
        gens = [check_permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    @cached_property
    def chain(self) -> StabilizerChain:
        return StabilizerChain(self.degree, self.generators)

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        return StabilizerChain(self.degree, self.generators, prefix)

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def __contains__(self, g: Sequence[int]) -> bool:
        return len(g) == self.degree and self.chain.contains(tuple(g))

    def contains_group(self, other: "PermGroup") -> bool:
        return all(g in self for g in other.generators)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    def identity(self) -> Permutation:
        return identity(self.degree)

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self, points: Iterable[int] | None = None) -> list[list[int]]:
        pts = range(self.degree) if points is None else points
        seen: set[int] = set()
        out = []
        for p in pts:
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return out

    def stabilizer(self, point: int) -> "PermGroup":
        ch = self.chain_with_base([point])
        return PermGroup(ch.stabilizer_generators(1), self.degree)

    def subgroup(self, generators: Iterable[Sequence[int]]) -> "PermGroup":
        return PermGroup(generators, self.degree)

    def is_transitive_on(self, points: Iterable[int]) -> bool:
        pts = sorted(set(points))
        return not pts or self.orbit(pts[0]) == pts


def group_order(group: PermGroup) -> int:
    return group.order()


def orbit(group: PermGroup, point: int) -> list[int]:
    return group.orbit(point)


def is_invariant(group: PermGroup, points: Iterable[int]) -> bool:
    pts = set(points)
    return all(g[x] in pts for g in group.generators for x in pts)


def is_regular(group: PermGroup, points: Iterable[int]) -> bool:
    """True iff ``group`` is transitive on ``points`` with ``|group| == |points|``.

    Raises ``ValueError`` when ``points`` is not closed under the generators.
    """
    pts = sorted(set(points))
    if not is_invariant(group, pts):
        raise ValueError("point set is not invariant under the group")
    if not pts:
        return False
    return group.orbit(pts[0]) == pts and group.order() == len(pts)


def naive_closure(generators: Sequence[Permutation], degree: int,
                  limit: int | None = None) -> set[Permutation]:
    """All products of ``generators``; the brute-force oracle for small groups."""
    e = identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                if limit is not None and len(seen) > limit:
                    raise OverflowError(f"closure exceeds {limit} elements")
                queue.append(y)
    return seen
