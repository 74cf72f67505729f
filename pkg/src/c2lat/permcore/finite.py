"""Small finite groups held as an explicit element list with a Cayley table.

Everything here is meant for groups of a few thousand elements at most: the
multiplication table has ``n * n`` entries.  Elements are addressed by their
index into ``elements``; index ``identity`` is the neutral element.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .group import PermGroup
from .perm import Permutation

MAX_TABLE_ORDER = 10_000

Word = Sequence[int]  # signed 1-based generator indices


class CayleyGroup:
    """A finite permutation group with its full multiplication table.

    ``table[i, j]`` is the index of ``elements[i] * elements[j]`` (``j`` applied
    first, matching :func:`c2lat.permcore.perm.mul`).
    """

    def __init__(self, group: PermGroup, limit: int = MAX_TABLE_ORDER):
        n = group.order()
        if n > limit:
            raise OverflowError(f"group of order {n} exceeds the table bound {limit}")
        self.group = group
        self.degree = group.degree
        chain = group.chain
        base = list(chain.base) or [0]
        self.elements: list[Permutation] = sorted(chain.elements())
        arr = np.array(self.elements, dtype=np.int64).reshape(n, self.degree)
        self._arr = arr
        self._base = np.array(base, dtype=np.int64)
        self._radix = np.int64(self.degree)
        if len(base) * max(self.degree, 2).bit_length() < 62:
            keys = self._encode(arr[:, self._base])
            self._order_keys = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._order_keys]
            self._lookup = None
        else:
            self._lookup = {tuple(row[self._base]): i for i, row in enumerate(arr)}
        at_base = arr[:, self._base]
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            table[i] = self._locate(arr[i][at_base])
        self.table = table
        self.order = n
        self.identity = self.index(tuple(range(self.degree)))
        self.inverse = np.argmax(table == self.identity, axis=1).astype(np.int32)
        self.element_orders = self._element_orders()

    # -- indexing -----------------------------------------------------
    def _encode(self, rows: np.ndarray) -> np.ndarray:
        key = np.zeros(rows.shape[0], dtype=np.int64)
        for c in range(rows.shape[1]):
            key = key * self._radix + rows[:, c]
        return key

    def _locate(self, rows: np.ndarray) -> np.ndarray:
        if self._lookup is not None:
            return np.array([self._lookup[tuple(r)] for r in rows], dtype=np.int32)
        keys = self._encode(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._order_keys[pos].astype(np.int32)

    def index(self, g: Sequence[int]) -> int:
        row = np.asarray(g, dtype=np.int64)[self._base].reshape(1, -1)
        i = int(self._locate(row)[0])
        if tuple(self.elements[i]) != tuple(g):
            raise KeyError("permutation is not an element of the group")
        return i

    def __len__(self) -> int:
        return self.order

    # -- arithmetic ---------------------------------------------------
    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = int(self.inverse[i]), -k
        out = self.identity
        while k:
            if k & 1:
                out = int(self.table[out, i])
            i = int(self.table[i, i])
            k >>= 1
        return out

    def conj(self, x: int, g: int) -> int:
        """Return ``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def evaluate(self, word: Word, images: Sequence[int]) -> int:
        """Value of ``word`` when generator ``k`` (1-based) is sent to ``images[k-1]``."""
        out = self.identity
        for s in word:
            x = images[s - 1] if s > 0 else int(self.inverse[images[-s - 1]])
            out = int(self.table[out, x])
        return out

    def _element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int32)
        cur = np.arange(n, dtype=np.int32)
        idx = np.arange(n)
        pending = cur != self.identity
        k = 1
        while pending.any():
            k += 1
            cur = self.table[cur, idx]
            done = pending & (cur == self.identity)
            orders[done] = k
            pending &= ~done
        return orders

    # -- subgroups ----------------------------------------------------
    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        gens = [int(g) for g in gens]
        member = np.zeros(self.order, dtype=bool)
        member[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int32)
        while frontier.size:
            new = np.unique(self.table[np.array(gens, dtype=np.int32)[:, None], frontier[None, :]]
                            .ravel()) if gens else np.array([], dtype=np.int32)
            new = new[~member[new]]
            member[new] = True
            frontier = new
        return np.flatnonzero(member).astype(np.int32)

    def generates(self, gens: Iterable[int]) -> bool:
        return len(self.closure(gens)) == self.order

    def normal_closure(self, gens: Iterable[int]) -> np.ndarray:
        ambient = [self.index(g) for g in self.group.generators]
        sub = self.closure(gens)
        while True:
            conj = np.unique(self.table[self.table[np.array(ambient)[:, None], sub[None, :]],
                                        self.inverse[np.array(ambient)][:, None]].ravel())
            member = np.zeros(self.order, dtype=bool)
            member[sub] = True
            extra = conj[~member[conj]]
            if not extra.size:
                return sub
            sub = self.closure(list(sub) + list(extra))

    def centre(self) -> np.ndarray:
        gens = np.array([self.index(g) for g in self.group.generators] or [self.identity])
        left = self.table[gens][:, :]          # g * x
        right = self.table[:, gens].T          # x * g
        return np.flatnonzero((left == right).all(axis=0)).astype(np.int32)

    def derived_subgroup(self) -> np.ndarray:
        gens = [self.index(g) for g in self.group.generators]
        comms = []
        for a in gens:
            for b in gens:
                ab = self.table[a, b]
                ba = self.table[b, a]
                comms.append(int(self.table[ab, self.inverse[ba]]))
        return self.normal_closure(comms)

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Conjugacy classes, each sorted, ordered by their least element."""
        gens = [self.index(g) for g in self.group.generators]
        label = np.full(self.order, -1, dtype=np.int64)
        classes = []
        for x in range(self.order):
            if label[x] >= 0:
                continue
            label[x] = len(classes)
            cls = [x]
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for g in gens:
                    z = self.conj(y, g)
                    if label[z] < 0:
                        label[z] = len(classes)
                        cls.append(z)
                        queue.append(z)
            classes.append(np.array(sorted(cls), dtype=np.int32))
        return classes

    def invariants(self) -> tuple:
        """Order multiset, centre order and abelianization order."""
        counts = np.bincount(self.element_orders)
        profile = tuple((int(k), int(c)) for k, c in enumerate(counts) if c)
        return (self.order, profile, len(self.centre()),
                self.order // len(self.derived_subgroup()))


def extend_homomorphism(Cs: CayleyGroup, gens: Sequence[int], Cd: CayleyGroup,
                        images: Sequence[int]) -> dict[int, int] | None:
    """The homomorphism on ``<gens>`` sending ``gens[k]`` to ``images[k]``, if it exists.

    Walks the Cayley graph of ``<gens>`` and checks ``f(s x) = f(s) f(x)`` on
    every edge, which is exactly the homomorphism condition.
    """
    f = {Cs.identity: Cd.identity}
    queue = [Cs.identity]
    while queue:
        x = queue.pop()
        fx = f[x]
        for s, t in zip(gens, images):
            y = int(Cs.table[s, x])
            z = int(Cd.table[t, fx])
            old = f.get(y)
            if old is None:
                f[y] = z
                queue.append(y)
            elif old != z:
                return None
    return f


def subgroup_isomorphisms(Cs: CayleyGroup, gens: Sequence[int], members_s: Sequence[int],
                  Cd: CayleyGroup, members_d: Sequence[int]) -> list[list[int]]:
    """All isomorphisms between two small subgroups, as image lists of ``gens``."""
    if len(members_s) != len(members_d):
        return []
    out = []
    pools = [[y for y in members_d if Cd.element_orders[y] == Cs.element_orders[g]] for g in gens]

    def rec(k: int, imgs: list[int]):
        if k == len(gens):
            f = extend_homomorphism(Cs, gens, Cd, imgs)
            if f is not None and len(set(f.values())) == len(members_s):
                out.append(list(imgs))
            return
        for y in pools[k]:
            rec(k + 1, imgs + [y])

    rec(0, [])
    return out
