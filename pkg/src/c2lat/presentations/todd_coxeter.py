"""HLT coset enumeration with a lookahead pass and immediate coincidence handling.

Column ``2*i`` of the table holds generator ``i`` and column ``2*i + 1`` its
inverse.  Cosets are numbered in order of definition; after enumeration the
live cosets are renumbered in that same order, so coset 0 is the subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import FinPresentation, Word

DEFAULT_MAX_COSETS = 2 ** 16


class CosetBoundError(RuntimeError):
    """Raised when enumeration needs more live cosets than allowed."""


@dataclass(frozen=True)
class CosetTable:
    ngens: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.rows)

    @property
    def complete(self) -> bool:
        return all(x is not None for row in self.rows for x in row)

    def act(self, coset: int, word: Sequence[int]) -> int:
        """Right action of ``word`` on ``coset`` (letters applied left to right)."""
        for s in word:
            coset = self.rows[coset][2 * (s - 1) if s > 0 else 2 * (-s - 1) + 1]
        return coset

    def column(self, col: int) -> tuple[int, ...]:
        return tuple(row[col] for row in self.rows)

    def check(self, relators: Sequence[Word]) -> bool:
        """Every column is a permutation and every relator fixes every coset."""
        n = self.index
        for col in range(2 * self.ngens):
            images = self.column(col)
            if sorted(images) != list(range(n)):
                return False
        for g in range(self.ngens):
            fwd, back = self.column(2 * g), self.column(2 * g + 1)
            if any(back[fwd[c]] != c for c in range(n)):
                return False
        return all(self.act(c, r) == c for r in relators for c in range(n))


class _Enumerator:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.inv = [c ^ 1 for c in range(self.ncols)]
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_cosets = max_cosets
        self.lookahead_hook = None

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.max_cosets:
            if self.lookahead_hook is not None:
                self.lookahead_hook()
            if not self.alive(c) or self.table[c][x] is not None:
                return -1
            if self.live >= self.max_cosets:
                raise CosetBoundError(f"more than {self.max_cosets} cosets needed")
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.live += 1
        self.table[c][x] = n
        self.table[n][self.inv[x]] = c
        return n

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                if self.table[f][self.inv[x]] == e:
                    self.table[f][self.inv[x]] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][self.inv[x]] is not None:
                    self._merge(e1, self.table[f1][self.inv[x]], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][self.inv[x]] = e1

    def scan(self, c: int, word: Sequence[int], fill: bool) -> None:
        """Scan ``word`` at ``c``; define new cosets only when ``fill`` is set."""
        t = self.table
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and t[b][self.inv[word[j]]] is not None:
                b = t[b][self.inv[word[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][self.inv[word[i]]] = f
                return
            if not fill:
                return
            if self.define(f, word[i]) < 0:
                # a lookahead pass ran in between; start the scan afresh
                if not self.alive(c):
                    return
                f, i, b, j = c, 0, c, len(word) - 1


def _columns(word: Word) -> list[int]:
    return [2 * (s - 1) if s > 0 else 2 * (-s - 1) + 1 for s in word]


def todd_coxeter(presentation: FinPresentation, subgroup: Sequence[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the presented group.

    Raises :class:`CosetBoundError` if more than ``max_cosets`` live cosets are
    required even after a lookahead pass.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    en = _Enumerator(presentation.ngens, max_cosets)
    rels = [_columns(r) for r in presentation.relators if r]
    subs = [_columns(w) for w in subgroup if w]

    def lookahead() -> None:
        for c in range(len(en.table)):
            for r in rels:
                if not en.alive(c):
                    break
                en.scan(c, r, fill=False)

    en.lookahead_hook = lookahead
    for w in subs:
        en.scan(0, w, fill=True)
    c = 0
    while c < len(en.table):
        for r in rels:
            if not en.alive(c):
                break
            en.scan(c, r, fill=True)
        if en.alive(c):
            for x in range(en.ncols):
                if en.table[c][x] is None and en.alive(c):
                    en.define(c, x)
        c += 1

    live = [c for c in range(len(en.table)) if en.alive(c)]
    number = {c: i for i, c in enumerate(live)}
    rows = tuple(tuple(number[en.rep(x)] if x is not None else None for x in en.table[c])
                 for c in live)
    table = CosetTable(presentation.ngens, rows)
    if not table.complete:
        raise RuntimeError("coset enumeration finished with undefined entries")
    return table
