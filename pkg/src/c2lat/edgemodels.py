"""The four model edge groups and their automorphism groups with readable labels.

Automorphisms are stored as maps on element indices of the model's Cayley
table.  Labels follow the usual conventions: ``rho`` inverts a cyclic group,
``Ad(g)`` is conjugation ``x -> g x g^-1`` on Sym(3), and automorphisms of
C2xC2 are written as cycles on its three involutions.  The identity is
``id`` and always comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .permcore import CayleyGroup, extend_homomorphism
from .presentations import FinPresentation, model_presentation, regular_representation
from .presentations.library import MODEL_NAMES

Aut = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class EdgeModel:
    name: str
    presentation: FinPresentation
    cayley: CayleyGroup
    gens: tuple[int, ...]
    element_names: tuple[str, ...]
    automorphisms: tuple[Aut, ...]
    labels: tuple[str, ...]

    @property
    def order(self) -> int:
        return self.cayley.order

    @property
    def naut(self) -> int:
        return len(self.automorphisms)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: k for k, lab in enumerate(self.labels)}

    @cached_property
    def _aut_index(self) -> dict[Aut, int]:
        return {a: k for k, a in enumerate(self.automorphisms)}

    def label_index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError(f"{label!r} is not an automorphism label of {self.name}; "
                             f"expected one of {list(self.labels)}") from None

    def aut_index(self, mapping: Sequence[int]) -> int:
        return self._aut_index[tuple(mapping)]

    def compose(self, i: int, j: int) -> int:
        """Index of ``aut_i o aut_j``."""
        f, g = self.automorphisms[i], self.automorphisms[j]
        return self._aut_index[tuple(f[x] for x in g)]

    def inverse(self, i: int) -> int:
        f = self.automorphisms[i]
        inv = [0] * len(f)
        for x, y in enumerate(f):
            inv[y] = x
        return self._aut_index[tuple(inv)]

    @cached_property
    def mult_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.naut
        return tuple(tuple(self.compose(i, j) for j in range(n)) for i in range(n))

    def subgroup(self, labels: Sequence[str]) -> frozenset[int]:
        """Indices of the automorphisms generated by the labelled ones."""
        have = {0}
        frontier = [0]
        gens = [self.label_index(lab) for lab in labels]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mult_table[g][x]
                    if y not in have:
                        have.add(y)
                        new.append(y)
            frontier = new
        return frozenset(have)


def _element_names(C: CayleyGroup, gens: Sequence[int], names: Sequence[str]) -> list[str]:
    """Shortest positive words, generators tried in order; powers written ``x^k``."""
    words: dict[int, list[int]] = {C.identity: []}
    frontier = [C.identity]
    while frontier:
        new = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = C.mul(x, g)
                if y not in words:
                    words[y] = words[x] + [k]
                    new.append(y)
        frontier = new
    out = []
    for x in range(C.order):
        w = words[x]
        if not w:
            out.append("1")
            continue
        parts, i = [], 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            parts.append(names[w[i]] + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        out.append("".join(parts))
    return out


def _label(name: str, C: CayleyGroup, f: Aut, names: Sequence[str]) -> str:
    if all(f[x] == x for x in range(C.order)):
        return "id"
    if name in ("C4", "C6"):
        return "rho"
    if name == "S3":
        g = next(g for g in range(C.order)
                 if all(f[x] == C.conj(x, g) for x in range(C.order)))
        return f"Ad({names[g]})"
    invs = [x for x in range(C.order) if x != C.identity]
    seen: set[int] = set()
    cycles = []
    for x in invs:
        if x in seen or f[x] == x:
            continue
        cyc = [x]
        seen.add(x)
        y = f[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = f[y]
        cycles.append("(" + ",".join(names[c] for c in cyc) + ")")
    return "".join(cycles)


@lru_cache(maxsize=None)
def edge_model(name: str) -> EdgeModel:
    P = model_presentation(name)
    G = regular_representation(P)
    C = CayleyGroup(G)
    gens = tuple(C.index(g) for g in G.generators)
    names = _element_names(C, gens, P.generators)
    auts = []
    pools = [[y for y in range(C.order) if C.element_orders[y] == C.element_orders[g]] for g in gens]

    def rec(k: int, imgs: list[int]):
        if k == len(gens):
            f = extend_homomorphism(C, gens, C, imgs)
            if f is not None and len(set(f.values())) == C.order:
                auts.append(tuple(f[x] for x in range(C.order)))
            return
        for y in pools[k]:
            rec(k + 1, imgs + [y])

    rec(0, [])
    labelled = sorted((_label(name, C, f, names), f) for f in auts)
    labelled.sort(key=lambda lf: lf[0] != "id")
    return EdgeModel(name, P, C, gens, tuple(names),
                     tuple(f for _, f in labelled), tuple(lab for lab, _ in labelled))


def edge_models() -> dict[str, EdgeModel]:
    return {name: edge_model(name) for name in MODEL_NAMES}
