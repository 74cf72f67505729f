"""Compatible families ``(r, s, t)`` and the published per-item groupings.

A family fixes the three vertex groups and the edge subgroups that the
six embeddings land on.  Families that differ by exchanging the two
quadrangle vertices while swapping the edge groups of ``L_t`` describe
isomorphic triangles, so only one of ``(r, s, t)`` and ``(s, r, t)`` is kept
when ``L_t`` admits that swap.

Some published items name the family by the mirrored triple ``(1, s, t)``
whose vertex 1 and 2 roles are exchanged relative to the standard side
pattern; these are computed in the standard orientation ``(s, 1, t)`` and
reported under the published name.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..actions import SWAP_IDS
from ..presentations.library import K44_IDS, K66_IDS, Q_IDS
from ..triangles import TriangleError, family_edge_models

LINKS = {"446": 1, "664": 2}

R1 = (1,)
R69 = (6, 9)
R3578 = (3, 5, 7, 8)
R241011 = (2, 4, 10, 11)


def _le(rs, ss, ts):
    return [(r, s, t) for r in rs for s in ss for t in ts if r <= s]


def _lt(rs, ss, ts):
    return [(r, s, t) for r in rs for s in ss for t in ts if s < r]


def _all(rs, ss, ts):
    return [(r, s, t) for r in rs for s in ss for t in ts]


# (item, published labels, labels mirrored relative to the standard orientation)
FAMILY_ITEMS = {
    "446": (
        (1, _all(R1, R1, (12, 13, 14)), False),
        (2, _le(R69, R69, (12, 13, 14)), False),
        (3, [(9, 6, 14)], False),
        (4, _le(R3578, R3578, (15, 16, 17)), False),
        (5, _lt(R3578, R3578, (15,)), False),
        (6, _le(R241011, R241011, (15, 16, 17)), False),
        (7, _lt(R241011, R241011, (15,)), False),
        (8, _all(R1, R3578, (18, 19, 20, 21)), True),
        (9, _all(R241011, R69, (18, 19, 20, 21)), False),
    ),
    "664": (
        (1, _all(R1, R1, (22, 23, 24, 25)), False),
        (2, _le(R3578, R3578, (22, 23, 24, 25)), False),
        (3, _lt(R3578, R3578, (23, 24)), False),
        (4, _le(R69, R69, (26, 27, 28, 29)), False),
        (5, [(9, 6, 27), (9, 6, 28)], False),
        (6, _le(R241011, R241011, (26, 27, 28, 29)), False),
        (7, _lt(R241011, R241011, (27, 28)), False),
        (8, _all(R1, R69, (30, 31, 32, 33, 34, 35)), True),
        (9, _all(R3578, R241011, (30, 31, 32, 33, 34, 35)), True),
    ),
}

# published headers, which disagree with the item sums
FAMILY_HEADERS = {"446": 163, "664": 232}

# (lemma, item, published labels, type-preserving classes per family)
COUNT_ITEMS = (
    ("dec_446", 1, _all(R1, R1, (12, 13, 14)), 2),
    ("dec_446", 2, _le(R69, R69, (12, 13, 14)) + [(9, 6, 14)], 6),
    ("dec_446", 3, _le(R3578, R3578, (15, 16)) + _lt(R3578, R3578, (15,)), 9),
    ("dec_446", 4, _le(R3578, R3578, (17,)), 1),
    ("dec_446", 5, _le(R241011, R241011, (15, 16)) + _lt(R241011, R241011, (15,)), 18),
    ("dec_446", 6, _le(R241011, R241011, (17,)), 2),
    ("dec_446", 7, _all(R1, R3578, (18, 19, 21)), 3),
    ("dec_446", 8, _all(R1, R3578, (20,)), 1),
    ("dec_446", 9, _all(R241011, R69, (18, 19, 21)), 9),
    ("dec_446", 10, _all(R241011, R69, (20,)), 3),
    ("dec_664", 1, _all(R1, R1, (22, 23, 25)), 2),
    ("dec_664", 2, _le(R3578, R3578, (22, 23, 25)) + _lt(R3578, R3578, (23,)), 6),
    ("dec_664", 3, _le(R69, R69, (26,)), 2),
    ("dec_664", 4, _all(R69, R69, (27,)), 6),
    ("dec_664", 5, _le(R69, R69, (29,)), 18),
    ("dec_664", 6, _le(R241011, R241011, (26,)), 6),
    ("dec_664", 7, _all(R241011, R241011, (27,)), 12),
    ("dec_664", 8, _le(R241011, R241011, (29,)), 24),
    ("dec_664", 9, _all(R1, R69, (30, 34)), 6),
    ("dec_664", 10, _all(R1, R69, (32, 35)), 2),
    ("dec_664", 11, _all(R3578, R241011, (30, 34)), 12),
    ("dec_664", 12, _all(R3578, R241011, (32, 35)), 6),
    ("non_dec", 1, [(1, 1, 24)], 4),
    ("non_dec", 2, _all(R3578, R3578, (24,)), 6),
    ("non_dec", 3, _all(R69, R69, (28,)), 12),
    ("non_dec", 4, _all(R241011, R241011, (28,)), 12),
    ("non_dec", 5, _all(R1, R69, (31,)), 12),
    ("non_dec", 6, _all(R1, R69, (33,)), 4),
    ("non_dec", 7, _all(R3578, R241011, (31,)), 12),
    ("non_dec", 8, _all(R3578, R241011, (33,)), 6),
)

# (item, family type, published labels, isomorphism classes per family)
MIRROR_ITEMS = (
    (1, 1, _all(R1, R1, (12, 13)), 2),
    (2, 1, [(r, r, t) for r in R69 for t in (12, 13)], 5),
    (3, 1, [(r, r, 16) for r in R3578], 6),
    (4, 1, [(r, r, 16) for r in R241011], 12),
    (5, 1, [(r, r, 17) for r in R241011], 2),
    (6, 2, _all(R1, R1, (22, 25)), 2),
    (7, 2, [(r, r, t) for r in R3578 for t in (22, 25)], 5),
    (8, 2, [(r, r, 26) for r in R69], 2),
    (9, 2, [(r, r, 29) for r in R69], 12),
    (10, 2, [(r, r, 26) for r in R241011], 5),
    (11, 2, [(r, r, 29) for r in R241011], 15),
)

COUNT_TOTALS = {"dec_446": 1078, "dec_664": 1406, "non_dec": 660}
TP_TOTAL = 3144
ISO_TOTAL = 3044


@dataclass(frozen=True)
class FamilyRecord:
    family_type: int
    r: int
    s: int
    t: int
    label: tuple[int, int, int]
    item: int
    models: tuple[str, str, str]

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    @property
    def links(self) -> str:
        return "446" if self.family_type == 1 else "664"

    @property
    def mirrored_label(self) -> bool:
        return self.label != self.triple

    @property
    def swap_eligible(self) -> bool:
        return self.t in SWAP_IDS

    @property
    def mirror_eligible(self) -> bool:
        return self.r == self.s and self.t in SWAP_IDS

    def name(self) -> str:
        r, s, t = self.label
        return f"T{self.family_type}({r},{s},{t})"


def compatible_triples(family_type: int) -> list[tuple[int, int, int]]:
    """Every ``(r, s, t)`` whose edge types match under the standard side pattern."""
    ts = K44_IDS if family_type == 1 else K66_IDS
    out = []
    for r, s, t in product(Q_IDS, Q_IDS, ts):
        try:
            family_edge_models(family_type, r, s, t)
        except TriangleError:
            continue
        out.append((r, s, t))
    return out


def reduced_triples(family_type: int) -> list[tuple[int, int, int]]:
    """Compatible triples up to ``(r, s, t) ~ (s, r, t)`` for ``t`` admitting the edge swap."""
    keep = []
    for r, s, t in compatible_triples(family_type):
        if t in SWAP_IDS and s < r:
            continue
        keep.append((r, s, t))
    return keep


def _published_label(triple: tuple[int, int, int], links: str) -> tuple[tuple[int, int, int], int]:
    for item, labels, mirrored in FAMILY_ITEMS[links]:
        for lab in labels:
            std = (lab[1], lab[0], lab[2]) if mirrored else lab
            if std == triple:
                return lab, item
    raise KeyError(triple)


def enumerate_families(links: str) -> list[FamilyRecord]:
    """All families for the link pattern ``"446"`` or ``"664"``, ordered by published label.

    Raises ``ValueError`` for an unknown link pattern.  A computed family
    missing from the published items raises ``KeyError``.
    """
    if links not in LINKS:
        raise ValueError(f"links must be '446' or '664', got {links!r}")
    ftype = LINKS[links]
    out = []
    for triple in reduced_triples(ftype):
        label, item = _published_label(triple, links)
        out.append(FamilyRecord(ftype, *triple, label, item,
                                family_edge_models(ftype, *triple)))
    out.sort(key=lambda f: f.label)
    return out


def family_item_check(links: str) -> dict:
    """Recomputed family counts per published item and against the header."""
    fams = enumerate_families(links)
    computed = {(f.label) for f in fams}
    items = []
    for item, labels, _ in FAMILY_ITEMS[links]:
        got = sum(1 for f in fams if f.item == item)
        items.append({"item": item, "published": len(labels), "computed": got,
                      "pass": got == len(labels) and set(labels) <= computed})
    listed = {lab for _, labels, _ in FAMILY_ITEMS[links] for lab in labels}
    return {
        "links": links,
        "families": len(fams),
        "item sum": sum(len(labels) for _, labels, _ in FAMILY_ITEMS[links]),
        "published header": FAMILY_HEADERS[links],
        "header matches": len(fams) == FAMILY_HEADERS[links],
        "items": items,
        "pass": computed == listed and all(x["pass"] for x in items),
    }


def family_by_label(family_type: int, label: tuple[int, int, int]) -> FamilyRecord:
    links = "446" if family_type == 1 else "664"
    for f in enumerate_families(links):
        if f.label == tuple(label):
            return f
    raise KeyError(f"no family T{family_type}{tuple(label)}")
