"""Verification of the bundled library against its documented isomorphism types."""

from __future__ import annotations

from itertools import combinations

from ..permcore import CayleyGroup, PermGroup, groups_isomorphic, isomorphic_groups
from .library import (
    K44_IDS,
    K66_IDS,
    LIBRARY_IDS,
    Q_IDS,
    library_order,
    library_presentation,
    regular_representation,
)
from .words import parse_presentation

# isomorphism classes among L12..L35, singletons included
ISOMORPHISM_PARTITION = (
    (12,), (13, 18, 19), (14,), (15, 16, 21), (17,), (20,),
    (22, 26, 27, 28, 30, 31), (23, 24, 32, 33, 34), (25,), (29, 35),
)


def _cyc(*cycles: tuple[int, ...], degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    for c in cycles:
        for k, x in enumerate(c):
            img[x] = c[(k + 1) % len(c)]
    return tuple(img)


def _perm_model(degree: int, *gens: list[tuple[int, ...]]) -> PermGroup:
    return PermGroup([_cyc(*g, degree=degree) for g in gens], degree)


def _text_model(text: str, name: str) -> PermGroup:
    return regular_representation(parse_presentation(text, name))


def description_models() -> dict[int, tuple[str, str, PermGroup]]:
    """A directly constructed model of each described isomorphism type, keyed by the least member."""
    return {
        12: ("C4 x C4", "(16,2)", _perm_model(8, [(0, 1, 2, 3)], [(4, 5, 6, 7)])),
        13: ("(C4 x C2) : C2", "(16,3)", _text_model(
            "generators: a b c\na^4\nb^2\nc^2\na b a^-1 b^-1\nb c b^-1 c^-1\nc a c^-1 b^-1 a^-1\n",
            "(C4xC2):C2")),
        14: ("C4 : C4", "(16,4)", _text_model(
            "generators: a b\na^4\nb^4\nb a b^-1 a\n", "C4:C4")),
        15: ("C2 x D8", "(16,11)", _perm_model(6, [(0, 1, 2, 3)], [(0, 2)], [(4, 5)])),
        17: ("C2 x C2 x C2 x C2", "(16,14)", _perm_model(8, [(0, 1)], [(2, 3)], [(4, 5)], [(6, 7)])),
        20: ("C4 x C2 x C2", "(16,10)", _perm_model(8, [(0, 1, 2, 3)], [(4, 5)], [(6, 7)])),
        22: ("Sym(3) x Sym(3)", "(36,10)",
             _perm_model(6, [(0, 1, 2)], [(0, 1)], [(3, 4, 5)], [(3, 4)])),
        23: ("C6 x Sym(3)", "(36,12)", _perm_model(9, [(0, 1, 2, 3, 4, 5)], [(6, 7, 8)], [(6, 7)])),
        25: ("C6 x C6", "(36,14)", _perm_model(12, [(0, 1, 2, 3, 4, 5)], [(6, 7, 8, 9, 10, 11)])),
        29: ("C2 x ((C3 x C3) : C2)", "(36,13)",
             _perm_model(8, [(0, 1, 2)], [(3, 4, 5)], [(1, 2), (4, 5)], [(6, 7)])),
    }


def _edge_data(group: PermGroup, sides: tuple[str, ...]) -> tuple[int, int, bool]:
    C = CayleyGroup(group)
    a = [C.index(g) for g, s in zip(group.generators, sides) if s == "a"]
    b = [C.index(g) for g, s in zip(group.generators, sides) if s == "b"]
    Ea, Eb = set(C.closure(a)), set(C.closure(b))
    return len(Ea), len(Eb), Ea & Eb == {C.identity}


def library_report() -> dict:
    """Orders, isomorphism partition, descriptions and ambiguous readings of the library."""
    report: dict = {"orders": {}, "mismatches": []}
    groups: dict[int, PermGroup] = {}
    for i in LIBRARY_IDS:
        G = regular_representation(library_presentation(i))
        groups[i] = G
        ok = G.order() == library_order(i)
        report["orders"][i] = {"order": G.order(), "expected": library_order(i), "pass": ok}
        if not ok:
            report["mismatches"].append(f"L{i}: order {G.order()} != {library_order(i)}")

    q_pairs = []
    for i, j in combinations(Q_IDS, 2):
        iso = isomorphic_groups(library_presentation(i), groups[j])
        q_pairs.append({"pair": (i, j), "isomorphic": iso is not None})
        if iso is not None:
            report["mismatches"].append(f"L{i} and L{j} are isomorphic")
    report["Q groups pairwise non-isomorphic"] = all(not p["isomorphic"] for p in q_pairs)

    classes: list[list[int]] = []
    for i in K44_IDS + K66_IDS:
        for cl in classes:
            if isomorphic_groups(library_presentation(i), groups[cl[0]]) is not None:
                cl.append(i)
                break
        else:
            classes.append([i])
    found = sorted(tuple(c) for c in classes)
    expected = sorted(ISOMORPHISM_PARTITION)
    report["isomorphism partition"] = {"computed": found, "expected": expected,
                                       "pass": found == expected}
    if found != expected:
        report["mismatches"].append("isomorphism partition of L12..L35 differs")

    descriptions = {}
    for rep, (desc, sgid, model) in description_models().items():
        members = next(c for c in ISOMORPHISM_PARTITION if rep in c)
        per = {}
        for i in members:
            ok = groups_isomorphic(groups[i], model) is not None
            per[i] = ok
            if not ok:
                report["mismatches"].append(f"L{i} is not {desc}")
        descriptions[desc] = {"small group id": sgid, "members": per, "pass": all(per.values())}
    report["descriptions"] = descriptions

    readings = {}
    for i in LIBRARY_IDS:
        P = library_presentation(i)
        if not P.alternates:
            continue
        per = []
        for label, R in P.readings():
            G = regular_representation(R)
            oa, ob, trivial = _edge_data(G, P.sides) if G.order() > 1 else (1, 1, True)
            per.append({"reading": label, "order": G.order(), "edge subgroup orders": (oa, ob),
                        "edge subgroups meet trivially": trivial,
                        "consistent": G.order() == library_order(i) and oa * ob == G.order()
                        and trivial})
        readings[f"L{i}"] = per
        if not per[0]["consistent"]:
            report["mismatches"].append(f"L{i}: primary reading is inconsistent")
    report["readings"] = readings
    report["pass"] = not report["mismatches"]
    return report
