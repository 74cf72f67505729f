import pytest
from hypothesis import given, settings, strategies as st

from c2lat.actions import SWAP_IDS
from c2lat.classifier import (
    INDECOMPOSABLE,
    classify_all,
    check_sigma,
    count_family,
    count_iso_classes,
    count_tp_classes,
    decomposability_report,
    enumerate_families,
    family_by_label,
    family_item_check,
    mirror_classes_direct,
    representatives,
    sigma,
)
from c2lat.classifier.counting import FamilySpace, _edge_preserving_automorphisms
from c2lat.presentations import LIBRARY_IDS
from c2lat.triangles import standard_embedding

ALL_FAMILIES = enumerate_families("446") + enumerate_families("664")


# -- local automorphism groups ----------------------------------------------------------

def test_sigma_examples():
    assert sigma(1).order == 1
    assert sigma(17).order == 36 and sigma(17).decomposable
    assert sigma(24).order == 2 and not sigma(24).decomposable
    assert sigma(24).labels() == [("id", "id"), ("rho", "rho")]
    assert sigma(12).decomposable


def test_sigma_tables():
    failed = [i for i in LIBRARY_IDS if not check_sigma(i)["pass"]]
    assert failed == []
    assert decomposability_report() == INDECOMPOSABLE == {24, 28, 31, 33}


@pytest.mark.parametrize("i", [2, 17, 24, 28, 29, 33])
def test_sigma_is_restriction_image(i):
    """Second route: restrict every edge-subgroup-preserving automorphism of L_i."""
    S = sigma(i)
    ka = standard_embedding(i, "a")
    kb = standard_embedding(i, "b")
    inv_a = {y: x for x, y in enumerate(ka)}
    inv_b = {y: x for x, y in enumerate(kb)}
    pairs = set()
    for f, swapped in _edge_preserving_automorphisms(i):
        if swapped:
            continue
        alpha = S.model_a.aut_index([inv_a[f[y]] for y in ka])
        beta = S.model_b.aut_index([inv_b[f[y]] for y in kb])
        pairs.add((alpha, beta))
    assert pairs == set(S.elements)


def test_sigma_rejects_bad_index():
    with pytest.raises(ValueError):
        sigma(0)


# -- families ---------------------------------------------------------------------------

def test_family_lists():
    fams = enumerate_families("446")
    assert {f.label for f in fams if f.item == 1} == {(1, 1, 12), (1, 1, 13), (1, 1, 14)}
    assert sum(1 for f in enumerate_families("664") if f.item == 9) == 96
    assert [f.label for f in fams] == sorted(f.label for f in fams)
    with pytest.raises(ValueError):
        enumerate_families("444")


@pytest.mark.parametrize("links,count,header", [("446", 133, 163), ("664", 230, 232)])
def test_family_counts_and_headers(links, count, header):
    rep = family_item_check(links)
    assert rep["pass"]
    assert rep["families"] == rep["item sum"] == count
    assert rep["published header"] == header and not rep["header matches"]


def test_mirrored_orientation_labels():
    f = family_by_label(1, (1, 3, 18))
    assert f.triple == (3, 1, 18) and f.mirrored_label
    assert f.name() == "T1(1,3,18)"


# -- counting ----------------------------------------------------------------------------

@pytest.mark.parametrize("ftype,label,tp", [(1, (1, 1, 12), 2), (2, (1, 1, 24), 4),
                                            (2, (2, 4, 27), 12)])
def test_tp_counts(ftype, label, tp):
    assert count_tp_classes(family_by_label(ftype, label)).tp_count == tp


@pytest.mark.parametrize("ftype,label,iso", [(1, (1, 1, 12), 2), (1, (6, 6, 12), 5),
                                             (2, (6, 6, 29), 12), (1, (2, 2, 16), 12)])
def test_iso_counts(ftype, label, iso):
    assert count_iso_classes(family_by_label(ftype, label)) == iso


def test_mirror_item_eleven_two_routes():
    """The mirror formula and direct isomorphisms agree on 16 classes per family."""
    for r in (2, 4, 10, 11):
        f = family_by_label(2, (r, r, 29))
        c = count_family(f)
        assert c.tp_count == 24
        assert c.iso_count == mirror_classes_direct(f) == 16


def test_mirror_formula_matches_direct_route_everywhere():
    for f in ALL_FAMILIES:
        if f.mirror_eligible:
            assert count_family(f).iso_count == mirror_classes_direct(f), f.name()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALL_FAMILIES))
def test_double_coset_sanity(f):
    c = count_family(f)
    space = FamilySpace(f)
    assert sum(c.coset_sizes) == space.size
    assert all(c.checks.values())
    assert c.iso_count <= c.tp_count
    if f.r != f.s or f.t not in SWAP_IDS:
        assert c.iso_count == c.tp_count
    if all(S.decomposable for S in space.sigmas):
        assert c.factored_count == c.tp_count
    # the identity tuple has index 0, so it represents its own class
    assert c.representatives[0] == ("id",) * 6
    assert len(set(c.representatives)) == c.tp_count


def test_representatives_are_buildings():
    specs = representatives(family_by_label(1, (1, 1, 12)))
    assert len(specs) == 2
    assert [s["gammas"] for s in specs] == [["id"] * 6, ["id"] * 5 + ["rho"]]
    assert len(representatives(family_by_label(2, (1, 1, 24)))) == 4


def test_classify_link_pattern_totals():
    rep = classify_all("446", verify_buildings=False)
    assert rep["totals"]["tp_total"] == 1078
    assert rep["lemma_totals"]["dec_446"]["pass"]
    assert rep["pass"]
    with pytest.raises(ValueError):
        classify_all("xyz")
