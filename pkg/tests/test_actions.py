import pytest

from c2lat.actions import (
    SWAP_IDS,
    actions_isomorphic,
    admits_edge_swap,
    classify_edge_regular,
    library_action,
    library_ids,
    target_of,
)
from c2lat.edgemodels import edge_model, edge_models
from c2lat.presentations import LIBRARY_IDS


def test_targets():
    assert library_ids("Q") == tuple(range(1, 12))
    assert library_ids("K44") == tuple(range(12, 22))
    assert library_ids("K66") == tuple(range(22, 36))
    assert target_of(7) == "Q" and target_of(20) == "K44" and target_of(30) == "K66"


@pytest.mark.parametrize("i", [1, 6, 11, 12, 17, 24, 29, 35])
def test_library_action_verifies(i):
    X = library_action(i)
    rep = X.verify()
    assert rep["ok"]
    assert set(X.Ea) & set(X.Eb) == {X.cayley.identity}


def test_edge_swap_list():
    swap = {i for i in LIBRARY_IDS if admits_edge_swap(library_action(i)) is not None}
    assert swap == set(SWAP_IDS)


def test_action_isomorphism_is_reflexive_and_separates():
    X, Y = library_action(12), library_action(13)
    assert actions_isomorphic(X, X) is not None
    assert actions_isomorphic(X, Y, type_preserving=False) is None


def test_k44_exhaustive():
    rep = classify_edge_regular("K44")
    assert rep["ambient_conjugacy_classes"] == 16
    assert rep["action_classes"] == 10
    assert [c["library_id"] for c in rep["classes"]] == list(range(12, 22))


# -- edge models --------------------------------------------------------------------

@pytest.mark.parametrize("name,order,naut", [("C4", 4, 2), ("C2xC2", 4, 6), ("C6", 6, 2),
                                             ("S3", 6, 6)])
def test_edge_model_automorphisms(name, order, naut):
    E = edge_model(name)
    assert E.order == order and E.naut == naut
    assert E.labels[0] == "id"
    assert len(set(E.labels)) == naut
    C = E.cayley
    for f in E.automorphisms:
        assert sorted(f) == list(range(order))
        for x in range(order):
            for y in range(order):
                assert f[C.mul(x, y)] == C.mul(f[x], f[y])
    # the multiplication table of Aut(E) is a group table
    for i in range(naut):
        assert E.compose(i, E.inverse(i)) == 0
        assert sorted(E.mult_table[i]) == list(range(naut))


def test_edge_model_labels():
    assert edge_model("C4").labels == ("id", "rho")
    assert set(edge_model("S3").labels) == {"id", "Ad(e1)", "Ad(e2)", "Ad(e1e2)", "Ad(e2e1)",
                                            "Ad(e2^2)"}
    with pytest.raises(ValueError, match="expected one of"):
        edge_model("C6").label_index("Ad(e1)")
    assert set(edge_models()) == {"C4", "C2xC2", "C6", "S3"}
