import pytest
from hypothesis import given, settings, strategies as st

from c2lat.permcore import identity, naive_closure
from c2lat.presentations import (
    LIBRARY_IDS,
    CosetBoundError,
    FinPresentation,
    evaluate_word,
    format_word,
    free_reduce,
    invert_word,
    library_presentation,
    model_presentation,
    parse_presentation,
    parse_word,
    regular_representation,
    todd_coxeter,
)
from c2lat.presentations.library import library_order

NAMES = ("a", "b")


def dihedral(n: int) -> FinPresentation:
    return parse_presentation(f"generators: a b\na^{n}\nb^2\n(a b)^2\n", f"D{n}")


words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12).map(tuple)


@given(words)
def test_word_round_trip(w):
    if w:
        assert parse_word(format_word(w, NAMES), NAMES) == w
    assert free_reduce(w + invert_word(w)) == ()
    assert invert_word(invert_word(w)) == w


def test_parse_word_powers_and_groups():
    assert parse_word("(a b^-1)^2 a^3", NAMES) == (1, -2, 1, -2, 1, 1, 1)
    assert parse_word("(a b)^-1", NAMES) == (-2, -1)
    for bad in ("a c", "(a b", "a b)", "a^"):
        with pytest.raises(ValueError):
            parse_word(bad, NAMES)


def test_presentation_format_errors():
    with pytest.raises(ValueError):
        parse_presentation("a^2\n")
    with pytest.raises(ValueError):
        parse_presentation("generators: a:a b\na^2\n")


def test_alias_readings():
    P = library_presentation(19)
    labels = [label for label, _ in P.readings()]
    assert labels == ["primary", "b=b2"]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12))
def test_cyclic_and_dihedral_orders(n):
    C = parse_presentation(f"generators: a\na^{n}\n")
    t = todd_coxeter(C)
    assert t.complete and t.index == n and t.check(C.relators)
    D = dihedral(n)
    t = todd_coxeter(D)
    assert t.complete and t.index == 2 * n and t.check(D.relators)
    # index of the rotation subgroup
    assert todd_coxeter(D, [(1,)]).index == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.lists(words, max_size=2))
def test_coset_table_complete_for_quotients(n, extra):
    """Adding relators to a finite group gives a complete, consistent table of smaller index."""
    D = dihedral(n)
    Q = D.with_relators(D.relators + tuple(extra))
    t = todd_coxeter(Q)
    assert t.complete
    assert t.check(Q.relators)
    assert (2 * n) % t.index == 0
    G = regular_representation(Q)
    assert G.order() == t.index
    assert len(naive_closure(list(G.generators), G.degree)) == t.index


def test_coset_bound():
    with pytest.raises(CosetBoundError):
        todd_coxeter(parse_presentation("generators: a b\na^2\nb^3\n"), max_cosets=50)


@pytest.mark.parametrize("name,order", [("C4", 4), ("C2xC2", 4), ("C6", 6), ("S3", 6)])
def test_models(name, order):
    assert regular_representation(model_presentation(name)).order() == order


@pytest.mark.parametrize("i", [1, 7, 11, 12, 19, 22, 35])
def test_library_relators_hold(i):
    P = library_presentation(i)
    G = regular_representation(P)
    assert G.order() == library_order(i)
    e = identity(G.degree)
    assert all(evaluate_word(r, G.generators) == e for r in P.relators)


def test_library_ids():
    assert LIBRARY_IDS == tuple(range(1, 36))
    with pytest.raises(ValueError):
        library_presentation(36)
