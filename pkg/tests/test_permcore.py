import itertools

import pytest
from hypothesis import given, settings, strategies as st

from c2lat.permcore import (
    CayleyGroup,
    PermGroup,
    conjugate,
    cycle_type,
    enumerate_regular_subgroups,
    extend_homomorphism,
    format_cycles,
    groups_isomorphic,
    identity,
    inverse,
    is_regular,
    mul,
    naive_closure,
    order,
    parse_cycles,
    power,
)


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_permutation_axioms(triple):
    g, h, k = triple
    n = len(g)
    e = identity(n)
    assert mul(mul(g, h), k) == mul(g, mul(h, k))
    assert mul(g, e) == g == mul(e, g)
    assert mul(g, inverse(g)) == e == mul(inverse(g), g)
    # mul(g, h) applies h first
    assert all(mul(g, h)[x] == g[h[x]] for x in range(n))
    assert conjugate(g, h) == mul(mul(h, g), inverse(h))


@given(st.integers(1, 9).flatmap(perms))
def test_order_and_cycles(g):
    k = order(g)
    assert power(g, k) == identity(len(g))
    assert all(power(g, j) != identity(len(g)) for j in range(1, k))
    assert sum(cycle_type(g)) == len(g)
    assert parse_cycles(format_cycles(g), len(g)) == g


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_schreier_sims_matches_closure(gens):
    n = len(gens[0])
    G = PermGroup(gens, n)
    brute = naive_closure(gens, n)
    assert G.order() == len(brute)
    assert set(G.elements()) == brute
    for g in itertools.islice(itertools.permutations(range(n)), 200):
        assert (g in G) == (g in brute)


def test_symmetric_and_alternating_orders():
    assert PermGroup([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)]).order() == 120
    assert PermGroup([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)]).order() == 60


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        PermGroup([(1, 0), (0, 2, 1)])
    with pytest.raises(ValueError):
        PermGroup([(0, 0, 1)])


def test_cayley_table_is_a_group():
    G = PermGroup([(1, 2, 3, 0), (3, 2, 1, 0)])     # dihedral of order 8
    C = CayleyGroup(G)
    assert C.order == 8
    e = C.identity
    for x in range(8):
        assert C.mul(x, e) == x == C.mul(e, x)
        assert C.mul(x, int(C.inverse[x])) == e
    assert sorted(int(C.element_orders[x]) for x in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_extend_homomorphism():
    C4 = CayleyGroup(PermGroup([(1, 2, 3, 0)]))
    g = C4.index((1, 2, 3, 0))
    f = extend_homomorphism(C4, [g], C4, [C4.power(g, 3)])
    assert f is not None and len(set(f.values())) == 4
    f2 = extend_homomorphism(C4, [g], C4, [C4.power(g, 2)])
    assert f2 is not None and len(set(f2.values())) == 2
    C3 = CayleyGroup(PermGroup([(1, 2, 0)]))
    S3 = CayleyGroup(PermGroup([(1, 0, 2), (1, 2, 0)]))
    t = S3.index((1, 0, 2))
    assert extend_homomorphism(C3, [C3.index((1, 2, 0))], S3, [t]) is None


def test_groups_isomorphic():
    c4 = PermGroup([(1, 2, 3, 0)])
    v4 = PermGroup([(1, 0, 3, 2), (2, 3, 0, 1)])
    c4b = PermGroup([(0, 1, 2, 3, 5, 6, 7, 4)])
    assert groups_isomorphic(c4, v4) is None
    assert groups_isomorphic(c4, c4b) is not None
    s3a = PermGroup([(1, 0, 2), (1, 2, 0)])
    s3b = PermGroup([(1, 0, 2, 4, 3, 5), (1, 2, 0, 4, 5, 3)])
    assert groups_isomorphic(s3a, PermGroup([(1, 0, 3, 2, 5, 4), (2, 3, 4, 5, 0, 1)])) is None
    assert groups_isomorphic(s3a, s3b) is not None


def test_regular_subgroups_of_s4():
    S4 = PermGroup([(1, 0, 2, 3), (1, 2, 3, 0)])
    regs = enumerate_regular_subgroups(S4, range(4))
    # C4 and the normal Klein four-group
    assert sorted(R.order() for R in regs) == [4, 4]
    assert all(is_regular(R, range(4)) for R in regs)
    assert len({frozenset(R.elements()) for R in regs}) == 2


def test_regular_subgroups_oracle_small():
    """Against brute force: conjugacy classes of regular subgroups of D8 x C2 on 8 points."""
    gens = [(1, 2, 3, 0, 5, 6, 7, 4), (3, 2, 1, 0, 7, 6, 5, 4), (4, 5, 6, 7, 0, 1, 2, 3)]
    A = PermGroup(gens)
    elems = list(A.elements())
    classes = set()
    for k in (1, 2, 3):
        for sub in itertools.combinations(elems, k):
            S = naive_closure(list(sub), 8)
            if len(S) == 8 and is_regular(PermGroup(list(S), 8), range(8)):
                classes.add(frozenset(frozenset(conjugate(s, a) for s in S) for a in elems))
    assert len(enumerate_regular_subgroups(A, range(8))) == len(classes)
