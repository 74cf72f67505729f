import itertools
from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from c2lat.geometry import (
    BipartiteGraph,
    GeometryError,
    build_Kmm,
    build_Q,
    coset_graph,
    cycle_graph,
    diameter,
    girth,
    graph_automorphisms,
    graph_from_edges,
    graph_isomorphism,
    incidence_graph,
    is_generalized_polygon,
    verify_automorphism_group,
    verify_special_matrices,
)
from c2lat.geometry import gf4
from c2lat.permcore import PermGroup


# -- naive oracles --------------------------------------------------------------

def naive_distances(g: BipartiteGraph) -> np.ndarray:
    n = g.nvertices
    inf = n + 1
    d = np.full((n, n), inf, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in g.edges:
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def naive_girth(g: BipartiteGraph) -> int | None:
    """Shortest cycle through each edge: remove it and find the shortest path between its ends."""
    best = None
    adj = [set(x) for x in g.adjacency]
    for u, v in g.edges:
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if {x, y} == {u, v} or y in dist:
                    continue
                dist[y] = dist[x] + 1
                queue.append(y)
        if v in dist and (best is None or dist[v] + 1 < best):
            best = dist[v] + 1
    return best


bipartite_graphs = st.integers(1, 40).flatmap(
    lambda n0: st.integers(1, 40).flatmap(
        lambda n1: st.sets(st.tuples(st.integers(0, n0 - 1), st.integers(0, n1 - 1)),
                           max_size=4 * (n0 + n1)).map(
            lambda es: graph_from_edges(n0, n1, [(p, n0 + l) for p, l in es]))))


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs)
def test_diameter_matches_oracle(g):
    d = naive_distances(g)
    if (d > g.nvertices).any():
        with pytest.raises(GeometryError):
            diameter(g)
    else:
        assert diameter(g) == int(d.max())


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs)
def test_girth_matches_oracle(g):
    expected = naive_girth(g)
    if expected is None:
        with pytest.raises(GeometryError):
            girth(g)
    else:
        assert girth(g) == expected


def test_quadrangle_graph_matches_oracle():
    g = incidence_graph(build_Q())
    assert g.nvertices == 160
    assert diameter(g) == int(naive_distances(g).max()) == 4
    assert girth(g) == naive_girth(g) == 8


@pytest.mark.parametrize("k", [2, 3, 5, 8, 100])
def test_cycles(k):
    g = cycle_graph(k)
    assert girth(g) == 2 * k
    assert diameter(g) == k
    assert g.nvertices <= 200


# -- GF(4) ----------------------------------------------------------------------

def test_gf4_field_axioms():
    E = gf4.ELEMENTS
    for a, b, c in itertools.product(E, repeat=3):
        assert gf4.add(a, gf4.add(b, c)) == gf4.add(gf4.add(a, b), c)
        assert gf4.mul(a, gf4.mul(b, c)) == gf4.mul(gf4.mul(a, b), c)
        assert gf4.mul(a, gf4.add(b, c)) == gf4.add(gf4.mul(a, b), gf4.mul(a, c))
    for a, b in itertools.product(E, repeat=2):
        assert gf4.add(a, b) == gf4.add(b, a) == a ^ b
        assert gf4.mul(a, b) == gf4.mul(b, a)
    for a in E:
        assert gf4.add(a, gf4.ZERO) == a and gf4.mul(a, gf4.ONE) == a
        if a != gf4.ZERO:
            assert gf4.mul(a, gf4.inv(a)) == gf4.ONE
    a = gf4.ALPHA
    assert gf4.add(gf4.add(gf4.mul(a, a), a), gf4.ONE) == gf4.ZERO


# -- generalized polygons ---------------------------------------------------------

def test_quadrangle_counts_and_order():
    Q = build_Q()
    assert (Q.npoints, Q.nlines, len(Q.flags)) == (64, 96, 384)
    assert is_generalized_polygon(Q, 4) == (3, 5)


@pytest.mark.parametrize("m,order", [(4, (3, 3)), (6, (5, 5))])
def test_complete_bipartite_digons(m, order):
    assert is_generalized_polygon(build_Kmm(m), 2) == order


def test_non_polygon_rejected():
    g = build_Kmm(4)
    with pytest.raises(GeometryError):
        is_generalized_polygon(g, 4)


def test_special_matrices():
    checks = verify_special_matrices()
    failed = {k: v for k, v in checks.items() if not v["pass"]}
    assert not failed
    assert checks["Psi(A)"]["computed"] == "(1,5,2,3,4,6)"
    assert checks["Psi(C)"]["computed"] == "(1,3,5)(2,4,6)"


def test_automorphism_group_two_ways():
    rep = verify_automorphism_group()
    assert rep["affine order"] == rep["refinement order"] == 138240
    assert rep["affine inside refinement"] and rep["refinement inside affine"]


# -- graph automorphisms against brute force ----------------------------------------

def brute_automorphisms(g: BipartiteGraph) -> int:
    es = g.edge_set
    count = 0
    for pp in itertools.permutations(range(g.n0)):
        for pl in itertools.permutations(range(g.n1)):
            perm = list(pp) + [g.n0 + x for x in pl]
            if all(tuple(sorted((perm[u], perm[v]))) in es for u, v in g.edges):
                count += 1
    return count


small_graphs = st.integers(1, 4).flatmap(
    lambda n0: st.integers(1, 4).flatmap(
        lambda n1: st.sets(st.tuples(st.integers(0, n0 - 1), st.integers(0, n1 - 1))).map(
            lambda es: graph_from_edges(n0, n1, [(p, n0 + l) for p, l in es]))))


@settings(max_examples=60, deadline=None)
@given(small_graphs)
def test_graph_automorphisms_match_brute_force(g):
    assert graph_automorphisms(g, fix_colors=True).order() == brute_automorphisms(g)


def test_graph_isomorphism_relabelled():
    g = incidence_graph(build_Kmm(4))
    perm = list(range(8))
    perm[0], perm[3] = perm[3], perm[0]
    h = graph_from_edges(4, 4, [(perm[u], perm[v]) for u, v in g.edges])
    assert graph_isomorphism(g, h) is not None
    assert graph_isomorphism(cycle_graph(4), g) is None


def test_coset_graph_of_regular_action():
    # C2 x C2 acting on itself, with the two factors as edge groups: a 4-cycle
    G = PermGroup([(1, 0, 3, 2), (2, 3, 0, 1)])
    E = PermGroup([(1, 0, 3, 2)], 4)
    F = PermGroup([(2, 3, 0, 1)], 4)
    cg = coset_graph(G, E, F)
    assert cg.graph.nvertices == 4 and len(cg.graph.edges) == 4
    assert girth(cg.graph) == 4
    with pytest.raises(GeometryError):
        coset_graph(G, E, E)
