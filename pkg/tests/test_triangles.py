import json
from fractions import Fraction

import pytest

from c2lat.permcore import identity
from c2lat.presentations import (
    evaluate_word,
    invert_word,
    library_presentation,
    regular_representation,
)
from c2lat.triangles import (
    EMBEDDING_KEYS,
    TriangleError,
    check_building_criterion,
    family_edge_models,
    fundamental_presentation,
    load_triangle,
    local_action,
    make_triangle,
    nondegeneracy_problems,
    triangle_from_spec,
)


def test_family_edge_models():
    assert family_edge_models(1, 1, 1, 12) == ("C4", "C4", "C6")
    with pytest.raises(TriangleError, match="does not match"):
        family_edge_models(1, 2, 1, 12)
    with pytest.raises(TriangleError):
        family_edge_models(3, 1, 1, 12)
    with pytest.raises(TriangleError):
        family_edge_models(1, 1, 1, 22)


def test_building_seed():
    T = make_triangle(1, 1, 12, 1)
    assert T.gamma_labels() == ("id",) * 6
    v = check_building_criterion(T)
    assert v.is_building and v.nondegenerate
    assert v.link_names() == ("Q(3,5)", "Q(3,5)", "K4,4")
    assert v.angles == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert v.angle_sum == 1
    assert local_action(T, 3).angle == (2, 4)


def test_embeddings_are_injective_homomorphisms():
    T = make_triangle(2, 2, 29, 2, ["Ad(e1)", "id", "id", "Ad(e2)", "(e1,e2,e1e2)", "(e1,e2)"])
    for key in EMBEDDING_KEYS:
        emb = T.embeddings[key]
        E = T.edge(emb.edge)
        V = T.vertex(emb.vertex).cayley
        assert len(set(emb.images)) == E.order
        for x in range(E.order):
            for y in range(E.order):
                assert emb.images[E.cayley.mul(x, y)] == V.mul(emb.images[x], emb.images[y])
    assert not nondegeneracy_problems(T)


def test_bad_label_and_length():
    with pytest.raises(TriangleError, match="gamma_32"):
        make_triangle(1, 1, 12, 1, ["id"] * 5 + ["Ad(e1)"])
    with pytest.raises(TriangleError, match="six"):
        make_triangle(1, 1, 12, 1, ["id"] * 5)


def test_spec_round_trip(tmp_path):
    T = make_triangle(6, 6, 29, 2, {(3, 1): "rho"})
    spec = T.spec()
    assert spec["gammas"][4] == "rho"
    p = tmp_path / "t.json"
    p.write_text(json.dumps(spec))
    assert load_triangle(str(p)).gamma_labels() == T.gamma_labels()
    assert triangle_from_spec(spec).ids == (6, 6, 29)
    with pytest.raises(TriangleError, match="lacks"):
        triangle_from_spec({"r": 1})
    p.write_text('{"r": 1,\n "s": }')
    with pytest.raises(TriangleError, match=":2:"):
        load_triangle(str(p))


def test_fundamental_presentation_structure():
    T = make_triangle(2, 2, 29, 2, ["Ad(e1)", "id", "id", "Ad(e2)", "(e1,e2,e1e2)", "(e1,e2)"])
    P = fundamental_presentation(T)
    vertex = [library_presentation(x) for x in T.ids]
    assert P.ngens == sum(V.ngens for V in vertex)
    assert P.generators[0].endswith("_1") and P.generators[-1].endswith("_3")
    n_vertex_rels = sum(len(V.relators) for V in vertex)
    assert len(P.relators) == n_vertex_rels + sum(len(T.edge(i).gens) for i in (1, 2, 3))
    # each identification relator is a word in V_j times the inverse of a word in V_k;
    # evaluated in the vertex groups both halves give the embedded elements
    offsets = [0, vertex[0].ngens, vertex[0].ngens + vertex[1].ngens]
    rels = iter(P.relators[n_vertex_rels:])
    for i in (1, 2, 3):
        j, k = (x for x in (1, 2, 3) if x != i)
        for g in T.edge(i).gens:
            rel = next(rels)
            left = tuple(x for x in rel if offsets[j - 1] < abs(x) <= offsets[j - 1]
                         + vertex[j - 1].ngens)
            right = invert_word(rel[len(left):])
            for vk, word, key in ((j, left, (i, j)), (k, right, (i, k))):
                off = offsets[vk - 1]
                local = tuple(x - off if x > 0 else x + off for x in word)
                G = regular_representation(vertex[vk - 1])
                C = T.vertex(vk).cayley
                assert C.index(evaluate_word(local, G.generators) if local
                               else identity(G.degree)) == T.embeddings[key].images[g]
