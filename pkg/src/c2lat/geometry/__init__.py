"""Incidence geometries, the quadrangle Q, coset graphs and graph automorphisms."""

from .incidence import (
    BipartiteGraph,
    GeometryError,
    IncidenceGeometry,
    build_Kmm,
    cycle_graph,
    diameter,
    girth,
    graph_from_edges,
    graph_polygon_order,
    incidence_graph,
    is_generalized_polygon,
)
from .quadrangle import (
    affine_group,
    build_Q,
    build_quadrangle,
    flag_group,
    refined_automorphism_group,
    special_matrices,
    verify_automorphism_group,
    verify_quadrangle_basics,
    verify_special_matrices,
    vertex_to_flag_perm,
)
from .cosets import CosetGraph, coset_graph
from .automorphisms import graph_automorphisms, graph_isomorphism

__all__ = [
    "BipartiteGraph", "GeometryError", "IncidenceGeometry", "build_Kmm", "cycle_graph",
    "diameter", "girth", "graph_from_edges", "graph_polygon_order", "incidence_graph",
    "is_generalized_polygon", "affine_group", "build_Q", "build_quadrangle", "flag_group",
    "refined_automorphism_group", "verify_automorphism_group",
    "special_matrices", "verify_quadrangle_basics", "verify_special_matrices",
    "vertex_to_flag_perm", "CosetGraph", "coset_graph", "graph_automorphisms",
    "graph_isomorphism",
]
