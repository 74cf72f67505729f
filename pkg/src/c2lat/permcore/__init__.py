"""Permutation groups: arithmetic, stabilizer chains and backtracking searches."""

from .perm import (
    Permutation,
    check_permutation,
    conjugate,
    cycle_type,
    format_cycles,
    identity,
    inverse,
    is_identity,
    mul,
    order,
    parse_cycles,
    power,
)
from .group import PermGroup, StabilizerChain, group_order, is_regular, naive_closure, orbit
from .finite import CayleyGroup, extend_homomorphism, subgroup_isomorphisms
from .search import (
    GroupIso,
    enumerate_regular_subgroups,
    find_conjugator,
    groups_isomorphic,
    isomorphic_groups,
    search_generator_images,
)

__all__ = [
    "Permutation", "check_permutation", "conjugate", "cycle_type", "format_cycles",
    "identity", "inverse", "is_identity", "mul", "order", "parse_cycles", "power",
    "PermGroup", "StabilizerChain", "group_order", "is_regular", "naive_closure", "orbit",
    "CayleyGroup", "extend_homomorphism", "subgroup_isomorphisms", "GroupIso",
    "enumerate_regular_subgroups", "find_conjugator",
    "groups_isomorphic", "isomorphic_groups", "search_generator_images",
]
