"""Local automorphism groups: automorphisms of ``L_i`` stabilizing both edge subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..actions import library_action
from ..edgemodels import EdgeModel, edge_model
from ..permcore import extend_homomorphism
from ..presentations import LIBRARY_IDS
from ..triangles import side_model, standard_embedding

Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class SigmaGroup:
    """``Sigma^i``, a subgroup of ``Aut(E_A) x Aut(E_B)`` as pairs of automorphism indices."""

    id: int
    model_a: EdgeModel
    model_b: EdgeModel
    elements: frozenset[Pair]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def proj_a(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.elements)

    @property
    def proj_b(self) -> frozenset[int]:
        return frozenset(b for _, b in self.elements)

    @property
    def decomposable(self) -> bool:
        return len(self.proj_a) * len(self.proj_b) == self.order

    def labels(self) -> list[tuple[str, str]]:
        return sorted((self.model_a.labels[a], self.model_b.labels[b]) for a, b in self.elements)

    def side(self, side: str) -> tuple[EdgeModel, int]:
        """Model and tuple position of one side."""
        return (self.model_a, 0) if side == "a" else (self.model_b, 1)


@lru_cache(maxsize=None)
def sigma(i: int) -> SigmaGroup:
    """Pairs ``(alpha, beta)`` for which ``a_k -> kappa_A(alpha(e_k))`` and
    ``b_k -> kappa_B(beta(e_k))`` extend to an automorphism of ``L_i``.

    Such an automorphism maps each edge subgroup onto itself, and every
    automorphism doing so arises this way because the edge subgroups generate
    ``L_i``.  Each witness is checked to restrict to ``alpha`` and ``beta``.
    """
    if i not in LIBRARY_IDS:
        raise ValueError(f"library ids run from 1 to 35, got {i}")
    X = library_action(i)
    C = X.cayley
    A = edge_model(side_model(i, "a"))
    B = edge_model(side_model(i, "b"))
    ka = standard_embedding(i, "a")
    kb = standard_embedding(i, "b")
    gens = list(X.gens_a) + list(X.gens_b)
    found = set()
    for alpha, beta in product(range(A.naut), range(B.naut)):
        fa, fb = A.automorphisms[alpha], B.automorphisms[beta]
        imgs = [ka[fa[e]] for e in A.gens] + [kb[fb[e]] for e in B.gens]
        f = extend_homomorphism(C, gens, C, imgs)
        if f is None or len(f) != C.order or len(set(f.values())) != C.order:
            continue
        # the restriction to each edge subgroup is the chosen automorphism
        if any(f[ka[x]] != ka[fa[x]] for x in range(A.order)):
            raise RuntimeError(f"L{i}: restriction to the a-side differs from alpha")
        if any(f[kb[x]] != kb[fb[x]] for x in range(B.order)):
            raise RuntimeError(f"L{i}: restriction to the b-side differs from beta")
        found.add((alpha, beta))
    return SigmaGroup(i, A, B, frozenset(found))


def _pairs(gens: list[tuple[str, str]], A: EdgeModel, B: EdgeModel) -> frozenset[Pair]:
    idx = [(A.label_index(a), B.label_index(b)) for a, b in gens]
    have = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        new = []
        for x, y in frontier:
            for g, h in idx:
                z = (A.mult_table[g][x], B.mult_table[h][y])
                if z not in have:
                    have.add(z)
                    new.append(z)
        frontier = new
    return frozenset(have)


def _full(model: str, side: str) -> list[tuple[str, str]]:
    labels = edge_model(model).labels[1:]
    return [(lab, "id") if side == "a" else ("id", lab) for lab in labels]


# published local automorphism groups, written with model generator names:
# (ids, model A, model B, generating pairs, order)
SIGMA_TABLE = (
    ((1,), "C4", "C6", [], 1),
    ((2, 4, 10, 11), "C2xC2", "S3", [("id", "Ad(e1)")], 2),
    ((3, 5, 7, 8), "C2xC2", "C6", _full("C6", "b"), 2),
    ((6, 9), "C4", "S3", [], 1),
    ((12, 13, 14), "C4", "C4", _full("C4", "a") + _full("C4", "b"), 4),
    ((15, 16), "C2xC2", "C2xC2", [("(e2,e1e2)", "id"), ("id", "(e2,e1e2)")], 4),
    ((17,), "C2xC2", "C2xC2", _full("C2xC2", "a") + _full("C2xC2", "b"), 36),
    ((18, 19, 21), "C4", "C2xC2", _full("C4", "a") + [("id", "(e2,e1e2)")], 4),
    ((20,), "C4", "C2xC2", _full("C4", "a") + _full("C2xC2", "b"), 12),
    ((22, 23, 25), "C6", "C6", _full("C6", "a") + _full("C6", "b"), 4),
    ((24,), "C6", "C6", [("rho", "rho")], 2),
    ((26,), "S3", "S3", _full("S3", "a") + _full("S3", "b"), 36),
    ((27,), "S3", "S3", [("Ad(e1)", "id")] + _full("S3", "b"), 12),
    ((28,), "S3", "S3", [("Ad(e1)", "Ad(e1)"), ("Ad(e2)", "Ad(e2)")], 6),
    ((29,), "S3", "S3", [("Ad(e1)", "id"), ("id", "Ad(e1)")], 4),
    ((30, 34), "C6", "S3", _full("C6", "a") + [("id", "Ad(e1)")], 4),
    ((31,), "C6", "S3", [("rho", "Ad(e1)")], 2),
    ((32, 35), "C6", "S3", _full("C6", "a") + _full("S3", "b"), 12),
    ((33,), "C6", "S3", [("rho", "Ad(e1)"), ("id", "Ad(e2)")], 6),
)

INDECOMPOSABLE = frozenset({24, 28, 31, 33})


def sigma_expectation(i: int) -> tuple[str, str, list[tuple[str, str]], int]:
    for ids, a, b, gens, order in SIGMA_TABLE:
        if i in ids:
            return a, b, gens, order
    raise ValueError(f"no table entry for L{i}")


def check_sigma(i: int) -> dict:
    """Compare ``sigma(i)`` with its table entry."""
    S = sigma(i)
    a, b, gens, order = sigma_expectation(i)
    models_ok = (S.model_a.name, S.model_b.name) == (a, b)
    expected = _pairs(gens, S.model_a, S.model_b) if models_ok else frozenset()
    return {
        "id": i,
        "models": (S.model_a.name, S.model_b.name),
        "expected models": (a, b),
        "order": S.order,
        "expected order": order,
        "elements": S.labels(),
        "decomposable": S.decomposable,
        "pass": models_ok and S.elements == expected and S.order == order,
    }


def decomposability_report() -> frozenset[int]:
    """Indices whose local automorphism group is not the product of its projections."""
    return frozenset(i for i in LIBRARY_IDS if not sigma(i).decomposable)
