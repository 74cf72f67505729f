"""Permutations on ``{0, ..., n-1}`` stored as plain tuples of images.

Products follow function composition: ``mul(g, h)`` applies ``h`` first, so
``mul(g, h)[x] == g[h[x]]`` and the induced action on points is a left action.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Sequence

Permutation = tuple[int, ...]


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def is_permutation(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(len(images)))


def check_permutation(images: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in images)
    if not is_permutation(p):
        raise ValueError(f"not a permutation: {images!r}")
    return p


def mul(g: Permutation, h: Permutation) -> Permutation:
    return tuple([g[x] for x in h])


def mul_many(perms: Iterable[Permutation], degree: int) -> Permutation:
    out = identity(degree)
    for p in perms:
        out = mul(out, p)
    return out


def inverse(g: Permutation) -> Permutation:
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def conjugate(g: Permutation, h: Permutation) -> Permutation:
    """Return ``h g h^-1``."""
    return mul(mul(h, g), inverse(h))


def power(g: Permutation, k: int) -> Permutation:
    if k < 0:
        g, k = inverse(g), -k
    out = identity(len(g))
    base = g
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def is_identity(g: Permutation) -> bool:
    return all(i == x for i, x in enumerate(g))


def cycles(g: Permutation) -> list[tuple[int, ...]]:
    seen = [False] * len(g)
    out = []
    for start in range(len(g)):
        if seen[start] or g[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = g[start]
        while x != start:
            seen[x] = True
            cyc.append(x)
            x = g[x]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Permutation) -> tuple[int, ...]:
    """Sorted cycle lengths, fixed points included."""
    seen = [False] * len(g)
    lengths = []
    for start in range(len(g)):
        if seen[start]:
            continue
        n = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = g[x]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths))


def order(g: Permutation) -> int:
    return lcm(*cycle_type(g)) if g else 1


def support(g: Permutation) -> list[int]:
    return [i for i, x in enumerate(g) if i != x]


def format_cycles(g: Permutation, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    cs = cycles(g)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + shift) for x in c) + ")" for c in cs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse cycle notation such as ``"(0,1,2)(3,4)"``; ``"()"`` is the identity."""
    shift = 1 if one_based else 0
    images = list(range(degree))
    stripped = text.replace(" ", "")
    if _CYCLE_RE.sub("", stripped):
        raise ValueError(f"malformed cycle notation: {text!r}")
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        pts = [int(x) - shift for x in body.split(",")]
        if len(set(pts)) != len(pts) or any(not 0 <= x < degree for x in pts):
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if images[a] != a:
                raise ValueError(f"point {a + shift} appears in two cycles")
            images[a] = b
    return check_permutation(images)
