"""The field with four elements and vectors over F_2.

GF(4) elements are the integers 0..3 read as ``b0 + b1*alpha`` with
``alpha^2 + alpha + 1 = 0``; so 2 is ``alpha`` and 3 is ``alpha^2 = alpha + 1``.
Vectors of F_2^6 are 6-bit integers, bit ``i-1`` holding the coordinate of ``e_i``.
"""

from __future__ import annotations

ZERO, ONE, ALPHA, ALPHA2 = 0, 1, 2, 3
ELEMENTS = (ZERO, ONE, ALPHA, ALPHA2)


def _mul(a: int, b: int) -> int:
    # (a0 + a1 t)(b0 + b1 t) with t^2 = t + 1
    a0, a1 = a & 1, a >> 1
    b0, b1 = b & 1, b >> 1
    c0 = (a0 & b0) ^ (a1 & b1)
    c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
    return c0 | (c1 << 1)


ADD = tuple(tuple(a ^ b for b in ELEMENTS) for a in ELEMENTS)
MUL = tuple(tuple(_mul(a, b) for b in ELEMENTS) for a in ELEMENTS)


def add(a: int, b: int) -> int:
    return ADD[a][b]


def mul(a: int, b: int) -> int:
    return MUL[a][b]


def inv(a: int) -> int:
    if a == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return next(b for b in ELEMENTS if MUL[a][b] == ONE)


def bits(a: int) -> tuple[int, int]:
    """Coordinates of ``a`` on the F_2-basis (1, alpha)."""
    return a & 1, a >> 1


def vector(*coords: int) -> int:
    """Pack six F_2 coordinates into a vector index."""
    if len(coords) != 6:
        raise ValueError("six coordinates expected")
    return sum((c & 1) << i for i, c in enumerate(coords))


def basis(i: int) -> int:
    """The standard basis vector ``e_i`` for ``i`` in 1..6."""
    if not 1 <= i <= 6:
        raise ValueError("basis index must be 1..6")
    return 1 << (i - 1)


def span(vectors) -> frozenset[int]:
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return frozenset(out)
