"""The bundled presentations and their permutation realizations."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..permcore import PermGroup, identity, inverse, mul
from .todd_coxeter import DEFAULT_MAX_COSETS, todd_coxeter
from .words import FinPresentation, Word, parse_presentation

LIBRARY_IDS = tuple(range(1, 36))
MODEL_NAMES = ("C4", "C2xC2", "C6", "S3")

Q_IDS = tuple(range(1, 12))
K44_IDS = tuple(range(12, 22))
K66_IDS = tuple(range(22, 36))


def library_order(i: int) -> int:
    if i in Q_IDS:
        return 384
    if i in K44_IDS:
        return 16
    if i in K66_IDS:
        return 36
    raise ValueError(f"no library group L{i}")


@lru_cache(maxsize=None)
def load_presentation(name: str) -> FinPresentation:
    """Load a bundled presentation by file name (``"L07"``, ``"S3"``, ...)."""
    path = resources.files("c2lat.data.presentations").joinpath(f"{name}.txt")
    if not path.is_file():
        raise KeyError(f"no bundled presentation named {name!r}")
    return parse_presentation(path.read_text(), name)


def library_presentation(i: int) -> FinPresentation:
    if i not in LIBRARY_IDS:
        raise ValueError(f"library ids run from 1 to 35, got {i}")
    return load_presentation(f"L{i:02d}")


def model_presentation(name: str) -> FinPresentation:
    if name not in MODEL_NAMES:
        raise ValueError(f"unknown model edge group {name!r}")
    return load_presentation(name)


def evaluate_word(word: Sequence[int], images: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Product of generator images along ``word``; generator ``k`` maps to ``images[k-1]``."""
    out = identity(len(images[0]))
    for s in word:
        g = tuple(images[abs(s) - 1])
        out = mul(out, g if s > 0 else inverse(g))
    return out


@lru_cache(maxsize=256)
def _regular(presentation: FinPresentation, max_cosets: int) -> PermGroup:
    table = todd_coxeter(presentation, (), max_cosets)
    if not table.check(presentation.relators):
        raise RuntimeError(f"{presentation.name}: coset table failed its consistency check")
    # the table gives a right action; the inverse columns turn it into a homomorphism
    gens = [table.column(2 * g + 1) for g in range(presentation.ngens)]
    return PermGroup(gens, table.index)


def regular_representation(presentation: FinPresentation,
                           max_cosets: int = DEFAULT_MAX_COSETS) -> PermGroup:
    """Regular permutation representation; generator ``i`` is the image of generator ``i``."""
    return _regular(presentation, max_cosets)


def edge_subgroups(presentation: FinPresentation, group: PermGroup) -> tuple[PermGroup, PermGroup]:
    """Subgroups generated by the a-side and by the b-side generator images."""
    if not presentation.sides:
        raise ValueError(f"{presentation.name} has no side tags")
    a = [group.generators[i] for i in presentation.side_indices("a")]
    b = [group.generators[i] for i in presentation.side_indices("b")]
    return PermGroup(a, group.degree), PermGroup(b, group.degree)


def verify_library() -> dict:
    """Realize every library group and compare against the documented facts.

    Returns a report dict; mismatches are recorded per entry instead of raising.
    """
    from .checks import library_report
    return library_report()
