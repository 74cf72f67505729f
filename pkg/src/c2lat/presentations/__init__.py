"""Finite presentations, coset enumeration and the bundled group library."""

from .words import (
    FinPresentation,
    Word,
    format_word,
    free_reduce,
    invert_word,
    parse_presentation,
    parse_word,
)
from .todd_coxeter import CosetBoundError, CosetTable, todd_coxeter
from .library import (
    LIBRARY_IDS,
    MODEL_NAMES,
    edge_subgroups,
    evaluate_word,
    library_presentation,
    load_presentation,
    model_presentation,
    regular_representation,
    verify_library,
)

__all__ = [
    "FinPresentation", "Word", "format_word", "free_reduce", "invert_word",
    "parse_presentation", "parse_word",
    "CosetBoundError", "CosetTable", "todd_coxeter",
    "LIBRARY_IDS", "MODEL_NAMES", "edge_subgroups", "evaluate_word",
    "library_presentation", "load_presentation", "model_presentation",
    "regular_representation", "verify_library",
]
