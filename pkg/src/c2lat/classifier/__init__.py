"""Local automorphism groups, families, class counting and the classification report."""

from .sigma import (
    INDECOMPOSABLE,
    SIGMA_TABLE,
    SigmaGroup,
    check_sigma,
    decomposability_report,
    sigma,
)
from .families import (
    COUNT_ITEMS,
    COUNT_TOTALS,
    FAMILY_HEADERS,
    FAMILY_ITEMS,
    ISO_TOTAL,
    MIRROR_ITEMS,
    TP_TOTAL,
    FamilyRecord,
    compatible_triples,
    enumerate_families,
    family_by_label,
    family_item_check,
)
from .counting import (
    ClassCount,
    CountError,
    FamilySpace,
    count_family,
    count_iso_classes,
    count_tp_classes,
    mirror_classes_direct,
    orbit_labels,
)
from .report import classify_all, report_csv, report_json, representatives

__all__ = [
    "INDECOMPOSABLE", "SIGMA_TABLE", "SigmaGroup", "check_sigma", "decomposability_report",
    "sigma", "COUNT_ITEMS", "COUNT_TOTALS", "FAMILY_HEADERS", "FAMILY_ITEMS", "ISO_TOTAL",
    "MIRROR_ITEMS", "TP_TOTAL", "FamilyRecord", "compatible_triples", "enumerate_families",
    "family_by_label", "family_item_check", "ClassCount", "CountError", "FamilySpace",
    "count_family", "count_iso_classes", "count_tp_classes", "mirror_classes_direct",
    "orbit_labels", "classify_all", "report_csv", "report_json", "representatives",
]
