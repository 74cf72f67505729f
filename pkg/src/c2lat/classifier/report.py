"""The full classification run: per-family counts, published item targets and totals."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from ..triangles import check_building_criterion, make_triangle
from .counting import CountError, count_family, mirror_classes_direct
from .families import (
    COUNT_ITEMS,
    COUNT_TOTALS,
    ISO_TOTAL,
    MIRROR_ITEMS,
    TP_TOTAL,
    FamilyRecord,
    enumerate_families,
    family_item_check,
)

LINK_CHOICES = ("446", "664", "all")


def representatives(family: FamilyRecord, verify: bool = True) -> list[dict]:
    """One triangle spec per type-preserving class, in the computed orientation.

    With ``verify`` each spec is built and must pass the building criterion;
    a failure raises :class:`CountError`.
    """
    c = count_family(family)
    out = []
    for gammas in c.representatives:
        T = make_triangle(*family.triple, family.family_type, list(gammas), check=False)
        spec = T.spec()
        if verify:
            v = check_building_criterion(T)
            if not v.is_building:
                raise CountError(f"{family.name()} {list(gammas)}: not a building triangle: "
                                 f"{v.as_dict()}")
        out.append(spec)
    return out


def _lemma_type(lemma: str) -> int:
    return 1 if lemma == "dec_446" else 2


def _published(family: FamilyRecord) -> tuple[int, int]:
    """Published type-preserving and full class counts for one family."""
    tp = None
    for lemma, _, labels, per in COUNT_ITEMS:
        if _lemma_type(lemma) == family.family_type and family.label in labels:
            tp = per
            break
    if tp is None:
        raise KeyError(f"{family.name()} is in no published counting item")
    iso = tp
    for _, ftype, labels, per in MIRROR_ITEMS:
        if ftype == family.family_type and family.label in labels:
            iso = per
    return tp, iso


def _family_row(family: FamilyRecord, verify_buildings: bool) -> dict:
    c = count_family(family)
    row = c.as_dict()
    row["label"] = family.name()
    row["published_tp"], row["published_iso"] = _published(family)
    row["mirror_eligible"] = family.mirror_eligible
    if family.mirror_eligible:
        row["iso_direct"] = mirror_classes_direct(family)
    if verify_buildings:
        representatives(family, verify=True)
        row["buildings_verified"] = len(c.representatives)
    return row


def _rows(families: list[FamilyRecord], workers: int, verify_buildings: bool,
          progress: Callable[[str], None] | None) -> list[dict]:
    if workers <= 1:
        rows = []
        for k, f in enumerate(families):
            rows.append(_family_row(f, verify_buildings))
            if progress and (k + 1) % 25 == 0:
                progress(f"{k + 1}/{len(families)} families counted")
        return rows
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_family_row, families, [verify_buildings] * len(families),
                             chunksize=8))


def _item_rows(rows: list[dict], ftypes: set[int]) -> list[dict]:
    by_label = {(r["family_type"], (r["r"], r["s"], r["t"])): r for r in rows}
    out = []
    for lemma, item, labels, per in COUNT_ITEMS:
        ftype = _lemma_type(lemma)
        if ftype not in ftypes:
            continue
        got = [by_label[(ftype, lab)]["tp_count"] for lab in labels]
        out.append({"lemma": lemma, "item": item, "families": len(labels),
                    "per_family": per, "computed": sorted(set(got)),
                    "subtotal": sum(got), "published_subtotal": per * len(labels),
                    "pass": all(g == per for g in got)})
    for item, ftype, labels, per in MIRROR_ITEMS:
        if ftype not in ftypes:
            continue
        got = [by_label[(ftype, lab)]["iso_count"] for lab in labels]
        out.append({"lemma": "mirror", "item": item, "families": len(labels),
                    "per_family": per, "computed": sorted(set(got)),
                    "subtotal": sum(got), "published_subtotal": per * len(labels),
                    "pass": all(g == per for g in got)})
    return out


def classify_all(links: str = "all", workers: int = 1, verify_buildings: bool = True,
                 progress: Callable[[str], None] | None = None) -> dict:
    """Count every family of the chosen link pattern and compare with the published numbers.

    The report lists every family, every published item with its computed
    subtotal, the family totals next to the published headers, and the
    totals.  ``mismatches`` names each published number that was not
    reproduced; counting failures raise :class:`CountError` instead.
    """
    if links not in LINK_CHOICES:
        raise ValueError(f"links must be one of {LINK_CHOICES}, got {links!r}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    patterns = ["446", "664"] if links == "all" else [links]
    families = [f for p in patterns for f in enumerate_families(p)]
    rows = _rows(families, workers, verify_buildings, progress)
    ftypes = {1 if p == "446" else 2 for p in patterns}
    items = _item_rows(rows, ftypes)

    mismatches = [f"{x['lemma']} item {x['item']}: computed {x['computed']} per family, "
                  f"published {x['per_family']}" for x in items if not x["pass"]]
    for r in rows:
        if r["mirror_eligible"] and r["iso_direct"] != r["iso_count"]:
            raise CountError(f"{r['label']}: mirror formula gives {r['iso_count']}, "
                             f"direct isomorphisms give {r['iso_direct']}")

    lemma_totals = {}
    for lemma, target in COUNT_TOTALS.items():
        if _lemma_type(lemma) not in ftypes:
            continue
        got = sum(x["subtotal"] for x in items if x["lemma"] == lemma)
        lemma_totals[lemma] = {"computed": got, "published": target, "pass": got == target}
        if got != target:
            mismatches.append(f"{lemma}: total {got}, published {target}")

    tp_total = sum(r["tp_count"] for r in rows)
    iso_total = sum(r["iso_count"] for r in rows)
    if links == "all":
        tp_target, iso_target = TP_TOTAL, ISO_TOTAL
    else:
        tp_target = sum(r["published_tp"] for r in rows)
        iso_target = sum(r["published_iso"] for r in rows)
    totals = {
        "tp_total": tp_total, "tp_published": tp_target,
        "iso_total": iso_total, "iso_published": iso_target,
        "mirror_reduction": tp_total - iso_total,
        "mirror_reduction_published": tp_target - iso_target,
    }
    if tp_total != tp_target:
        mismatches.append(f"type-preserving total {tp_total}, published {tp_target}")
    if iso_total != iso_target:
        mismatches.append(f"isomorphism total {iso_total}, published {iso_target}")

    family_checks = {p: family_item_check(p) for p in patterns}
    for p, fc in family_checks.items():
        if not fc["pass"]:
            mismatches.append(f"family items of {p} differ from the published lists")

    return {
        "links": links,
        "families": rows,
        "family_counts": family_checks,
        "items": items,
        "lemma_totals": lemma_totals,
        "totals": totals,
        "buildings_verified": sum(r.get("buildings_verified", 0) for r in rows)
        if verify_buildings else None,
        "mismatches": mismatches,
        "pass": not mismatches,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ("family_type", "r", "s", "t", "computed_as", "item", "edge_models",
              "tp_count", "iso_count", "published_tp", "published_iso", "representatives")


def report_csv(report: dict) -> str:
    """One row per family; list fields are joined with spaces and semicolons."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in report["families"]:
        row = []
        for k in CSV_FIELDS:
            v = r[k]
            if k == "representatives":
                v = ";".join(" ".join(rep) for rep in v)
            elif isinstance(v, list):
                v = " ".join(str(x) for x in v)
            row.append(v)
        w.writerow(row)
    return buf.getvalue()
