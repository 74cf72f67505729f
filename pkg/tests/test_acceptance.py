"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line (collected in the terminal
summary) naming the criterion, the measured values and the runtime.  Caches
are cleared before each criterion so runtimes are cold.
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES

TESTS = Path(__file__).parent


def clear_caches():
    for name, mod in list(sys.modules.items()):
        if not name.startswith("c2lat"):
            continue
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


class Criterion:
    def __init__(self, name: str, budget: float):
        self.name = name
        self.budget = budget

    def __enter__(self):
        clear_caches()
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False

    def verdict(self, ok: bool, detail: str) -> None:
        in_time = self.elapsed <= self.budget
        status = "PASS" if ok and in_time else "FAIL"
        line = (f"{status} {self.name}: {detail} "
                f"[{self.elapsed:.1f} s, budget {self.budget:g} s]")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, detail
        assert in_time, f"{self.elapsed:.1f} s exceeds the {self.budget:g} s budget"


def test_quadrangle_reconstruction():
    from c2lat.geometry import build_Q, is_generalized_polygon

    with Criterion("quadrangle reconstruction", 1) as c:
        Q = build_Q()
        counts = (Q.npoints, Q.nlines, len(Q.flags))
        order = is_generalized_polygon(Q, 4)
    c.verdict(counts == (64, 96, 384) and order == (3, 5),
              f"points/lines/flags {counts}, order {order}")


def test_matrix_observations():
    from c2lat.geometry import verify_special_matrices

    with Criterion("matrix observations", 5) as c:
        checks = verify_special_matrices()
    failed = [k for k, v in checks.items() if not v["pass"]]
    c.verdict(not failed and checks["Psi(A)"]["computed"] == "(1,5,2,3,4,6)"
              and checks["Psi(C)"]["computed"] == "(1,3,5)(2,4,6)"
              and checks["|ker Psi| = |<D>|"]["computed"] == 3
              and checks["V:<A> isomorphic to L7"]["computed"]
              and checks["V:<BC> isomorphic to L11"]["computed"],
              f"{len(checks) - len(failed)}/{len(checks)} checks, failed {failed}")


def test_automorphism_group_two_ways():
    from c2lat.geometry import verify_automorphism_group

    with Criterion("automorphism group of Q", 60) as c:
        rep = verify_automorphism_group()
    c.verdict(rep["pass"], f"affine {rep['affine order']}, refinement {rep['refinement order']}, "
              f"mutual membership {rep['affine inside refinement'] and rep['refinement inside affine']}")


def test_library_verification():
    from c2lat.presentations import verify_library

    with Criterion("library verification", 120) as c:
        rep = verify_library()
    descs = all(d["pass"] for d in rep["descriptions"].values())
    c.verdict(rep["pass"] and descs and rep["isomorphism partition"]["pass"]
              and rep["Q groups pairwise non-isomorphic"],
              f"orders {sum(o['pass'] for o in rep['orders'].values())}/35, partition "
              f"{rep['isomorphism partition']['pass']}, descriptions {descs}, "
              f"mismatches {rep['mismatches']}")


@pytest.mark.parametrize("target,expected", [("K44", 10), ("K66", 14)])
def test_exhaustive_edge_regular(target, expected):
    from c2lat.actions import classify_edge_regular, library_ids

    with Criterion(f"exhaustive enumeration on {target}", 600) as c:
        rep = classify_edge_regular(target)
    ids = [x["library_id"] for x in rep["classes"]]
    c.verdict(rep["action_classes"] == expected and ids == list(library_ids(target)),
              f"{rep['action_classes']} classes matched to L{ids[0]}..L{ids[-1]}")


@pytest.mark.slow
def test_exhaustive_chamber_regular_on_q():
    from c2lat.actions import classify_edge_regular

    with Criterion("chamber-regular enumeration on Q", 3600) as c:
        rep = classify_edge_regular("Q", lambda m: print(m, flush=True))
    ids = [x["library_id"] for x in rep["classes"]]
    c.verdict(rep["action_classes"] == 11 and ids == list(range(1, 12)),
              f"{rep['action_classes']} classes matched to L1..L11")


def test_sigma_tables():
    from c2lat.classifier import check_sigma, decomposability_report

    with Criterion("local automorphism groups", 60) as c:
        checks = [check_sigma(i) for i in range(1, 36)]
        indec = decomposability_report()
    bad = [x["id"] for x in checks if not x["pass"]]
    c.verdict(not bad and indec == {24, 28, 31, 33},
              f"{35 - len(bad)}/35 table entries, indecomposable {sorted(indec)}")


def test_edge_swap_list():
    from c2lat.actions import admits_edge_swap, library_action

    with Criterion("edge-swap list", 30) as c:
        swap = sorted(i for i in range(1, 36) if admits_edge_swap(library_action(i)) is not None)
    c.verdict(swap == [12, 13, 16, 17, 22, 25, 26, 29], f"swap admitted for {swap}")


@pytest.fixture(scope="module")
def classification():
    from c2lat.classifier import classify_all

    clear_caches()
    t0 = time.perf_counter()
    rep = classify_all("all", verify_buildings=False)
    return rep, time.perf_counter() - t0


def _items(rep, lemma):
    return [x for x in rep["items"] if x["lemma"] == lemma]


@pytest.mark.parametrize("lemma,total", [("dec_446", 1078), ("dec_664", 1406),
                                         ("non_dec", 660)])
def test_counting_lemma_items(classification, lemma, total):
    rep, elapsed = classification
    c = Criterion(f"classification counts, {lemma} items", 300)
    c.elapsed = elapsed
    items = _items(rep, lemma)
    bad = [x["item"] for x in items if not x["pass"]]
    got = sum(x["subtotal"] for x in items)
    c.verdict(not bad and got == total,
              f"{len(items) - len(bad)}/{len(items)} items, subtotals "
              f"{[x['subtotal'] for x in items]} summing to {got}")


def test_type_preserving_total(classification):
    rep, elapsed = classification
    c = Criterion("classification counts, type-preserving total", 300)
    c.elapsed = elapsed
    c.verdict(rep["totals"]["tp_total"] == 3144, f"tp = {rep['totals']['tp_total']}")


def test_family_headers_reported(classification):
    rep, elapsed = classification
    c = Criterion("classification counts, family totals reported with header flag", 300)
    c.elapsed = elapsed
    fc = rep["family_counts"]
    c.verdict(fc["446"]["families"] == fc["446"]["item sum"] == 133
              and fc["664"]["families"] == fc["664"]["item sum"] == 230
              and not fc["446"]["header matches"] and not fc["664"]["header matches"],
              f"446: {fc['446']['families']} (header {fc['446']['published header']}), "
              f"664: {fc['664']['families']} (header {fc['664']['published header']})")


def test_mirror_lemma_items_one_to_ten(classification):
    rep, elapsed = classification
    c = Criterion("classification counts, mirror lemma items 1-10", 300)
    c.elapsed = elapsed
    items = [x for x in _items(rep, "mirror") if x["item"] != 11]
    bad = [x["item"] for x in items if not x["pass"]]
    c.verdict(not bad, f"{len(items) - len(bad)}/10 items, per family "
              f"{[x['computed'] for x in items]}")


MIRROR_ELEVEN = ("direct enumeration gives 16 classes per family: the mirror exchanges "
                 "(x1, x2, c) with (x2, x1, c^-1), fixing 8 of 24 classes; see "
                 "test_mirror_item_eleven_two_routes")


@pytest.mark.xfail(strict=True, reason=MIRROR_ELEVEN)
def test_mirror_lemma_item_eleven(classification):
    rep, elapsed = classification
    c = Criterion("classification counts, mirror lemma item 11", 300)
    c.elapsed = elapsed
    item = next(x for x in _items(rep, "mirror") if x["item"] == 11)
    c.verdict(item["pass"], f"computed {item['computed']} per family, published 15")


@pytest.mark.xfail(strict=True, reason=MIRROR_ELEVEN)
def test_isomorphism_total(classification):
    rep, elapsed = classification
    c = Criterion("classification counts, isomorphism total", 300)
    c.elapsed = elapsed
    t = rep["totals"]
    c.verdict(t["iso_total"] == 3044,
              f"iso = {t['iso_total']} (published 3044), mirror reduction "
              f"{t['mirror_reduction']} (published 100)")


def test_building_criterion_all_representatives():
    from c2lat.classifier import count_family, enumerate_families
    from c2lat.triangles import check_building_criterion, make_triangle

    with Criterion("building criterion on every representative", 600) as c:
        total = 0
        failures = []
        links_ok = True
        for f in enumerate_families("446") + enumerate_families("664"):
            for gammas in count_family(f).representatives:
                T = make_triangle(*f.triple, f.family_type, list(gammas), check=False)
                v = check_building_criterion(T)
                total += 1
                m = [x for x, _ in v.links]
                orders = [st for _, st in v.links]
                ok_links = m == [4, 4, 2] and orders[0] == orders[1] == (3, 5) and \
                    orders[2] == ((3, 3) if f.family_type == 1 else (5, 5))
                links_ok &= ok_links
                if not (v.is_building and v.angle_sum == 1 and ok_links):
                    failures.append((f.name(), gammas))
    c.verdict(total == 3144 and not failures and links_ok,
              f"{total - len(failures)}/{total} representatives pass")


def test_property_suites():
    """The property suites run on their own, without any published numbers."""
    selected = [
        "test_permcore.py::test_permutation_axioms",
        "test_permcore.py::test_schreier_sims_matches_closure",
        "test_presentations.py::test_coset_table_complete_for_quotients",
        "test_presentations.py::test_cyclic_and_dihedral_orders",
        "test_classifier.py::test_double_coset_sanity",
        "test_geometry.py::test_diameter_matches_oracle",
        "test_geometry.py::test_girth_matches_oracle",
        "test_geometry.py::test_quadrangle_graph_matches_oracle",
    ]
    with Criterion("property suites", 600) as c:
        proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider"]
                              + [str(TESTS / s) for s in selected],
                              capture_output=True, text=True, cwd=TESTS.parent)
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    c.verdict(proc.returncode == 0, summary)


@pytest.mark.slow
@pytest.mark.parametrize("which,expected", [("points", 58), ("lines", 6)])
def test_point_and_line_regular(which, expected):
    from c2lat.actions import count_point_line_regular

    with Criterion(f"{which}-regular classes on Q (long run)", 3600) as c:
        got = count_point_line_regular(which)
    c.verdict(got == expected, f"{got} classes")
