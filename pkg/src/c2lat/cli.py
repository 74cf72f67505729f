"""Command-line entry point.

Exit status: 0 when every computed value matches its published counterpart,
2 when the computation finished but some published number was not
reproduced, 1 on an operational error (bad input, failed internal check).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .cache import ENV_VAR, Cache

EXIT_MATCH = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2

ENUMERATE_TARGETS = {"q": ("Q", 11), "k44": ("K44", 10), "k66": ("K66", 14)}
REGULAR_TARGETS = {"points": 58, "lines": 6}


@dataclass
class RunConfig:
    command: str
    out: str | None
    cache: Cache
    workers: int
    fmt: str


def _progress(msg: str) -> None:
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", file=sys.stderr, flush=True)


def _flatten(value, prefix: str = ""):
    if isinstance(value, dict):
        for k in sorted(value, key=str):
            yield from _flatten(value[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, (list, tuple)) and any(isinstance(x, (dict, list, tuple)) for x in value):
        for k, x in enumerate(value):
            yield from _flatten(x, f"{prefix}[{k}]")
    else:
        if isinstance(value, (list, tuple)):
            value = " ".join(str(x) for x in value)
        yield prefix, value


def _csv_pairs(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    for k, v in _flatten(report):
        w.writerow((k, v))
    return buf.getvalue()


def _emit(cfg: RunConfig, report: dict, csv_text: str | None = None) -> None:
    if cfg.fmt == "csv":
        text = csv_text if csv_text is not None else _csv_pairs(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"report written to {cfg.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _graph_text(target: str) -> str:
    from .actions import target_graph
    return target_graph(target).to_adjacency_text()


def _library_texts(ids) -> list[str]:
    from .presentations import library_presentation
    return [library_presentation(i).to_text() for i in ids]


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify_quadrangle(cfg: RunConfig, skip_aut: bool) -> int:
    from .geometry import verify_automorphism_group, verify_quadrangle_basics, verify_special_matrices

    basics = verify_quadrangle_basics()
    basics_ok = (basics["points"], basics["lines"], basics["flags"], tuple(basics["order"])) \
        == (64, 96, 384, (3, 5)) and basics["subspaces pairwise complementary"]
    matrices = verify_special_matrices()
    report = {"quadrangle": dict(basics, **{"pass": basics_ok}), "matrices": matrices}
    ok = basics_ok and all(c["pass"] for c in matrices.values())
    if not skip_aut:
        gens = cfg.cache.get("aut-q", [_graph_text("Q")])
        aut = verify_automorphism_group(gens)
        if gens is None and aut["pass"]:
            cfg.cache.put("aut-q", [_graph_text("Q")], aut["refinement generators"])
        aut = {k: v for k, v in aut.items() if k != "refinement generators"}
        report["automorphism group"] = aut
        ok = ok and aut["pass"]
    failed = [k for k, c in matrices.items() if not c["pass"]]
    for k in failed:
        print(f"FAIL {k}: expected {matrices[k]['expected']}, got {matrices[k]['computed']}",
              file=sys.stderr)
    report["pass"] = ok
    _emit(cfg, report)
    return EXIT_MATCH if ok else EXIT_MISMATCH


def cmd_verify_library(cfg: RunConfig) -> int:
    from .actions import SWAP_IDS, admits_edge_swap, library_action
    from .classifier import INDECOMPOSABLE, check_sigma, decomposability_report
    from .presentations import LIBRARY_IDS, verify_library

    lib = verify_library()
    sig = {i: check_sigma(i) for i in LIBRARY_IDS}
    indec = sorted(decomposability_report())
    swap = sorted(i for i in LIBRARY_IDS if admits_edge_swap(library_action(i)) is not None)
    report = {
        "library": lib,
        "sigma": {str(i): {k: v for k, v in s.items() if k != "elements"} for i, s in sig.items()},
        "indecomposable": {"computed": indec, "expected": sorted(INDECOMPOSABLE),
                           "pass": indec == sorted(INDECOMPOSABLE)},
        "edge swap": {"computed": swap, "expected": sorted(SWAP_IDS),
                      "pass": swap == sorted(SWAP_IDS)},
    }
    mismatches = list(lib["mismatches"])
    mismatches += [f"Sigma of L{i} differs from its table entry" for i, s in sig.items()
                   if not s["pass"]]
    for key in ("indecomposable", "edge swap"):
        if not report[key]["pass"]:
            mismatches.append(f"{key} set differs")
    report["mismatches"] = mismatches
    report["pass"] = not mismatches
    for m in mismatches:
        print(f"MISMATCH {m}", file=sys.stderr)
    _emit(cfg, report)
    return EXIT_MATCH if not mismatches else EXIT_MISMATCH


def cmd_enumerate(cfg: RunConfig, target_key: str, exhaustive: bool) -> int:
    from .actions import actions_isomorphic, classify_edge_regular, library_action, library_ids

    target, expected = ENUMERATE_TARGETS[target_key]
    ids = library_ids(target)
    if exhaustive:
        inputs = [_graph_text(target)] + _library_texts(ids)
        rep = cfg.cache.fetch(f"enumerate-{target_key}", inputs,
                              lambda: classify_edge_regular(target, _progress))
        got = rep["action_classes"]
        rep["expected classes"] = expected
        rep["pass"] = got == expected
    else:
        checks = {f"L{i}": library_action(i).verify() for i in ids}
        distinct = all(actions_isomorphic(library_action(i), library_action(j),
                                          type_preserving=False) is None
                       for i, j in combinations(ids, 2))
        got = sum(1 for c in checks.values() if c["ok"])
        rep = {"target": target, "verified actions": got, "expected": expected,
               "pairwise non-isomorphic": distinct, "actions": checks,
               "pass": got == expected == len(ids) and distinct}
    print(f"{target}: {got} classes, expected {expected}", file=sys.stderr)
    _emit(cfg, rep)
    return EXIT_MATCH if rep["pass"] else EXIT_MISMATCH


def cmd_classify(cfg: RunConfig, links: str, skip_buildings: bool) -> int:
    from .classifier import classify_all, report_csv

    report = classify_all(links, workers=cfg.workers, verify_buildings=not skip_buildings,
                          progress=_progress)
    t = report["totals"]
    print(f"type-preserving classes {t['tp_total']} (published {t['tp_published']}), "
          f"isomorphism classes {t['iso_total']} (published {t['iso_published']})",
          file=sys.stderr)
    for p, fc in report["family_counts"].items():
        if not fc["header matches"]:
            print(f"note: {fc['families']} families for {p}, the published header says "
                  f"{fc['published header']} (items sum to {fc['item sum']})", file=sys.stderr)
    for m in report["mismatches"]:
        print(f"MISMATCH {m}", file=sys.stderr)
    _emit(cfg, report, report_csv(report) if cfg.fmt == "csv" else None)
    return EXIT_MATCH if report["pass"] else EXIT_MISMATCH


def cmd_triangle(cfg: RunConfig, path: str) -> int:
    from .presentations import format_word
    from .triangles import check_building_criterion, fundamental_presentation, load_triangle

    T = load_triangle(path)
    v = check_building_criterion(T)
    P = fundamental_presentation(T)
    verdict = "building: C2-tilde" if v.is_building else "not a building triangle"
    print(f"{verdict}, links {', '.join(v.link_names())}, "
          f"angles {', '.join(str(a) for a in v.angles)} (units of pi)", file=sys.stderr)
    report = dict(v.as_dict(), triangle=T.spec(), presentation={
        "generators": list(P.generators),
        "relators": [format_word(w, P.generators) for w in P.relators],
    })
    _emit(cfg, report)
    return EXIT_MATCH


def cmd_count_regular(cfg: RunConfig, which: str) -> int:
    from .actions import count_point_line_regular

    expected = REGULAR_TARGETS[which]
    got = cfg.cache.fetch(f"regular-{which}", [_graph_text("Q")],
                          lambda: count_point_line_regular(which, _progress))
    report = {"regular on": which, "classes": got, "expected": expected,
              "pass": got == expected}
    print(f"{which}-regular classes: {got}, expected {expected}", file=sys.stderr)
    _emit(cfg, report)
    return EXIT_MATCH if got == expected else EXIT_MISMATCH


# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


class _Parser(argparse.ArgumentParser):
    """Usage errors are operational errors, so they exit with status 1 rather than 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=_positive, default=1, help="worker processes")
    common.add_argument("--cache", default=os.environ.get(ENV_VAR),
                        help=f"cache directory (default ${ENV_VAR}, none if unset)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")

    p = _Parser(prog="c2lat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    q = sub.add_parser("verify-quadrangle", parents=[common],
                       help="check Q, the special matrices and Aut(Q)")
    q.add_argument("--skip-aut", action="store_true", help="skip the automorphism group")
    sub.add_parser("verify-library", parents=[common],
                   help="check the 35 presentations and their local automorphism groups")
    e = sub.add_parser("enumerate", parents=[common], help="verify or enumerate the local actions")
    e.add_argument("target", choices=sorted(ENUMERATE_TARGETS))
    e.add_argument("--exhaustive", action="store_true",
                   help="run the full regular subgroup search")
    c = sub.add_parser("classify", parents=[common], help="count the triangles of groups")
    c.add_argument("links", choices=("446", "664", "all"))
    c.add_argument("--skip-buildings", action="store_true",
                   help="do not rebuild each representative and test the building criterion")
    t = sub.add_parser("triangle", parents=[common], help="analyse a triangle spec file (JSON)")
    t.add_argument("file")
    r = sub.add_parser("count-regular", parents=[common],
                       help="count point- or line-regular subgroups of Aut(Q) (long run)")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", action="store_const", const="points", dest="which")
    g.add_argument("--lines", action="store_const", const="lines", dest="which")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.out, Cache(args.cache), args.workers, args.fmt)
        if args.command == "verify-quadrangle":
            return cmd_verify_quadrangle(cfg, args.skip_aut)
        if args.command == "verify-library":
            return cmd_verify_library(cfg)
        if args.command == "enumerate":
            return cmd_enumerate(cfg, args.target, args.exhaustive)
        if args.command == "classify":
            return cmd_classify(cfg, args.links, args.skip_buildings)
        if args.command == "triangle":
            return cmd_triangle(cfg, args.file)
        return cmd_count_regular(cfg, args.which)
    except (OSError, ValueError, RuntimeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
