"""Command-line front end.

Subcommands: analyze | count | color | certify | verify | selftest.

Exit codes: 0 success (verify: pass), 1 verify/selftest failure, 2 input
or parse error, 3 cap or work bound exceeded, 4 no such coloring / index
out of range.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import families, oracle
from .construction import (
    STAR_COLOR,
    Coloring,
    chi_certificate,
    construct_distinguishing_coloring,
    construct_proper_distinguishing_coloring,
    distinguishing_chromatic_number,
    distinguishing_number,
    unrank_distinguishing,
)
from .counting import CountTable
from .errors import (
    ClassCapError,
    CountIndexError,
    EnumerationBoundError,
    InvalidTreeError,
    ListFormatError,
    NoColoringError,
    SaturatedCountError,
    TreeSyntaxError,
)
from .list_coloring import (
    construct_list_distinguishing_coloring,
    count_list_distinguishing,
    count_proper_list_distinguishing,
    parse_list_file,
)
from .trees import RootedTree, Tree, center, parse_tree, to_rooted

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BOUND = 3
EXIT_NO_COLORING = 4

_INPUT_ERRORS = (TreeSyntaxError, InvalidTreeError, ListFormatError)
_BOUND_ERRORS = (EnumerationBoundError, ClassCapError, SaturatedCountError)
_COLORING_ERRORS = (NoColoringError, CountIndexError)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_tree(args):
    return parse_tree(_read_input(args.input), args.format)


def _render_color(c: int) -> str:
    return "*" if c == STAR_COLOR else str(c)


def _parse_color(tok: str) -> int:
    return STAR_COLOR if tok == "*" else int(tok)


def _coloring_lines(t, coloring: Coloring) -> list:
    base = t.base if isinstance(t, RootedTree) else t
    out = []
    for v in sorted(coloring.colors, key=lambda v: base.labels[v]):
        out.append(f"{base.labels[v]} {_render_color(coloring.colors[v])}")
    return out


def _coloring_json(t, coloring: Coloring) -> dict:
    base = t.base if isinstance(t, RootedTree) else t
    return {
        base.labels[v]: ("*" if c == STAR_COLOR else c)
        for v, c in coloring.colors.items()
    }


def _certificate_json(rt: RootedTree, cert) -> dict | None:
    if cert is None:
        return None
    label = rt.origin_label(cert.vertex)
    return {
        "vertex": label if label is not None else rt.base.labels[cert.vertex],
        "synthetic_vertex": rt.is_synthetic(cert.vertex),
        "children": sorted(rt.base.labels[c] for c in cert.children),
        "k": cert.k,
        "degenerate": cert.degenerate,
    }


def _analyze_one(t, witness: bool, counts_k: int | None) -> dict:
    start = time.perf_counter()
    rooted_input = isinstance(t, RootedTree)
    rt = t if rooted_input else to_rooted(t)
    d = distinguishing_number(rt)
    chi = distinguishing_chromatic_number(rt)
    cert = chi_certificate(rt)
    if chi not in (d, d + 1) or (cert is not None) != (chi == d + 1):
        raise AssertionError("internal inconsistency between parameters and certificate")
    base = t.base if rooted_input else t
    if rooted_input:
        summary = {
            "n": base.n,
            "kind": "rooted",
            "center": None,
            "center_type": None,
            "subdivided": False,
            "rooted_n": rt.n,
        }
    else:
        ctr = sorted(base.labels[v] for v in center(t))
        summary = {
            "n": base.n,
            "kind": "tree",
            "center": ctr,
            "center_type": "edge" if len(ctr) == 2 else "vertex",
            "subdivided": rt.subdivided,
            "rooted_n": rt.n,
        }
    report = {
        "input": summary,
        "distinguishing_number": d,
        "distinguishing_chromatic_number": chi,
        "certificate": _certificate_json(rt, cert),
    }
    if witness:
        plain = construct_distinguishing_coloring(rt)
        proper = construct_proper_distinguishing_coloring(rt)
        report["witness"] = {
            "distinguishing": _coloring_json(t, plain),
            "proper_distinguishing": _coloring_json(t, proper),
        }
    if counts_k is not None:
        table = CountTable(rt)
        dk = table.distinguishing_raw(rt.root, counts_k)
        pk = table.proper_raw(rt.root, counts_k)
        report["counts"] = {
            "k": counts_k,
            "distinguishing_classes": str(dk),
            "proper_distinguishing_classes": str(counts_k * pk),
        }
    report["timing_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
    return report


def _print_report(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, sort_keys=True))
        return
    info = report["input"]
    noun = "vertex" if info["n"] == 1 else "vertices"
    if info["kind"] == "rooted":
        print(f"rooted tree on {info['n']} {noun}")
    else:
        kind = info["center_type"]
        ctr = ", ".join(info["center"])
        print(f"tree on {info['n']} {noun}; center: {kind} ({ctr})"
              + ("; reduction subdivides the central edge" if info["subdivided"] else ""))
    print(f"distinguishing number D = {report['distinguishing_number']}")
    print(f"distinguishing chromatic number chi_D = {report['distinguishing_chromatic_number']}")
    cert = report["certificate"]
    if cert is None:
        print("certificate: none (chi_D = D)")
    elif cert["degenerate"]:
        print("certificate: degenerate (D = 1 on at least two vertices)")
    else:
        kids = ", ".join(cert["children"])
        print(f"certificate: vertex {cert['vertex']} with sibling class {{{kids}}} "
              f"of size {len(cert['children'])}")
    if "witness" in report:
        print("witness distinguishing coloring:")
        for label in sorted(report["witness"]["distinguishing"]):
            print(f"  {label} {report['witness']['distinguishing'][label]}")
        print("witness proper distinguishing coloring:")
        for label in sorted(report["witness"]["proper_distinguishing"]):
            print(f"  {label} {report['witness']['proper_distinguishing'][label]}")
    if "counts" in report:
        c = report["counts"]
        print(f"classes at k={c['k']}: {c['distinguishing_classes']} distinguishing, "
              f"{c['proper_distinguishing_classes']} proper distinguishing")
    print(f"time: {report['timing_ms']} ms")


def cmd_analyze(args) -> int:
    if args.batch:
        paths = sorted(p for p in Path(args.batch).iterdir() if p.is_file())
        reports = []
        for p in paths:
            t = parse_tree(p.read_text(encoding="utf-8"), args.format)
            rep = _analyze_one(t, args.witness, args.counts)
            rep["file"] = p.name
            reports.append(rep)
        if args.json:
            print(json.dumps(reports, sort_keys=True))
        else:
            for rep in reports:
                print(f"== {rep['file']} ==")
                _print_report(rep, False)
        return EXIT_OK
    t = _load_tree(args)
    _print_report(_analyze_one(t, args.witness, args.counts), args.json)
    return EXIT_OK


def cmd_count(args) -> int:
    t = _load_tree(args)
    rt = t if isinstance(t, RootedTree) else to_rooted(t)
    if args.list:
        assignment = parse_list_file(_read_input(args.list), t)
        if args.proper:
            if rt.subdivided:
                raise ClassCapError(
                    "proper list counting on edge-centered trees is not supported;"
                    " use 'color --proper --list' for a witness"
                )
            total = sum(
                count_proper_list_distinguishing(rt, assignment, i).value
                for i in sorted(assignment.get(rt.root))
            )
            print(total)
            return EXIT_OK
        if rt.subdivided:
            assignment = assignment.extended(rt.subdivision_vertex,
                                             {assignment.max_color() + 1})
        print(count_list_distinguishing(rt, assignment).value)
        return EXIT_OK
    if args.k is None:
        raise TreeSyntaxError("count needs a palette size k (or --list FILE)")
    if args.k < 1:
        raise TreeSyntaxError("k must be a positive integer")
    table = CountTable(rt)
    if args.proper:
        print(args.k * table.proper_raw(rt.root, args.k))
    else:
        print(table.distinguishing_raw(rt.root, args.k))
    return EXIT_OK


def cmd_color(args) -> int:
    t = _load_tree(args)
    rt = t if isinstance(t, RootedTree) else to_rooted(t)
    if args.list:
        if args.index:
            raise TreeSyntaxError("--index is not supported together with --list")
        assignment = parse_list_file(_read_input(args.list), t)
        coloring = construct_list_distinguishing_coloring(t, assignment,
                                                          proper=args.proper)
        if coloring is None:
            raise NoColoringError("no distinguishing coloring from the given lists")
    else:
        k = args.k
        if args.proper:
            coloring = construct_proper_distinguishing_coloring(rt, k, args.index)
        else:
            if k is None:
                k = distinguishing_number(rt)
            full = unrank_distinguishing(rt, k, args.index)
            coloring = (full.restricted_to(v for v in range(rt.n)
                                           if v != rt.subdivision_vertex)
                        if rt.subdivided else full)
    for line in _coloring_lines(t, coloring):
        print(line)
    return EXIT_OK


def cmd_certify(args) -> int:
    t = _load_tree(args)
    rt = t if isinstance(t, RootedTree) else to_rooted(t)
    cert = _certificate_json(rt, chi_certificate(rt))
    if args.json:
        print(json.dumps(cert, sort_keys=True))
    elif cert is None:
        print("none")
    elif cert["degenerate"]:
        print("degenerate certificate: D = 1 on at least two vertices")
    else:
        kids = ", ".join(cert["children"])
        print(f"vertex {cert['vertex']} with sibling class {{{kids}}} at k={cert['k']}")
    return EXIT_OK


def _read_coloring_file(text: str, t) -> Coloring:
    base = t.base if isinstance(t, RootedTree) else t
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ListFormatError(f"line {lineno}: expected 'label color'")
        try:
            v = base.vertex_id(parts[0])
        except KeyError:
            raise ListFormatError(f"line {lineno}: unknown vertex label {parts[0]!r}") from None
        try:
            out[v] = _parse_color(parts[1])
        except ValueError:
            raise ListFormatError(f"line {lineno}: bad color {parts[1]!r}") from None
    missing = [base.labels[v] for v in range(base.n) if v not in out]
    if missing:
        raise ListFormatError(f"coloring misses: {', '.join(sorted(missing))}")
    return Coloring(out)


def cmd_verify(args) -> int:
    t = _load_tree(args)
    coloring = _read_coloring_file(_read_input(args.coloring), t)
    problems = []
    if args.proper and not oracle.is_proper(t, coloring):
        problems.append("not proper")
    if not oracle.is_distinguishing(t, coloring):
        problems.append("preserved by a nontrivial automorphism")
    if problems:
        print("FAIL: " + "; ".join(problems))
        return EXIT_FAIL
    print("PASS: coloring is distinguishing" + (" and proper" if args.proper else ""))
    return EXIT_OK


def cmd_selftest(args) -> int:
    max_n = args.max_n
    failures = 0

    def check(name: str, ok: bool):
        nonlocal failures
        print(f"{'ok' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    for n in range(2, max_n + 1):
        agree = True
        for t in families.nonisomorphic_trees(n):
            if distinguishing_number(t) != oracle.brute_distinguishing_number(t):
                agree = False
            if (distinguishing_chromatic_number(t)
                    != oracle.brute_chromatic_distinguishing_number(t)):
                agree = False
        check(f"parameters match brute force on all trees with n={n}", agree)

    for n in range(2, min(max_n, 8) + 1):
        agree = True
        for t in families.nonisomorphic_trees(n):
            d = distinguishing_number(t)
            chi = distinguishing_chromatic_number(t)
            cert = chi_certificate(t)
            if (cert is not None) != (chi == d + 1):
                agree = False
        check(f"certificate presence matches chi_D = D + 1 at n={n}", agree)

    for n in range(2, min(max_n, 6) + 1):
        agree = True
        for t in families.nonisomorphic_trees(n):
            rt = to_rooted(t)
            table = CountTable(rt)
            for k in (1, 2, 3):
                if (table.distinguishing_raw(rt.root, k)
                        != oracle.brute_count_classes(rt, k).value):
                    agree = False
                if (k * table.proper_raw(rt.root, k)
                        != oracle.brute_count_classes(rt, k, proper=True).value):
                    agree = False
        check(f"counts match exhaustive enumeration at n={n}", agree)

    print(f"selftest: {'PASS' if failures == 0 else f'{failures} FAILURES'}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treesym",
        description="Exact symmetry-breaking coloring analysis for trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", default="-",
                       help="input file, or - for stdin")
        p.add_argument("--format", choices=("edge-list", "parens"),
                       default="edge-list")

    p = sub.add_parser("analyze", help="parameters, certificate, optional witnesses")
    add_input(p)
    p.add_argument("--witness", action="store_true",
                   help="include witness colorings")
    p.add_argument("--counts", type=int, metavar="K",
                   help="include exact class counts at palette size K")
    p.add_argument("--json", action="store_true")
    p.add_argument("--batch", metavar="DIR",
                   help="analyze every file in DIR, ordered by name")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="exact class counts")
    add_input(p)
    p.add_argument("k", nargs="?", type=int, default=None)
    p.add_argument("--proper", action="store_true")
    p.add_argument("--list", metavar="FILE", help="list-assignment file")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("color", help="emit a witness coloring")
    add_input(p)
    p.add_argument("k", nargs="?", type=int, default=None)
    p.add_argument("--proper", action="store_true")
    p.add_argument("--list", metavar="FILE")
    p.add_argument("--index", type=int, default=0,
                   help="class index of the emitted representative")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("certify", help="extra-color certificate or 'none'")
    add_input(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a coloring file")
    add_input(p)
    p.add_argument("coloring", help="file of 'label color' lines")
    p.add_argument("--proper", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the built-in oracle checks")
    p.add_argument("--max-n", type=int, default=7, dest="max_n")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _BOUND_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except _COLORING_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_COLORING


if __name__ == "__main__":
    sys.exit(main())
