"""Command line entry point: compute, verify, flowtree, khovanov-compare."""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from .arcsys import diagram_to_json
from .braid import BraidParseError, apply_handedness, parse
from .complex import GradingValue
from .differential import RULES
from . import flowtree as ft
from .khovanov import compare_conjecture, khovanov_homology, table_to_json
from .pipeline import arc_slide_check, compute, stabilize_check

EXIT_OK, EXIT_PARSE, EXIT_UNKNOWN, EXIT_VIOLATION = 0, 1, 2, 3


def _relation_text(source, targets):
    return f"d{source} = " + " + ".join("ħ" + t for t in targets)


def _run_report(run, audit=False, dump=False) -> dict:
    cx = run.complex
    rep = {
        "braid": str(run.braid), "strands": run.braid.strands, "n": run.n,
        "handedness": run.handedness,
        "generators": [
            {"name": g.name,
             "grading": str(run.gradings[g.name]) if run.gradings else None,
             "lift": run.gradings[g.name].lift if run.gradings else None}
            for g in cx.generators],
        "relations": run.relations(),
        "homology": run.table.to_json() if run.table is not None else None,
        "total_rank": run.table.total if run.table is not None else None,
        "d_squared": run.d_squared[0],
        "unknown": [u.to_json() for u in cx.unknown],
        "out_of_scope": [u.to_json() for u in cx.out_of_scope],
        "grading_error": str(cx.grading_error) if cx.grading_error else None,
        "partial": run.partial,
    }
    if audit:
        rep["audit"] = cx.audit
        rep["rules"] = RULES
    if dump:
        rep["diagram"] = diagram_to_json(run.diagram)
    return rep


def _emit(report: dict, fmt: str, text_lines):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in text_lines(report):
            print(line)


def _compute_lines(rep):
    yield f"braid: {rep['braid'] or '(identity)'} on {rep['strands']} strands, n = {rep['n']}, " \
          f"{rep['handedness']}"
    yield f"generators ({len(rep['generators'])}):"
    for g in rep["generators"]:
        yield f"  {g['name']:<24} {g['grading'] if g['grading'] is not None else '?'}"
    yield "differential:"
    if not rep["relations"]:
        yield "  0"
    for s, ts in rep["relations"].items():
        yield "  " + _relation_text(s, ts)
    if rep["homology"] is not None:
        yield "homology: " + ", ".join(f"{k}:{v}" for k, v in rep["homology"].items()) + \
              f"  (total {rep['total_rank']})"
    yield f"d^2 = 0: {rep['d_squared']}"
    if rep["unknown"]:
        yield f"unknown domains ({len(rep['unknown'])}), result is partial:"
        for u in rep["unknown"]:
            yield f"  {u['source']} -> {u['target']}: {u['reason']} (C={u['C']}, S={u['S']})"
    if rep["grading_error"]:
        yield f"grading error, result is partial: {rep['grading_error']}"
    if rep.get("audit") is not None:
        yield "rule audit:"
        for a in rep["audit"]:
            yield f"  {a['source']} -> {a['target']}: {a['rule']} count {a['count']}"


def _status(run) -> int:
    if not run.d_squared[0] and not run.partial:
        return EXIT_VIOLATION
    if run.partial:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_compute(args) -> int:
    run = compute(args.braid, args.k, args.n, args.handedness, args.allow_n3)
    rep = {"schema": "khsharp.compute/1", **_run_report(run, args.audit_rules, args.dump_diagram)}
    if args.compare_khovanov:
        rep["khovanov"] = _khovanov_section(run)
    _emit(rep, args.format, _compute_lines)
    return _status(run)


def _khovanov_section(run):
    kh = khovanov_homology(apply_handedness(run.braid, run.handedness))
    out = {"table": table_to_json(kh)}
    if run.table is not None:
        out["comparison"] = compare_conjecture(kh, run.table, run.n)
    return out


def cmd_verify(args) -> int:
    run = compute(args.braid, args.k, args.n, args.handedness, args.allow_n3)
    ok, pair = run.d_squared
    rep = {"schema": "khsharp.verify/1", "braid": str(run.braid), "n": run.n,
           "d_squared": {"passed": ok, "witness": list(pair) if pair else None},
           "partial": run.partial}
    code = EXIT_OK if ok else EXIT_VIOLATION
    if run.partial and code == EXIT_OK:
        code = EXIT_UNKNOWN
    if args.stabilize_check:
        rep["stabilize"] = stabilize_check(run.braid, run.n, run.handedness, args.sign)
        code = _fold(code, rep["stabilize"]["passed"])
    if args.arc_slide_check:
        rep["arc_slide"] = arc_slide_check(run.braid, run.n, run.handedness)
        code = _fold(code, rep["arc_slide"]["passed"])

    def lines(r):
        yield f"d^2 = 0: {r['d_squared']['passed']}"
        for key in ("stabilize", "arc_slide"):
            if key in r:
                yield f"{key}: " + json.dumps(r[key], ensure_ascii=False)
    _emit(rep, args.format, lines)
    return code


def _fold(code, passed):
    if passed is False:
        return EXIT_VIOLATION
    if passed is None and code == EXIT_OK:
        return EXIT_UNKNOWN
    return code


def cmd_flowtree(args) -> int:
    rep = {"schema": "khsharp.flowtree/1", "m": args.m}
    if args.triangle:
        res = ft.count_triangle(args.m)
        rep["triangle"] = res.to_json()
    elif args.pattern:
        dim = ft.rectangle_dimension(args.pattern)
        res = ft.count_rectangle(ft.MorseData.rectangle(args.m), args.pattern)
        rep["pattern"] = args.pattern
        rep["S"] = ft.pattern_S(args.pattern)
        rep["index"] = str(dim)
        rep["pinned_dimension"] = str(dim - GradingValue(1, 0))
        rep["count"] = res.to_json()
    else:
        rep["table"] = {p: {"S": S, "index": str(d), "pinned_dimension": str(pd)}
                        for p, (S, d, pd) in ft.dimension_table().items()}

    def lines(r):
        if "table" in r:
            for p, row in r["table"].items():
                yield f"{p}  S={row['S']}  index {row['index']}  pinned {row['pinned_dimension']}"
        elif "triangle" in r:
            t = r["triangle"]
            yield f"triangle m={r['m']}: count {t['count']} (margin {t['margin']:.3g})"
        else:
            c = r["count"]
            state = f"count {c['count']}" if c["refused"] is None else f"count refused: {c['refused']}"
            yield f"{r['pattern']}  S={r['S']}  index {r['index']}  pinned " \
                  f"{r['pinned_dimension']}  {state}"
    _emit(rep, args.format, lines)
    return EXIT_OK


def cmd_khovanov_compare(args) -> int:
    run = compute(args.braid, args.k, args.n, args.handedness, args.allow_n3)
    sec = _khovanov_section(run)
    rep = {"schema": "khsharp.khovanov/1", "braid": str(run.braid), "n": run.n,
           "khsharp": run.table.to_json() if run.table is not None else None, **sec}

    def lines(r):
        yield "Kh: " + ", ".join(f"({k}):{v}" for k, v in r["table"].items())
        yield "Kh#: " + (", ".join(f"{k}:{v}" for k, v in r["khsharp"].items())
                         if r["khsharp"] is not None else "partial")
        if "comparison" in r:
            yield "comparison: " + json.dumps(r["comparison"])
    _emit(rep, args.format, lines)
    if run.partial:
        return EXIT_UNKNOWN
    return EXIT_OK if sec["comparison"]["match"] else EXIT_VIOLATION


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--braid", default="")
    common.add_argument("--k", type=int, default=2)
    common.add_argument("--n", type=int, default=7)
    common.add_argument("--handedness", choices=("left", "right"), default="left")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--allow-n3", action="store_true")
    p = argparse.ArgumentParser(prog="khsharp")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", parents=[common])
    c.add_argument("--audit-rules", action="store_true")
    c.add_argument("--dump-diagram", action="store_true")
    c.add_argument("--compare-khovanov", action="store_true")
    c.set_defaults(func=cmd_compute)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--stabilize-check", action="store_true")
    v.add_argument("--arc-slide-check", action="store_true")
    v.add_argument("--sign", type=int, choices=(1, -1), default=1)
    v.set_defaults(func=cmd_verify)
    f = sub.add_parser("flowtree")
    f.add_argument("--pattern")
    f.add_argument("--triangle", action="store_true")
    f.add_argument("--m", type=int, choices=(1, 2), default=1)
    f.add_argument("--format", choices=("table", "json"), default="table")
    f.set_defaults(func=cmd_flowtree)
    kc = sub.add_parser("khovanov-compare", parents=[common])
    kc.set_defaults(func=cmd_khovanov_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            return args.func(args)
    except (BraidParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
