"""Command line front end.

Exit codes: 0 when the requested computation ran (verdicts, including
negative ones, are data, not errors); 1 for input, format, or validation
problems; 2 when an audit finds an expected implication violated.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import (AuditConfig, export_corpus_jsonl, export_dot,
                    load_expected_edges, report_to_json, run_audit)
from .corpus import build_corpus
from .errors import BoundExceeded, ExpectedEdgeViolated, LocaleLabError
from .frame import DEFAULT_MAX_FRAME, load_frame_json
from .separation import AXIOMS, EXTRA_PROPERTIES, evaluate_frame
from .tensor import DEFAULT_MAX_PRODUCT, build_tensor


def _load_frame(path: str, max_elements: int):
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return load_frame_json(obj, max_elements=max_elements)


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_check(args) -> int:
    frame = _load_frame(args.file, args.max_frame)
    wanted = AXIOMS + EXTRA_PROPERTIES if args.axioms == "all" else \
        tuple(a.strip() for a in args.axioms.split(",") if a.strip())
    unknown = [a for a in wanted if a not in AXIOMS + EXTRA_PROPERTIES]
    if unknown:
        raise LocaleLabError(f"unknown axioms: {', '.join(unknown)}")
    targets = None
    if "TU" in wanted:
        targets = [f for f in build_corpus(max_frame=args.max_frame)
                   if f.n <= args.tu_bound]
    report = evaluate_frame(frame, name=args.file,
                            max_product=args.tensor_bound,
                            tu_targets=targets)
    picked = {ax: report.verdicts[ax] for ax in wanted}
    out = {"frame": args.file, "elements": frame.n, "verdicts": picked}
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_tensor(args) -> int:
    left = _load_frame(args.left, args.max_frame)
    right = _load_frame(args.right, args.max_frame)
    if left.n * right.n > args.tensor_bound:
        sys.stderr.write(
            f"warning: grid {left.n}x{right.n} exceeds the bound "
            f"{args.tensor_bound}; skipped\n")
        _emit(json.dumps({"left": left.n, "right": right.n,
                          "skipped": "tensor-bound"},
                         indent=2, sort_keys=True) + "\n", args.out)
        return 0
    t = build_tensor(left, right, max_product=args.tensor_bound)
    out = {"left": left.n, "right": right.n, "elements": t.frame.n}
    if args.dump:
        out["ideals"] = [
            {"name": t.frame.labels[i],
             "cells": [[left.labels[a], right.labels[b]]
                       for a, b in t.cells_of(i)]}
            for i in range(t.frame.n)]
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_audit(args) -> int:
    cfg = AuditConfig(max_poset=args.max_poset, max_frame=args.max_frame,
                      tensor_bound=args.tensor_bound, tu_bound=args.tu_bound)
    expected = load_expected_edges(args.expected)
    report = run_audit(cfg, expected)
    _emit(report_to_json(report), args.out)
    return 0


def _cmd_export(args) -> int:
    if args.dot:
        if args.from_report:
            with open(args.from_report, encoding="utf-8") as fh:
                report = json.load(fh)
        else:
            cfg = AuditConfig(max_poset=args.max_poset,
                              max_frame=args.max_frame)
            report = run_audit(cfg)
        _emit(export_dot(report), args.out)
    else:
        _emit(export_corpus_jsonl(args.max_poset, args.max_frame), args.out)
    return 0


def _add_bounds(p, tensor=True, tu=False):
    p.add_argument("--max-frame", type=int, default=DEFAULT_MAX_FRAME,
                   help="largest accepted frame")
    if tensor:
        p.add_argument("--tensor-bound", type=int,
                       default=DEFAULT_MAX_PRODUCT,
                       help="largest |L|*|M| grid built")
    if tu:
        p.add_argument("--tu-bound", type=int, default=8,
                       help="largest comparability target")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="locale-lab",
        description="separation properties of finite frames")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="axioms of one frame file")
    p.add_argument("file")
    p.add_argument("--axioms", default="all",
                   help="comma list, or 'all'")
    p.add_argument("--out")
    _add_bounds(p, tu=True)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("tensor", help="coproduct of two frame files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--dump", action="store_true",
                   help="list every ideal's cells")
    p.add_argument("--out")
    _add_bounds(p)
    p.set_defaults(fn=_cmd_tensor)

    p = sub.add_parser("audit", help="corpus-wide implication audit")
    p.add_argument("--max-poset", type=int, default=5)
    p.add_argument("--expected", help="alternate expected-edge file")
    p.add_argument("--out")
    _add_bounds(p, tu=True)
    p.set_defaults(fn=_cmd_audit)

    p = sub.add_parser("export", help="corpus as jsonl, or a dot graph")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--jsonl", action="store_true", default=True)
    group.add_argument("--dot", action="store_true")
    p.add_argument("--from-report", help="reuse an audit report for --dot")
    p.add_argument("--max-poset", type=int, default=5)
    p.add_argument("--out")
    _add_bounds(p, tensor=False)
    p.set_defaults(fn=_cmd_export)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ExpectedEdgeViolated as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BoundExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (LocaleLabError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
