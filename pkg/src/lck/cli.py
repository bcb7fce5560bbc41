"""Command line: ``lck check``, ``lck emit``, ``lck lift`` and ``lck hierarchy``."""
from __future__ import annotations

import argparse
import json
import sys

from .checks import run_check
from .dsl import CheckStmt, DslError, emit, emit_object, parse_file
from .report import Report

JSON_SCHEMA_VERSION = 1


def _print_report(rep: Report, args, millis=None, out=None):
    out = out or sys.stdout
    if args.json:
        d = rep.to_dict(seed=args.seed, oracle_points=args.oracle_points, millis=millis)
        d = {"schema": JSON_SCHEMA_VERSION, **d}
        out.write(json.dumps(d, sort_keys=False, separators=(",", ":")) + "\n")
        return
    out.write(rep.summary() + "\n")
    if args.oracle_points is not None:
        agree, total = rep.oracle_agreement(args.oracle_points or None, args.seed)
        out.write(f"      oracle: {agree}/{total} residuals agree\n")
    if millis is not None:
        out.write(f"      {millis} ms\n")


def _load(path):
    try:
        return parse_file(path)
    except DslError as exc:
        sys.stderr.write(f"{path}:{exc}\n")
        return None
    except OSError as exc:
        sys.stderr.write(f"lck: {exc}\n")
        return None


def cmd_check(args) -> int:
    ws = _load(args.file)
    if ws is None:
        return 2
    ok = True
    for stmt in ws.checks:
        rep, millis = run_check(ws, stmt, timing=args.timing)
        _print_report(rep, args, millis)
        ok = ok and rep.verdict == "pass"
    return 0 if ok else 1


def cmd_emit(args) -> int:
    ws = _load(args.file)
    if ws is None:
        return 2
    if args.object not in ws.objects:
        sys.stderr.write(f"lck: no object named {args.object!r} in {args.file}\n")
        return 2
    sys.stdout.write(emit(ws, args.object))
    return 0


def cmd_lift(args) -> int:
    ws = _load(args.file)
    if ws is None:
        return 2
    rep, millis = run_check(ws, CheckStmt("lift", (args.gd, args.map)), timing=args.timing)
    _print_report(rep, args, millis)
    return 0 if rep.verdict == "pass" else 1


def cmd_hierarchy(args) -> int:
    from .checks import resolve_args
    from .ooperator import hierarchy

    ws = _load(args.file)
    if ws is None:
        return 2
    names = (args.algebra, args.module, args.T, args.N, args.S)
    try:
        A, R, T, N, S, k = resolve_args(ws, "hierarchy", names + (args.kmax,))
        ops, rep = hierarchy(A, R, T, N, S, k)
    except Exception as exc:
        rep = Report("hierarchy", " ".join(names), error=f"{type(exc).__name__}: {exc}")
        ops = []
    rep.check = "hierarchy"
    _print_report(rep, args)
    if args.emit and rep.verdict == "pass":
        for k, Tk in enumerate(ops):
            sys.stdout.write(f"# T{k}\n" + emit_object("map", Tk, f"T{k}"))
    return 0 if rep.verdict == "pass" else 1


def _common(p):
    p.add_argument("--json", action="store_true", help="one JSON object per line")
    p.add_argument("--oracle-points", type=int, default=None, metavar="N",
                   help="re-decide each residual by exact evaluation; 0 means degree+1 points per symbol")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="report wall time (makes output non-deterministic)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lck", description="Exact checks for Lie conformal algebra structures.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("check", help="run every check statement in a file")
    p.add_argument("file")
    _common(p)
    p.set_defaults(fn=cmd_check)
    p = sub.add_parser("emit", help="print an object as self-contained canonical text")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    p.set_defaults(fn=cmd_emit)
    p = sub.add_parser("lift", help="lift a scalar Nijenhuis operator on a GD bialgebra to its quadratic algebra")
    p.add_argument("file")
    p.add_argument("gd")
    p.add_argument("map")
    _common(p)
    p.set_defaults(fn=cmd_lift)
    p = sub.add_parser("hierarchy", help="T_k = N^k T and their pairwise compatibility")
    p.add_argument("file")
    for name in ("algebra", "module", "T", "N", "S"):
        p.add_argument(name)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--emit", action="store_true", help="print the operators T_k")
    _common(p)
    p.set_defaults(fn=cmd_hierarchy)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
