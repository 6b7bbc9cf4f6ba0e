"""Command-line front end: matroid-forge {build,invariants,verify,delta}."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .connectivity import vertical_connectivity
from .extremal import format_check, line_length_multiset
from .geometries import (cyclic_dowling_label, cyclic_dowling_matrix, dowling, dowling_minus,
                         lift_geometry)
from .groups import parse_group_name
from .labels import GeometryLabel
from .matroid import (BudgetError, complete_graphic, corank, epsilon, format_matroid, girth,
                      max_line_minor, parse_matroid, projective_geometry, si)
from .modular import delta_report, parse_csv_matrix
from .structures import reid_geometry
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_BUDGET = 1 << 20


class UsageError(Exception):
    pass


def _int(text, what):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _need(params, count, usage):
    if len(params) != count:
        raise UsageError(f"expected: build {usage}")


def build(kind: str, params: list[str]):
    """(text, is_csv) for a build request."""
    if kind in ("dg", "dg-minus", "lg", "lg-plus"):
        _need(params, 2, f"{kind} <k> <group>")
        k = _int(params[0], "k")
        try:
            g = parse_group_name(params[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if kind == "dg":
            f, label = dowling(k, g)
            return format_matroid(f.matroid, label)
        if kind == "dg-minus":
            m, label = dowling_minus(k, g, with_label=True)
            return format_matroid(m, label)
        m, label = lift_geometry(k, g, extended=kind == "lg-plus")
        return format_matroid(m, label)
    if kind == "mkn":
        _need(params, 1, "mkn <n>")
        n = _int(params[0], "n")
        if n < 1:
            raise UsageError("n must be positive")
        label = GeometryLabel("MKn", (("n", n),))
        return format_matroid(complete_graphic(n), label)
    if kind == "pg":
        _need(params, 2, "pg <dim> <q>")
        dim, q = _int(params[0], "dim"), _int(params[1], "q")
        if dim < 0:
            raise UsageError("dim must be non-negative")
        m = projective_geometry(dim, q)
        return format_matroid(m, GeometryLabel("PG", (("dim", dim), ("q", q))))
    if kind == "reid":
        _need(params, 1, "reid <p>")
        m = reid_geometry(_int(params[0], "p"))
        return format_matroid(m, GeometryLabel("Reid", (("p", params[0]),)))
    if kind == "cyclic-matrix":
        _need(params, 2, "cyclic-matrix <r> <t-1>")
        r, t1 = _int(params[0], "r"), _int(params[1], "t-1")
        a = cyclic_dowling_matrix(r, t1)
        return format_matroid(a.column_matroid(), cyclic_dowling_label(r, t1))
    raise UsageError(f"unknown kind {kind!r}")


def invariants(m, budget: int = DEFAULT_BUDGET) -> dict:
    s = si(m)
    g = girth(m)
    out = {
        "size": m.n,
        "rank": m.r,
        "epsilon": epsilon(m),
        "girth": None if g == float("inf") else int(g),
        "corank": corank(m),
        "line_lengths": {str(k): v for k, v in line_length_multiset(s).items()},
    }
    try:
        out["vertical_connectivity"] = vertical_connectivity(s) if 1 << max(s.n - 1, 0) <= budget else None
    except BudgetError:
        out["vertical_connectivity"] = None
    out["line_minor_threshold"] = max_line_minor(m)
    return out


def _print_dict(d: dict, out):
    for k, v in d.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}:{b}" for a, b in v.items()) or "-"
        elif v is None:
            v = "-"
        elif isinstance(v, bool):
            v = "yes" if v else "no"
        print(f"{k} {v}", file=out)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def threads_setting(flag) -> int:
    value = flag if flag is not None else os.environ.get("MATROID_FORGE_THREADS", "1")
    n = _int(value, "thread count")
    if n < 1:
        raise UsageError("thread count must be positive")
    return n


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matroid-forge")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget for exhaustive searches")
    p.add_argument("--threads", default=None, help="worker count (default 1 or MATROID_FORGE_THREADS)")
    sub = p.add_subparsers(dest="cmd", required=True)
    b = sub.add_parser("build", help="construct a named geometry")
    b.add_argument("kind")
    b.add_argument("params", nargs="*")
    b.add_argument("-o", "--output")
    i = sub.add_parser("invariants", help="report invariants of a matroid file")
    i.add_argument("path")
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--scale", choices=["small", "full"], default="full")
    v.add_argument("--csv", help="also certify this matrix")
    v.add_argument("--delta", type=int)
    d = sub.add_parser("delta", help="certify a CSV integer matrix")
    d.add_argument("path")
    d.add_argument("--delta", type=int)
    d.add_argument("--c", type=int, help="report the column bound m*m + c*m")
    return p


def _delta(args, out):
    a = parse_csv_matrix(_read(args.path))
    rep = delta_report(a, args.delta, args.c)
    if args.json:
        print(json.dumps(rep, sort_keys=True), file=out)
    else:
        _print_dict(rep, out)
    failed = rep.get("certified") is False or rep.get("within_bound") is False
    return EXIT_FAIL if failed else EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads_setting(args.threads)
        if args.budget < 1:
            raise UsageError("budget must be positive")
        if args.cmd == "build":
            text = build(args.kind, args.params)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                out.write(text)
            return EXIT_OK
        if args.cmd == "invariants":
            m, label = parse_matroid(_read(args.path))
            rep = invariants(m, args.budget)
            if label is not None:
                rep = {"kind": label.kind, **rep}
            if args.json:
                print(json.dumps(rep, sort_keys=True), file=out)
            else:
                _print_dict(rep, out)
            return EXIT_OK
        if args.cmd == "verify":
            checks = run_suite(args.suite, args.scale)
            rows = [{"name": c.name, "verdict": c.verdict, "lhs": str(c.lhs), "rhs": str(c.rhs)} for c in checks]
            failed = [c for c in checks if c.verdict != "PASS"]
            status = EXIT_FAIL if failed else EXIT_OK
            report = None
            if args.csv:
                args.path, args.c = args.csv, None
                a = parse_csv_matrix(_read(args.csv))
                report = delta_report(a, args.delta)
                if report.get("certified") is False:
                    status = EXIT_FAIL
            if args.json:
                print(json.dumps({"suite": args.suite, "checks": rows, "matrix": report,
                                  "failures": len(failed)}, sort_keys=True), file=out)
            else:
                for c in checks:
                    print(format_check(c), file=out)
                if report is not None:
                    _print_dict(report, out)
                print(f"{len(checks) - len(failed)}/{len(checks)} PASS", file=out)
            return status
        if args.cmd == "delta":
            return _delta(args, out)
    except (UsageError, ValueError) as exc:
        print(f"matroid-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"matroid-forge: {exc}; raise --budget", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
