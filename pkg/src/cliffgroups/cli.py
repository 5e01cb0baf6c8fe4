"""Command-line front end: classification tables, representation dumps and
verification runs.

Exit codes: 0 success, 1 bad flags, 2 signature outside the supported range,
3 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .classification import (
    GroupId,
    classify_algebra,
    classify_group,
    in_scope_cells,
)
from .errors import CliffordError, ScopeError
from .linalg import format_matrix, parse_matrix
from .matrix_rep import (
    TWO_BLOCK,
    build_rep,
    check_transpose_identities,
    in_scope,
    normalized_rep,
)
from .multivector import Signature
from .scalars import format_exact
from .witness import CellReport, isomorphism_witness, real_target, witness_plan

SCHEMA = 1
DEFAULT_MAX_N = 10
CSV_COLUMNS = ("group", "p", "q", "family", "m", "multiplicity", "lie_dim")

EXIT_FLAGS = 1
EXIT_SCOPE = 2
EXIT_FAILED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def desk_limit() -> int:
    raw = os.environ.get("CLIFFORD_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CLIFFORD_MAX_N must be an integer, got {raw!r}") from None


def _group(text: str) -> GroupId:
    try:
        return GroupId.parse(text)
    except ValueError:
        names = ", ".join(g.cli_name for g in GroupId)
        raise argparse.ArgumentTypeError(f"unknown group {text!r} (choose from {names})") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliffgroups", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    def sig(p, required=True):
        p.add_argument("-p", type=int, required=required, help="number of positive generators")
        p.add_argument("-q", type=int, required=required, help="number of negative generators")

    c = sub.add_parser("classify", help="classical group and Lie algebra of one SpO group")
    c.add_argument("--group", type=_group, required=True)
    sig(c)
    fmt(c)

    t = sub.add_parser("table", help="classification rows for every in-scope signature")
    t.add_argument("--max-n", type=int, default=8)
    t.add_argument("--group", type=_group, help="restrict to one group")
    t.add_argument("--jobs", type=int, default=1)
    fmt(t)

    v = sub.add_parser("verify", help="exact and sampled checks of a classification")
    v.add_argument("--group", type=_group)
    sig(v, required=False)
    v.add_argument("--all", action="store_true", help="every in-scope cell up to --max-n")
    v.add_argument("--max-n", type=int, default=6)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--exact-samples", type=int, default=4)
    v.add_argument("--exact", action="store_true", help="exact checks only, no sampling")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--scale", type=float, default=1.0)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--jobs", type=int, default=1)
    fmt(v)

    r = sub.add_parser("rep-dump", help="generator matrices of the real representation")
    sig(r)
    r.add_argument("--side", choices=("p", "q", "none"), default="none", help="normalise this side product")
    fmt(r)
    return parser


# -- commands ----------------------------------------------------------------------

def _signature(args) -> Signature:
    if args.p is None or args.q is None:
        raise UsageError("both -p and -q are required")
    if args.p < 0 or args.q < 0:
        raise UsageError("-p and -q must be non-negative")
    return Signature(args.p, args.q)


def _check_n(n: int) -> None:
    limit = desk_limit()
    if n > limit:
        raise UsageError(f"n = {n} exceeds the desk limit {limit} (set CLIFFORD_MAX_N to raise it)")


def classification_row(g: GroupId, sig: Signature) -> dict:
    d = classify_group(g, sig)
    a = classify_algebra(g, sig)
    return {
        "group": g.value,
        "p": sig.p,
        "q": sig.q,
        "family": d.family.value,
        "m": d.m,
        "multiplicity": d.multiplicity,
        "matrix_size": d.matrix_size,
        "descriptor": str(d),
        "algebra": str(a),
        "lie_dim": a.lie_dim,
    }


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def run_classify(args) -> int:
    sig = _signature(args)
    row = classification_row(args.group, sig)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **row}, ensure_ascii=False, indent=2))
    elif args.format == "csv":
        print(_csv([row]), end="")
    else:
        size = row["matrix_size"]
        print(row["descriptor"])
        print(f"{row['group']} over {sig}: {size}x{size} matrices, Lie algebra {row['algebra']} of dimension {row['lie_dim']}")
    return 0


def _table_row(cell) -> dict:
    g, sig = cell
    return classification_row(g, sig)


def _pool_map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def run_table(args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    _check_n(args.max_n)
    cells = in_scope_cells(args.max_n)
    if args.group is not None:
        cells = [c for c in cells if c[0] is args.group]
    rows = _pool_map(_table_row, cells, args.jobs)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "max_n": args.max_n, "rows": rows}, ensure_ascii=False, indent=2))
    elif args.format == "csv":
        print(_csv(rows), end="")
    else:
        print(f"{'group':<8} {'p':>2} {'q':>2}  {'group iso':<20} {'algebra iso':<20} {'dim':>5}")
        for r in rows:
            print(f"{r['group']:<8} {r['p']:>2} {r['q']:>2}  {r['descriptor']:<20} {r['algebra']:<20} {r['lie_dim']:>5}")
    return 0


def verify_cell(g: GroupId, sig: Signature, samples: int, exact_samples: int, seed: int, tol: float, scale: float) -> CellReport:
    report = isomorphism_witness(g, sig, samples, seed, tol, scale, exact_samples)
    _, target_group, target_sig = real_target(g, sig)
    plan = witness_plan(target_group, target_sig)
    transpose = check_transpose_identities(plan.rep)
    report.add("transpose-identities", 0 if transpose.passed else 1, transpose.passed, ", ".join(sorted(transpose.lines)))
    return report


def _verify_job(job) -> CellReport:
    return verify_cell(*job)


def _report_text(r: CellReport) -> str:
    lines = [f"{r.group.value} over {r.signature}: {r.descriptor}, Lie algebra dimension {r.lie_dim}"]
    for c in r.checks:
        status = "PASS" if c.passed else "FAIL"
        note = f"  ({c.note})" if c.note else ""
        lines.append(f"  {status} {c.name:<22} {c.residual:.3e}{note}")
    lines.append(f"  result: {'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)


def run_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.exact_samples < 0:
        raise UsageError("--exact-samples must be non-negative")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    samples = 0 if args.exact else args.samples
    exact_samples = max(args.exact_samples, 1) if args.exact else args.exact_samples
    if args.all:
        if args.max_n < 1:
            raise UsageError("--max-n must be at least 1")
        _check_n(args.max_n)
        cells = in_scope_cells(args.max_n)
        if args.group is not None:
            cells = [c for c in cells if c[0] is args.group]
    else:
        if args.group is None:
            raise UsageError("--group is required unless --all is given")
        sig = _signature(args)
        _check_n(sig.n)
        classify_group(args.group, sig)
        cells = [(args.group, sig)]
    jobs = [(g, s, samples, exact_samples, args.seed, args.tol, args.scale) for g, s in cells]
    reports = _pool_map(_verify_job, jobs, args.jobs)
    if args.format == "json":
        payload = {"schema": SCHEMA, "seed": args.seed, "tol": args.tol, "cells": [r.to_dict() for r in reports]}
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("group", "p", "q", "descriptor", "check", "residual", "pass"))
        for r in reports:
            for c in r.checks:
                w.writerow((r.group.value, r.signature.p, r.signature.q, str(r.descriptor), c.name, repr(c.residual), c.passed))
        print(buf.getvalue(), end="")
    else:
        print("\n".join(_report_text(r) for r in reports))
    failing = [(r, name) for r in reports for name in r.failing()]
    if failing:
        for r, name in failing:
            print(f"check failed: {r.group.value} {r.signature} {name}", file=sys.stderr)
        return EXIT_FAILED
    return 0


def format_rep_dump(rep) -> str:
    """Header ``p q dim blocks``, then each generator matrix after a blank line."""
    blocks = 2 if rep.block_structure == TWO_BLOCK else 1
    sig = rep.signature
    parts = [f"{sig.p} {sig.q} {rep.dim} {blocks}"]
    parts += [format_matrix(g) for g in rep.gammas]
    return "\n\n".join(parts)


def parse_rep_dump(text: str) -> tuple[Signature, list]:
    """Inverse of :func:`format_rep_dump`: the signature and generator matrices."""
    header, *chunks = [c for c in text.strip().split("\n\n") if c.strip()]
    p, q, dim, _ = (int(x) for x in header.split())
    mats = [parse_matrix(c) for c in chunks]
    if len(mats) != p + q or any(m.dim != dim for m in mats):
        raise CliffordError("malformed representation dump")
    return Signature(p, q), mats


def run_rep_dump(args) -> int:
    sig = _signature(args)
    _check_n(sig.n)
    if not in_scope(sig):
        raise ScopeError(f"{sig}: p - q = {sig.p - sig.q} is not 0, 1 or 2 mod 8, no real matrix representation is built")
    rep = build_rep(sig) if args.side == "none" else normalized_rep(sig, args.side)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "p": sig.p,
            "q": sig.q,
            "dim": rep.dim,
            "block_structure": rep.block_structure,
            "side": args.side,
            "log": list(rep.log),
            "generators": [[[format_exact(x) for x in row] for row in g.rows] for g in rep.gammas],
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("generator", "row", "col", "value"))
        for a, g in enumerate(rep.gammas, start=1):
            for i, row in enumerate(g.rows):
                for j, x in enumerate(row):
                    if x != 0:
                        w.writerow((a, i, j, format_exact(x)))
        print(buf.getvalue(), end="")
    else:
        print(format_rep_dump(rep))
    return 0


COMMANDS = {
    "classify": run_classify,
    "table": run_table,
    "verify": run_verify,
    "rep-dump": run_rep_dump,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cliffgroups: error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except ScopeError as exc:
        print(f"cliffgroups: out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except CliffordError as exc:
        print(f"cliffgroups: error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
