"""Command-line interface.

Subcommands:
  eval2f1   evaluate a Gauss 2F1 at an exact rational point
  evalf1    evaluate an Appell F1 at an exact rational point
  contig    derive the contiguity relation for an integer shift vector
  verify    run the identity database / closed-form certifications
  laplace   reproduce the terminating-family limit experiment (CSV output)

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import balls
from .balls import DomainError, PrecCtx, PrecisionError
from .contiguity import DegenerateRelationError, ShiftVec, derive_contiguity
from .certify import check_case_vanishing, specialize_shift_n
from .dsl import SchemaError
from .exact import PoleError
from .hyper import (
    Params2F1,
    ParamsF1,
    eval_2f1_connection,
    eval_2f1_series,
    eval_f1_double_series,
    eval_f1_terminating,
    gauss_sum,
)
from .quadrature import eval_f1_integral
from .tables import ROWS_BY_ID
from .verify import verify_all
from . import asymptotics


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="f1closed",
        description="closed forms for Appell F1: exact certification and "
        "arbitrary-precision identity verification",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval2f1", help="evaluate 2F1(a,b;c;x)")
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--b", type=_rat, required=True)
    p.add_argument("--c", type=_rat, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--digits", type=int, default=50)
    p.add_argument(
        "--method", choices=["auto", "series", "gauss", "connection"], default="auto"
    )

    p = sub.add_parser("evalf1", help="evaluate F1(alpha;beta1,beta2;gamma;x,y)")
    p.add_argument("--alpha", type=_rat, required=True)
    p.add_argument("--beta1", type=_rat, required=True)
    p.add_argument("--beta2", type=_rat, required=True)
    p.add_argument("--gamma", type=_rat, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--y", type=_rat, required=True)
    p.add_argument("--digits", type=int, default=50)
    p.add_argument(
        "--method",
        choices=["auto", "series", "terminating", "integral"],
        default="auto",
    )

    p = sub.add_parser("contig", help="derive a contiguity relation")
    p.add_argument("--k", required=True, metavar="K,L1,L2,M")
    p.add_argument("--row", help="specialize at a closed-form table row id")
    p.add_argument(
        "--print-relation",
        action="store_true",
        help="print the generic coefficients (can be slow for large shifts)",
    )

    p = sub.add_parser("verify", help="run verifications")
    p.add_argument("--table", choices=["all", "1", "2", "3", "4", "5", "conj"],
                   default="all")
    p.add_argument("--filter", dest="pattern", default=None, metavar="REGEX")
    p.add_argument("--digits", type=int, default=50)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--db", default=None, help="alternate identity database path")

    p = sub.add_parser("laplace", help="terminating-family limit experiment")
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--digits", type=int, default=50)
    p.add_argument(
        "--emit-csv",
        default=None,
        metavar="PATH",
        help="write (n, term, a_ratio, b_ratio) rows to PATH and phase "
        "samples (t, h) to PATH + '.h.csv'",
    )
    return ap


def _cmd_eval2f1(args) -> int:
    ctx = PrecCtx.from_digits(args.digits)
    p = Params2F1(args.a, args.b, args.c)
    if args.method == "gauss" or (args.method == "auto" and args.x == 1):
        res_value = gauss_sum(p, ctx)
        print(balls.fmt(res_value, args.digits), "(method=gauss)")
        return 0
    if args.method == "connection":
        res = eval_2f1_connection(p, args.x, ctx)
    else:
        res = eval_2f1_series(p, args.x, ctx)
    print(balls.fmt(res.value, args.digits), f"(method={res.method}, "
          f"terms={res.terms_used})")
    return 0


def _cmd_evalf1(args) -> int:
    ctx = PrecCtx.from_digits(args.digits)
    p = ParamsF1(args.alpha, args.beta1, args.beta2, args.gamma)
    if args.method == "terminating":
        res = eval_f1_terminating(p, args.x, args.y, ctx)
    elif args.method == "series":
        res = eval_f1_double_series(p, args.x, args.y, ctx)
    elif args.method == "integral":
        res = eval_f1_integral(p, args.x, args.y, ctx)
    else:
        from .hyper import _is_nonpos_int

        if (_is_nonpos_int(p.beta2) and abs(args.x) < 1) or (
            _is_nonpos_int(p.beta1) and abs(args.y) < 1
        ):
            res = eval_f1_terminating(p, args.x, args.y, ctx)
        elif abs(args.x) < 1 and abs(args.y) < 1:
            res = eval_f1_double_series(p, args.x, args.y, ctx)
        else:
            res = eval_f1_integral(p, args.x, args.y, ctx)
    print(balls.fmt(res.value, args.digits), f"(method={res.method}, "
          f"terms={res.terms_used})")
    return 0


def _cmd_contig(args) -> int:
    try:
        parts = [int(v) for v in args.k.split(",")]
        if len(parts) != 4:
            raise ValueError
    except ValueError:
        print(f"--k expects four comma-separated integers, got {args.k!r}",
              file=sys.stderr)
        return 2
    kvec = ShiftVec(*parts)
    rel = derive_contiguity(kvec)
    print(f"contiguity relation for shift {kvec}:")
    if args.print_relation:
        print(f"  q10 = {rel.q10}")
        print(f"  q01 = {rel.q01}")
        print(f"  q00 = {rel.q00}")
    if args.row:
        row = ROWS_BY_ID.get(args.row)
        if row is None:
            print(f"unknown table row {args.row!r}", file=sys.stderr)
            return 2
        if row.shift != kvec:
            print(f"note: row {row.id} has shift {row.shift}, not {kvec}")
        q10n, q01n, q00n = specialize_shift_n(rel, row)
        print(f"  at row {row.id}: q10^(n) = {q10n}")
        print(f"                 q01^(n) = {q01n}")
        print(f"                 q00^(n) = {q00n}")
        cert = check_case_vanishing(row)
        print(f"  {cert.message}")
        if not (cert.certified and cert.matches_expected):
            return 1
    return 0


def _cmd_verify(args) -> int:
    ctx = PrecCtx.from_digits(args.digits)
    report = verify_all(
        ctx, table=args.table, pattern=args.pattern, jobs=args.jobs,
        db_path=args.db,
    )
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    code = report.exit_code
    if code == 0 and report.counts["conjectural-fail"]:
        print("warning: conjectural records failed (exit stays 0)",
              file=sys.stderr)
    return code


def _cmd_laplace(args) -> int:
    ctx = PrecCtx.from_digits(args.digits)
    n_max = args.n_max
    if n_max > 200:
        print("--n-max is capped at 200", file=sys.stderr)
        return 2
    crits = asymptotics.critical_points(asymptotics.EXAMPLE_PHASE, ctx)
    for root, hval in crits:
        print(f"h'(t) = 0 at t = {balls.fmt(root, 30)}, h = {balls.fmt(hval, 30)}")
    h1 = asymptotics.EXAMPLE_PHASE.h_at(Fraction(1), ctx)
    print(f"h(1) = {balls.fmt(h1, 30)}")
    ns = list(range(0, min(n_max, 20) + 1))
    seq = asymptotics.laplace_sequence(ns, ctx)
    for n, t in zip(seq.ns, seq.terms):
        print(f"term({n}) = {balls.fmt(t, min(args.digits, 40))}")
    extrap = asymptotics.richardson_extrapolate(seq)
    print(f"extrapolated limit (heuristic radius): {balls.fmt(extrap, 20)}")
    ratio_ns = [n for n in (8, 16, 32, 64) if 4 <= n <= n_max]
    rows = asymptotics.asymptotic_forms_check(ratio_ns, ctx) if ratio_ns else []
    for r in rows:
        print(
            f"n={r.n}: A-ratio = {balls.fmt(r.a_ratio, 12)}, "
            f"B-ratio = {balls.fmt(r.b_ratio, 12)}"
        )
    if args.emit_csv:
        seq_rows = rows or asymptotics.asymptotic_forms_check(
            [n for n in (8, 16) if n <= max(ns)] or [8], ctx
        )
        asymptotics.emit_sequence_csv(seq_rows, args.emit_csv)
        asymptotics.emit_phase_csv(
            asymptotics.EXAMPLE_PHASE, f"{args.emit_csv}.h.csv", ctx
        )
        print(f"wrote {args.emit_csv} and {args.emit_csv}.h.csv")
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "eval2f1": _cmd_eval2f1,
        "evalf1": _cmd_evalf1,
        "contig": _cmd_contig,
        "verify": _cmd_verify,
        "laplace": _cmd_laplace,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, PoleError, SchemaError, DegenerateRelationError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
