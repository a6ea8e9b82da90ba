"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 domain or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import coefficients, identities, partitions
from .errors import DomainError, InvalidArgument, SyntaxProblem
from .frontend import derive, parse, to_source

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _f_label(j: int) -> str:
    return "f" + "'" * j if j <= 3 else f"f^({j})"


def _g_label(k: partitions.Partition) -> str:
    out = []
    for part, mult in sorted(partitions.multiplicities(k).items(), reverse=True):
        g = "g" + "'" * part if part <= 3 else f"g^({part})"
        out.append(g if mult == 1 else f"{g}^{mult}")
    return " ".join(out)


def _text_rows(tbl: coefficients.CoeffTable) -> list[str]:
    width = max(len(str(e.coefficient)) for e in tbl)
    return [
        f"{e.coefficient:>{width}}  {_f_label(e.f_order):<7} {str(e.partition):<24} {_g_label(e.partition)}"
        for e in tbl
    ]


def cmd_coeffs(args, out) -> int:
    if args.length is None:
        tbl = coefficients.table(args.n, cap=args.cap)
    else:
        tbl = coefficients.table_by_length(args.n, args.length, cap=args.cap)
    if args.format == "json":
        out.write(_dump(tbl.to_dict()) + "\n")
    elif args.format == "tsv":
        out.write(tbl.to_tsv())
    else:
        out.write("\n".join(_text_rows(tbl)) + "\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    if not 1 <= args.n <= args.cap:
        raise InvalidArgument(f"n must be in 1..{args.cap}")
    tables = [coefficients.table(m, cap=args.cap) for m in range(1, args.n + 1)]
    bells = identities.bell_triangle(args.n)
    if args.format == "json":
        rows = []
        for tbl in tables:
            row = tbl.to_dict()
            row["terms"] = len(tbl)
            row["total"] = str(tbl.total())
            rows.append(row)
        out.write(_dump({"rows": rows}) + "\n")
    elif args.format == "tsv":
        out.write("n\tpartition\tj\tcoeff\n")
        for tbl in tables:
            for line in tbl.to_tsv(header=False).splitlines():
                out.write(f"{tbl.n}\t{line}\n")
    else:
        for tbl in tables:
            terms = "  +  ".join(
                f"{e.coefficient} {_f_label(e.f_order)} {_g_label(e.partition)}" for e in tbl
            )
            out.write(f"n={tbl.n:<3} {terms}\n")
            out.write(f"      terms={len(tbl)} total={tbl.total()} bell={bells[tbl.n]}\n")
    return EXIT_OK


def _identity_reports(n: int, cap: int) -> list[identities.IdentityReport]:
    reports = []
    for m in range(1, n + 1):
        if m >= 2:
            reports.append(identities.verify_log_exp(m, cap))
        reports.append(identities.verify_power(m, cap))
        reports.append(identities.verify_bell(m, cap))
    reports.extend(identities.verify_column_multipliers(min(n, 10), ell_max=min(n, 6)))
    return reports


def cmd_identities(args, out) -> int:
    if not 1 <= args.n <= args.cap:
        raise InvalidArgument(f"n must be in 1..{args.cap}")
    reports = _identity_reports(args.n, args.cap)
    if args.format == "json":
        out.write(_dump([r.to_dict() for r in reports]) + "\n")
    elif args.format == "tsv":
        out.write("n\tname\texpected\tcomputed\tpass\n")
        for r in reports:
            out.write(f"{r.n}\t{r.name}\t{r.expected}\t{r.computed}\t{r.passed}\n")
    else:
        for r in reports:
            flag = "PASS" if r.passed else "FAIL"
            out.write(f"{flag}  n={r.n:<3} {r.name:<24} expected={r.expected} computed={r.computed}\n")
        failed = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - failed}/{len(reports)} checks passed\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_partitions(args, out) -> int:
    parts = partitions.enumerate_partitions(args.n, cap=args.cap)
    tally = partitions.count(args.n)
    estimate = partitions.hardy_ramanujan_estimate(args.n)
    ratio = tally.total / estimate
    if args.format == "json":
        out.write(
            _dump(
                {
                    "n": args.n,
                    "partitions": [list(k.parts) for k in parts],
                    "total": str(tally.total),
                    "by_length": {str(j): str(c) for j, c in tally.by_length.items()},
                    "hardy_ramanujan": repr(estimate),
                    "ratio": repr(ratio),
                }
            )
            + "\n"
        )
    elif args.format == "tsv":
        out.write("partition\tj\n")
        for k in parts:
            out.write(f"{','.join(map(str, k.parts))}\t{k.j}\n")
    else:
        for k in parts:
            out.write(f"{k}\n")
        by_len = " ".join(f"{j}:{c}" for j, c in tally.by_length.items())
        out.write(f"p({args.n}) = {tally.total}\nby length: {by_len}\n")
        out.write(f"hardy-ramanujan estimate = {estimate!r}, ratio = {ratio:.6f}\n")
    return EXIT_OK


def _parse_point(text: str, exact: bool):
    try:
        return Fraction(text) if exact else float(text)
    except ValueError:
        raise InvalidArgument(f"cannot read evaluation point {text!r}") from None


def cmd_derive(args, out) -> int:
    if not 0 <= args.order <= args.cap:
        raise InvalidArgument(f"order must be in 0..{args.cap}")
    expr = parse(args.expr)
    at = _parse_point(args.at, args.exact)
    mode = "exact" if args.exact else "float"
    jet = derive(expr, args.order, at, mode=mode, oracle=args.oracle)
    if args.format == "json":
        payload = {
            "expr": to_source(expr),
            "at": str(at),
            "mode": mode,
            "order": args.order,
            "derivs": [repr(d) if isinstance(d, float) else str(d) for d in jet.derivs],
        }
        out.write(_dump(payload) + "\n")
    elif args.format == "tsv":
        out.write("m\tderivative\n")
        for m, d in enumerate(jet.derivs):
            out.write(f"{m}\t{d!r}\n" if isinstance(d, float) else f"{m}\t{d}\n")
    else:
        out.write(f"{to_source(expr)} at x = {at} ({mode})\n")
        for m, d in enumerate(jet.derivs):
            out.write(f"d{m} = {d!r}\n" if isinstance(d, float) else f"d{m} = {d}\n")
    return EXIT_OK


def cmd_columns(args, out) -> int:
    found = identities.find_coinciding_columns(args.n_max, depth=args.depth, cap=args.cap)
    if args.format == "json":
        out.write(_dump(found.to_dict()) + "\n")
    elif args.format == "tsv":
        out.write("n\tfirst\tsecond\tcoeff\n")
        for c in found.pairs:
            a, b = c.partitions
            out.write(f"{c.n}\t{','.join(map(str, a))}\t{','.join(map(str, b))}\t{c.coefficient}\n")
    else:
        for c in found.pairs:
            a, b = c.partitions
            column = ", ".join(map(str, c.column))
            out.write(f"n={c.n:<3} {str(a):<20} {str(b):<20} column: {column}\n")
        for g in found.groups:
            members = " ".join(map(str, g.partitions))
            out.write(f"observed group of {len(g.partitions)} at n={g.n}: {members}\n")
        out.write(f"{len(found.pairs)} pairs, {len(found.groups)} larger groups\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    start = time.perf_counter()
    closed = coefficients.table(args.n, cap=args.cap)
    t_closed = time.perf_counter() - start
    start = time.perf_counter()
    recursed = coefficients.recursion_table(args.n, cap=args.cap)
    t_rec = time.perf_counter() - start
    agree = closed == recursed
    if args.format == "json":
        out.write(
            _dump(
                {
                    "n": args.n,
                    "partitions": len(closed),
                    "closed_form_seconds": t_closed,
                    "recursion_seconds": t_rec,
                    "agree": agree,
                }
            )
            + "\n"
        )
    else:
        out.write(f"n={args.n} partitions={len(closed)}\n")
        out.write(f"closed form: {t_closed:.4f} s\n")
        out.write(f"recursion:   {t_rec:.4f} s\n")
        out.write(f"tables agree: {agree}\n")
    return EXIT_OK if agree else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    common.add_argument("--cap", type=int, default=partitions.DEFAULT_CAP,
                        help="largest n accepted for enumeration (default %(default)s)")

    parser = argparse.ArgumentParser(
        prog="faadibruno",
        description="Exact higher-order chain-rule coefficients and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="coefficients of one derivative order")
    p.add_argument("n", type=int)
    p.add_argument("--length", type=int, help="only partitions with this many parts")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("table", parents=[common], help="rows 1..n of the coefficient scheme")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("identities", parents=[common], help="verify the counting identities up to n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("partitions", parents=[common], help="enumerate and count partitions of n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("derive", parents=[common], help="derivative jet of an expression")
    p.add_argument("expr")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--exact", action="store_true", help="rational arithmetic, no rounding")
    p.add_argument("--oracle", action="store_true", help="compose by power-series substitution")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("columns", parents=[common], help="search for coinciding columns")
    p.add_argument("n_max", type=int)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_columns)

    p = sub.add_parser("bench", parents=[common], help="time closed form against the recursion")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (DomainError, SyntaxProblem) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except InvalidArgument as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
