"""Command-line entry point.

    qbailey verify theorem --id 1 --order 100 --oracle 50 --format json
    qbailey verify pair --name u-closed --b q^1/2 --n-max 10 --order 60
    qbailey verify fine --b q^1/2 --t q --order 60
    qbailey enumerate --family P --n 10

Orders are given in powers of q.  Exit status: 0 all checks pass, 1 some check
failed, 2 usage error (nothing is printed to stdout in that case).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bailey import (
    compare_pairs,
    fine_identity_check,
    lovejoy_star,
    slater_e1,
    square_base,
    symmetrize_b,
    u_pair_chain,
    u_pair_closed,
    verify_pair,
)
from .errors import QSeriesError
from .oracle import FAMILIES, enumerate_family
from .reports import format_number
from .series import Monomial, format_exponent
from .theta import theorem_rhs
from .verify import lhs_series, verify_theorem

MONOMIAL_FLAGS = ("--b", "--t")

PAIR_NAMES = ("e1", "star", "sym", "squared", "u-closed", "u-chain")

TSV_HEADER = "identity\tsides\tstatus\ttrunc_t_units\tmismatch_t_units\tlhs\trhs\telapsed_ms"


class UsageError(Exception):
    pass


def _monomial(text: str) -> Monomial:
    try:
        m = Monomial.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if m.is_infinite:
        raise argparse.ArgumentTypeError("inf is not allowed here")
    return m


def _positive_order(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("order must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbailey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run an identity or Bailey-pair check")
    vsub = verify.add_subparsers(dest="target", required=True)

    th = vsub.add_parser("theorem", help="certify one partition identity")
    th.add_argument("--id", type=int, choices=(1, 2, 3), required=True)
    th.add_argument("--order", type=_positive_order, default=100, help="q-order (default 100)")
    th.add_argument("--oracle", type=_nonneg, default=None, metavar="N",
                    help="also compare with enumeration up to n = N")
    th.add_argument("--as-printed", action="store_true",
                    help="use the uncorrected right-hand side of identity 3")
    th.add_argument("--dump", action="store_true", help="with tsv, append coefficient rows")

    pr = vsub.add_parser("pair", help="check the Bailey relation for a built-in pair")
    pr.add_argument("--name", choices=PAIR_NAMES, required=True)
    pr.add_argument("--b", type=_monomial, default=Monomial(1, 1))
    pr.add_argument("--n-max", type=_nonneg, default=10)
    pr.add_argument("--order", type=_positive_order, default=60)

    fn = vsub.add_parser("fine", help="check Fine's identity for monomial b, t")
    fn.add_argument("--b", type=_monomial, required=True)
    fn.add_argument("--t", type=_monomial, required=True)
    fn.add_argument("--order", type=_positive_order, default=60)

    for p in (th, pr, fn):
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--timing", action="store_true", help="report elapsed_ms")

    en = sub.add_parser("enumerate", help="signed partition counts by enumeration")
    en.add_argument("--family", choices=FAMILIES, required=True)
    en.add_argument("--n", type=_nonneg, required=True)
    en.add_argument("--format", choices=("json", "tsv"), default="tsv")
    return parser


def _tsv_row(r, timing: bool) -> str:
    mm = r.first_mismatch
    cells = [r.identity_id, r.sides, r.status, str(r.trunc_order),
             "" if mm is None else format_exponent(mm.t_units),
             "" if mm is None else str(format_number(mm.lhs)),
             "" if mm is None else str(format_number(mm.rhs)),
             str(r.elapsed_ms) if timing else ""]
    return "\t".join(cells)


def _pair_tsv_row(r, timing: bool) -> str:
    ff = r.first_failure
    cells = [r.label, r.check, r.status, str(r.trunc_order),
             "" if ff is None else f"n={ff.n},q^{format_exponent(ff.t_units)}",
             "" if ff is None else str(format_number(ff.lhs)),
             "" if ff is None else str(format_number(ff.rhs)),
             str(r.elapsed_ms) if timing else ""]
    return "\t".join(cells)


def _run_theorem(args) -> tuple[list[str], bool]:
    trunc = 2 * args.order
    if args.oracle is not None and args.oracle > args.order:
        raise UsageError("--oracle must not exceed --order")
    reports = verify_theorem(args.id, trunc, args.oracle is not None,
                             args.oracle or 0, args.as_printed)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        lines = [r.to_json(args.timing) for r in reports]
    else:
        lines = [TSV_HEADER] + [_tsv_row(r, args.timing) for r in reports]
        if args.dump:
            lhs = lhs_series(args.id, trunc)
            rhs = theorem_rhs(args.id, trunc, args.as_printed)
            lines.append("")
            lines.append("exponent\tlhs\trhs")
            for e in range(trunc + 1):
                lines.append(f"{format_exponent(e)}\t{format_number(lhs.coeff(e))}\t{format_number(rhs.coeff(e))}")
    return lines, ok


def _make_pair(name: str, b: Monomial, trunc: int):
    if name == "e1":
        return slater_e1(trunc)
    if name == "star":
        return lovejoy_star(slater_e1(trunc), b, trunc)
    if name == "sym":
        return symmetrize_b(slater_e1(trunc), b, trunc)
    if name == "squared":
        return square_base(symmetrize_b(slater_e1(trunc), b, trunc), trunc)
    if name == "u-chain":
        return u_pair_chain(b, trunc)
    return u_pair_closed(b, trunc)


def _run_pair(args) -> tuple[list[str], bool]:
    trunc = 2 * args.order
    try:
        pair = _make_pair(args.name, args.b, trunc)
        pair.alpha(0)
        pair.beta(0)
    except (QSeriesError, ValueError) as exc:
        raise UsageError(str(exc))
    reports = [verify_pair(pair, args.n_max, trunc)]
    if args.name == "u-chain":
        closed = u_pair_closed(args.b, trunc)
        reports.append(compare_pairs(pair, closed, args.n_max, trunc, "beta"))
        reports.append(compare_pairs(pair, closed, args.n_max, trunc, "alpha"))
    ok = all(r.passed for r in reports)
    if args.format == "json":
        lines = [r.to_json(args.timing) for r in reports]
    else:
        lines = [TSV_HEADER] + [_pair_tsv_row(r, args.timing) for r in reports]
    return lines, ok


def _run_fine(args) -> tuple[list[str], bool]:
    if args.t.exp <= 0:
        raise UsageError("t must have positive exponent")
    try:
        report = fine_identity_check(args.b, args.t, 2 * args.order)
    except (QSeriesError, ValueError) as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        lines = [report.to_json(args.timing)]
    else:
        lines = [TSV_HEADER, _tsv_row(report, args.timing)]
    return lines, report.passed


def _run_enumerate(args) -> tuple[list[str], bool]:
    table = enumerate_family(args.family, args.n)
    if args.format == "json":
        return [json.dumps({"family": table.family, "n_max": table.n_max,
                            "counts": list(table.counts)})], True
    return ["n\tcount"] + [f"{n}\t{c}" for n, c in enumerate(table.counts)], True


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--b -q" would otherwise read -q as an option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in MONOMIAL_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "enumerate":
        runner = _run_enumerate
    else:
        runner = {"theorem": _run_theorem, "pair": _run_pair, "fine": _run_fine}[args.target]
    try:
        lines, ok = runner(args)
    except UsageError as exc:
        print(f"qbailey: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
