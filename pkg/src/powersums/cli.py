"""Command-line front end.

JSON output (``--format json``) is the stable contract; text output is for
reading. Exit codes: 0 all checks passed, 1 a conjecture violation or an
unexpected mismatch with published tables, 2 usage error, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import checks
from .errors import BudgetExceeded, ConjectureViolation, InvariantBreach
from .exact import format_int, format_q
from .lab import recover_P
from .report import PASS, ReportDocument
from .sequences import bernoulli, g_value, genocchi, tuenter_poly, venn_row
from .sums import DEFAULT_BUDGET, big_S, c_row, c_row_oracle, s_sum, tilde_S_oracle

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{name}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--budget", type=_positive, default=None, help="multiset enumeration budget (env POWERSUM_BUDGET)")
    common.add_argument("--parallelism", type=_positive, default=None, help="worker processes (env POWERSUM_PARALLELISM)")

    parser = argparse.ArgumentParser(prog="powersums", description="Exact experiments on generalized power sums S_{k,j}(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="print the coefficient row C_{j,q}(n)")
    p.add_argument("--j", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--oracle", action="store_true", help="expand the polynomial power instead of the recurrence")

    p = sub.add_parser("sum", parents=[common], help="print s, S and the multiset sum for one cell")
    p.add_argument("--k", type=_nonnegative, required=True)
    p.add_argument("--j", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--method", choices=["formula", "oracle", "both"], default="formula")

    p = sub.add_parser("recover", parents=[common], help="reconstruct P_k(t, x)")
    p.add_argument("--k", type=_nonnegative, required=True)
    p.add_argument("--validation", type=int, default=2)

    seq = sub.add_parser("seq", parents=[common], help="print a classical sequence")
    seq.add_argument("name", choices=["bernoulli", "genocchi", "g", "tuenter", "venn"])
    seq.add_argument("--upto", type=_nonnegative, required=True)

    verify = sub.add_parser("verify", help="run conjecture checks")
    vsub = verify.add_subparsers(dest="target", required=True)
    v = vsub.add_parser("conj1", parents=[common])
    v.add_argument("--kmax", type=_nonnegative, required=True)
    v.add_argument("--jmax", type=_positive, required=True)
    v.add_argument("--nmax", type=_positive, required=True)
    for target in ("structure", "venn"):
        v = vsub.add_parser(target, parents=[common])
        v.add_argument("--k", type=_positive, required=True)
    v = vsub.add_parser("faulhaber", parents=[common])
    v.add_argument("--kmax", type=_positive, required=True)
    v = vsub.add_parser("conj43", parents=[common])
    v.add_argument("--k", type=_nonnegative, required=True)
    v.add_argument("--jmax", type=_positive, required=True)
    v = vsub.add_parser("all", parents=[common])
    v.add_argument("--kmax", type=_positive, required=True)
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_coeffs(args) -> int:
    row = c_row_oracle(args.j, args.n) if args.oracle else c_row(args.j, args.n)
    row.check()
    _emit(args, row.to_json(), " ".join(format_int(c) for c in row.values))
    return EXIT_OK


def _cmd_sum(args, budget: int) -> int:
    k, j, n = args.k, args.j, args.n
    payload: dict = {"cell": [k, j, n]}
    lines = []
    if args.method in ("formula", "both"):
        payload["s"] = format_int(s_sum(k, j, n))
        payload["S"] = format_int(big_S(k, j, n))
        lines += [f"s = {payload['s']}", f"S = {payload['S']}"]
    if args.method in ("oracle", "both"):
        try:
            payload["S_tilde"] = format_int(tilde_S_oracle(k, j, n, budget))
        except BudgetExceeded as exc:
            sys.stderr.write(f"powersums: {exc}\n")
            return EXIT_USAGE
        lines.append(f"S~ = {payload['S_tilde']}")
    code = EXIT_OK
    if args.method == "both":
        payload["match"] = payload["S"] == payload["S_tilde"]
        lines.append("match" if payload["match"] else "MISMATCH")
        code = EXIT_OK if payload["match"] else EXIT_VIOLATION
    _emit(args, payload, "\n".join(lines))
    return code


def _cmd_recover(args, parallelism: int) -> int:
    if args.validation < 2:
        raise UsageError("--validation must be >= 2")
    try:
        rp = recover_P(args.k, args.validation, parallelism)
    except ConjectureViolation as exc:
        _emit(args, {"violation": exc.to_json()}, f"violation: {exc}")
        return EXIT_VIOLATION
    _emit(args, rp.to_json(), f"P_{args.k}(t, x) = {rp.pretty()}")
    return EXIT_OK


def _cmd_seq(args) -> int:
    m = args.upto
    if args.name == "bernoulli":
        idx = list(range(0, m + 1))
        vals = [format_q(bernoulli(q)) for q in idx]
    elif args.name == "genocchi":
        idx = list(range(2, m + 1, 2))
        vals = [format_q(genocchi(q)) for q in idx]
    elif args.name == "g":
        idx = list(range(1, m + 1))
        vals = [format_int(g_value(j)) for j in idx]
    elif args.name == "tuenter":
        idx = list(range(0, m + 1))
        polys = [tuenter_poly(k) for k in idx]
        payload = {"sequence": "tuenter", "indices": idx, "values": [p.to_json("x") for p in polys]}
        _emit(args, payload, "\n".join(f"P_{k}(x) = {p.pretty('x')}" for k, p in zip(idx, polys)))
        return EXIT_OK
    else:
        idx = [p for p in range(3, m + 1, 2)]
        rows = [[format_q(v) for v in venn_row(p)] for p in idx]
        payload = {"sequence": "venn", "indices": idx, "values": rows}
        _emit(args, payload, "\n".join(f"p={p}: " + " ".join(r) for p, r in zip(idx, rows)))
        return EXIT_OK
    width = max((len(str(i)) for i in idx), default=1)
    text = "\n".join(f"{i:>{width}}  {v}" for i, v in zip(idx, vals))
    _emit(args, {"sequence": args.name, "indices": idx, "values": vals}, text)
    return EXIT_OK


def _cmd_verify(args, budget: int, parallelism: int) -> int:
    t = args.target
    if t == "conj1":
        config = {"kmax": args.kmax, "jmax": args.jmax, "nmax": args.nmax, "budget": budget}
        found = checks.check_conj1(args.kmax, args.jmax, args.nmax, budget, parallelism)
    elif t == "structure":
        config = {"k": args.k}
        found = checks.check_recover(args.k, parallelism) + checks.check_structure(args.k, parallelism)
    elif t == "venn":
        config = {"k": args.k}
        found = checks.check_venn(args.k, parallelism)
    elif t == "faulhaber":
        config = {"kmax": args.kmax}
        found = checks.check_faulhaber(args.kmax)
    elif t == "conj43":
        config = {"k": args.k, "jmax": args.jmax}
        found = checks.check_conj43(args.k, args.jmax, parallelism)
    else:
        config = {"kmax": args.kmax, "budget": budget}
        found = checks.run_all(args.kmax, budget, parallelism)
    doc = ReportDocument(f"verify {t}", config, found)
    sys.stdout.write(doc.dumps() if args.format == "json" else doc.render_text())
    return EXIT_OK if doc.verdict == PASS else EXIT_VIOLATION


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        budget = args.budget if args.budget is not None else _env_int("POWERSUM_BUDGET", DEFAULT_BUDGET)
        parallelism = args.parallelism if args.parallelism is not None else _env_int("POWERSUM_PARALLELISM", 1)
        if args.command == "coeffs":
            return _cmd_coeffs(args)
        if args.command == "sum":
            return _cmd_sum(args, budget)
        if args.command == "recover":
            return _cmd_recover(args, parallelism)
        if args.command == "seq":
            return _cmd_seq(args)
        return _cmd_verify(args, budget, parallelism)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"powersums: error: {exc}\n")
        return EXIT_USAGE
    except InvariantBreach as exc:
        sys.stderr.write(f"powersums: internal invariant breach: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
