"""Command-line front end: ``eval``, ``table``, ``series`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 time budget exhausted. Progress goes to stderr; stdout carries results only.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hopf, sl2, verify
from .algebra import CasimirPoly
from .chords import DOWParseError, parse_dow

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--budget", type=int, default=300, help="time budget in seconds")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sl2weight", description="sl2 weight system on chord diagrams")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a chord diagram")
    p.add_argument("dow", help='double-occurrence word, e.g. "1 2 1 2"')

    p = sub.add_parser("table", parents=[common], help="values and projections on K_{l,n}")
    p.add_argument("l", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("kind", nargs="?", choices=("values", "projections", "both"), default="both")

    p = sub.add_parser("series", parents=[common], help="generating function coefficients")
    p.add_argument("l", type=int)
    p.add_argument("which", choices=("egf_K", "egf_P", "ogf_P"))
    p.add_argument("order", type=int)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=sorted(verify.SUITES) + ["all"])
    return parser


def _config(args) -> verify.RunConfig:
    return verify.RunConfig(
        max_order=args.max_order,
        time_budget_seconds=args.budget,
        output_format=args.format,
        seed=args.seed,
        progress=True,
    )


def _emit(args, human: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=None))
    else:
        print(human)


def cmd_eval(args) -> int:
    try:
        d = parse_dow(args.dow)
    except DOWParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    value = sl2.eval(d)
    _emit(args, str(value), value.to_json())
    return EXIT_OK


def _projection_row(l: int, n: int) -> CasimirPoly:
    if l == 0:
        series = hopf.projection_egf(0, sl2.graph_value, max(n, 1))
        return hopf.egf_coefficients(series, 0)[n]
    return hopf.project_bipartite_eval(l, n, sl2.graph_value)


def cmd_table(args) -> int:
    l, n_max = args.l, args.n_max
    if not 0 <= l <= 3:
        raise UsageError(f"l must be in 0..3, got {l}")
    if n_max < 0:
        raise UsageError("n_max must be non-negative")
    values = [sl2.k_closed(l, n) for n in range(n_max + 1)]
    projections = [_projection_row(l, n) for n in range(n_max + 1)]
    if args.format == "json":
        if args.kind == "values":
            payload = [p.to_json() for p in values]
        elif args.kind == "projections":
            payload = [p.to_json() for p in projections]
        else:
            payload = {
                "values": [p.to_json() for p in values],
                "projections": [p.to_json() for p in projections],
            }
        print(json.dumps(payload))
        return EXIT_OK
    for n in range(n_max + 1):
        cells = [f"n={n}"]
        if args.kind in ("values", "both"):
            cells.append(f"w(K_{{{l},{n}}}) = {values[n]}")
        if args.kind in ("projections", "both"):
            cells.append(f"w(pi(K_{{{l},{n}}})) = {projections[n]}")
        print("  ".join(cells))
    return EXIT_OK


def cmd_series(args) -> int:
    l, order = args.l, args.order
    if not 0 <= l <= 3:
        raise UsageError(f"l must be in 0..3, got {l}")
    if args.which == "ogf_P" and l == 0:
        raise UsageError("ogf_P is defined for l in 1..3 only")
    if order < 0 or (args.which != "ogf_P" and order < l):
        raise UsageError(f"order {order} too small for l = {l}")
    if args.which == "egf_K":
        coeffs = list(sl2.egf_K(l, order).coeffs)
        note = f"coefficient of x^k, sum_n k_{{{l},n}} x^(n+{l})/n!"
    elif args.which == "egf_P":
        coeffs = list(hopf.projection_egf(l, sl2.graph_value, order).coeffs)
        note = f"coefficient of x^k, sum_n w(pi(K_{{{l},n}})) x^(n+{l})/n!"
    else:
        coeffs = sl2.ogf_P(l, order)
        conv = verify.ogf_convention(l)
        matched = [k for k, ok in conv.items() if ok]
        where = matched[0] if matched else "none"
        note = (
            f"coefficient of s^k of the reference rational function; "
            f"w(pi(K_{{{l},n}})) sits at s^{where}"
        )
    if args.format == "json":
        print(json.dumps({"which": args.which, "l": l, "note": note,
                          "coeffs": [p.to_json() for p in coeffs]}))
    else:
        print(f"# {note}")
        for k, p in enumerate(coeffs):
            print(f"{k}: {p}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    try:
        results = verify.run_suite(args.suite, cfg)
    except verify.BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"suite": args.suite, "passed": ok,
                          "results": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(r.line())
        print(f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in results)}/{len(results)} checks")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "series": cmd_series, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
