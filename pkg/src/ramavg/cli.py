"""Command-line front end: compute single values, tabulate rows and
averages, and run verification sweeps.

Exit codes: 0 success, 1 verification failures, 2 bad usage/configuration.
Exact values are printed as reduced rationals ("p/q", or a bare integer);
decimals only appear with --approx (17 significant digits).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import product as iter_product
from typing import List, Optional

from .arith import divisor_count_and_sum, euler_phi, jordan_totient, mobius
from .averages import DEFAULT_SEED, DEFAULT_TOLERANCE, s_r_closed
from .exact import bernoulli_number
from .multivar import g_m, orbicyclic_divisor
from .ramanujan import ramanujan_row, ramanujan_sum
from .verify import (
    ConfigError,
    IDENTITY_TAGS,
    ParamError,
    SuiteConfig,
    cases_to_csv,
    report_to_json,
    run_suite,
)

_FORMATS = ("plain", "json", "csv")


def _parse_ks(text: str):
    try:
        ks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ks expects comma-separated integers, got {text!r}")
    if not ks or any(k < 1 for k in ks):
        raise argparse.ArgumentTypeError(f"--ks entries must be positive, got {text!r}")
    return ks


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps values parsed before the subcommand from being clobbered.
    common.add_argument("--format", choices=_FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--approx", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="ramavg",
        description="Ramanujan sums, their weighted averages, and identity verification.",
    )
    parser.add_argument("--format", choices=_FORMATS, default="plain")
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="float comparison tolerance; may only be tightened")
    parser.add_argument("--threads", type=int, default=1, help="worker threads (0 = auto)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for randomized test functions and tuple pairs")
    parser.add_argument("--approx", action="store_true",
                        help="render exact rationals as 17-significant-digit decimals")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", parents=[common], help="compute a single value")
    p_compute.add_argument(
        "function",
        choices=("c", "phi", "mu", "jordan", "tau", "sigma", "bernoulli", "S", "E", "g"),
    )
    p_compute.add_argument("--k", type=int)
    p_compute.add_argument("--j", type=int)
    p_compute.add_argument("--n", type=int)
    p_compute.add_argument("--m", type=int)
    p_compute.add_argument("--r", type=int)
    p_compute.add_argument("--ks", type=_parse_ks)

    p_table = sub.add_parser("table", parents=[common], help="tabulate rows or averages")
    p_table.add_argument("kind", choices=("ramanujan-row", "s-r", "e-values"))
    p_table.add_argument("--k", type=int)
    p_table.add_argument("--k-max", type=int, dest="k_max")
    p_table.add_argument("--r", type=int)
    p_table.add_argument("--n", type=int)

    p_verify = sub.add_parser("verify", parents=[common], help="run identity sweeps")
    p_verify.add_argument("--all", action="store_true", dest="run_all")
    p_verify.add_argument("--identity", action="append", dest="identities",
                          metavar="TAG", help=f"one of: {', '.join(IDENTITY_TAGS)}")
    p_verify.add_argument("--k-max", type=int, dest="k_max")
    p_verify.add_argument("--r-max", type=int, dest="r_max")
    p_verify.add_argument("--m-max", type=int, dest="m_max")
    p_verify.add_argument("--n-max", type=int, dest="n_max")
    return parser


def _render_rational(value, fmt: str, approx: bool) -> str:
    value = Fraction(value)
    if fmt == "json":
        return json.dumps({"num": value.numerator, "den": value.denominator})
    if approx:
        return f"{float(value):.17g}"
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_COMPUTE_SCHEMAS = {
    "c": ("k", "j"),
    "phi": ("n",),
    "mu": ("n",),
    "tau": ("n",),
    "sigma": ("n",),
    "jordan": ("m", "n"),
    "bernoulli": ("m",),
    "S": ("k", "r"),
    "E": ("ks",),
    "g": ("ks", "m"),
}


def _cmd_compute(args) -> int:
    fn = args.function
    wanted = _COMPUTE_SCHEMAS[fn]
    supplied = {
        name: getattr(args, name)
        for name in ("k", "j", "n", "m", "r", "ks")
        if getattr(args, name) is not None
    }
    missing = [name for name in wanted if name not in supplied]
    extra = [name for name in supplied if name not in wanted]
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing {', '.join('--' + m for m in missing)}")
        if extra:
            parts.append(f"unexpected {', '.join('--' + e for e in extra)}")
        print(
            f"usage: ramavg compute {fn} {' '.join('--' + w + ' <value>' for w in wanted)}"
            f" ({'; '.join(parts)})",
            file=sys.stderr,
        )
        return 2
    try:
        if fn == "c":
            value = ramanujan_sum(args.k, args.j)
        elif fn == "phi":
            value = euler_phi(args.n)
        elif fn == "mu":
            value = mobius(args.n)
        elif fn == "tau":
            value = divisor_count_and_sum(args.n)[0]
        elif fn == "sigma":
            value = divisor_count_and_sum(args.n)[1]
        elif fn == "jordan":
            value = jordan_totient(args.m, args.n)
        elif fn == "bernoulli":
            value = bernoulli_number(args.m)
        elif fn == "S":
            value = s_r_closed(args.k, args.r)
        elif fn == "E":
            value = orbicyclic_divisor(args.ks)
        else:
            value = g_m(args.ks, args.m)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_render_rational(value, args.format, args.approx))
    return 0


def _cmd_table(args) -> int:
    fmt = args.format
    if args.kind == "ramanujan-row":
        if args.k is None or args.k < 1:
            print("usage: ramavg table ramanujan-row --k <positive int>", file=sys.stderr)
            return 2
        values = ramanujan_row(args.k).values
        if fmt == "json":
            print(json.dumps({"k": args.k, "values": list(values)}))
        elif fmt == "csv":
            print("j,c")
            for j, v in enumerate(values):
                print(f"{j},{v}")
        else:
            print(",".join(str(v) for v in values))
        return 0

    if args.kind == "s-r":
        if args.k_max is None or args.k_max < 1 or args.r is None or args.r < 1:
            print("usage: ramavg table s-r --k-max <int> --r <int>", file=sys.stderr)
            return 2
        rows = [(k, s_r_closed(k, args.r)) for k in range(1, args.k_max + 1)]
        if fmt == "json":
            print(json.dumps(
                [{"k": k, "num": v.numerator, "den": v.denominator} for k, v in rows]
            ))
        else:
            if fmt == "csv":
                print("k,s_r")
            for k, v in rows:
                print(f"{k},{_render_rational(v, 'plain', args.approx)}")
        return 0

    # e-values: every ordered tuple of a given arity up to a component bound
    if args.n is None or args.n < 1 or args.k_max is None or args.k_max < 1:
        print("usage: ramavg table e-values --n <arity> --k-max <int>", file=sys.stderr)
        return 2
    tuples = list(iter_product(range(1, args.k_max + 1), repeat=args.n))
    try:
        rows = [(t, orbicyclic_divisor(t)) for t in tuples]
    except RuntimeError as exc:  # enumeration budget
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if fmt == "json":
        print(json.dumps([{"ks": list(t), "e": e} for t, e in rows]))
    else:
        if fmt == "csv":
            print("ks,e")
        for t, e in rows:
            print(f"{'|'.join(str(x) for x in t)},{e}")
    return 0


def _cmd_verify(args) -> int:
    identities: Optional[List[str]] = None
    if args.identities:
        identities = []
        for entry in args.identities:
            identities.extend(part for part in entry.split(",") if part)
    if args.run_all:
        identities = None
    config = SuiteConfig(
        identities=identities,
        k_max=args.k_max,
        r_max=args.r_max,
        m_max=args.m_max,
        n_max=args.n_max,
        tolerance=args.tolerance,
        threads=args.threads,
        seed=args.seed,
        keep_cases=(args.format == "csv"),
    )
    try:
        report = run_suite(config)
    except (ConfigError, ParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(report_to_json(report))
    elif args.format == "csv":
        sys.stdout.write(cases_to_csv(report.cases))
    else:
        print(f"suite: {report.suite}")
        print(f"grid: {report.grid}")
        print(f"total {report.total}, passed {report.passed}, failed {report.failed}")
        for tag, err in report.worst_errors.items():
            print(f"worst abs error {tag}: {err:.3e}")
        for case in report.failures[:50]:
            note = f" [{case.error}]" if case.error else ""
            print(f"FAIL {case.identity}({case.params}): lhs={case.lhs} rhs={case.rhs}{note}")
        if len(report.failures) > 50:
            print(f"... and {len(report.failures) - 50} more failures")
        print(f"wall time: {report.wall_time_seconds:.2f}s")
    return 0 if report.failed == 0 else 1


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "compute":
        return _cmd_compute(args)
    if args.command == "table":
        return _cmd_table(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
