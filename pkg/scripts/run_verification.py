#!/usr/bin/env python3
"""Run identity sweeps and write the JSON report to disk.

Examples:
    python scripts/run_verification.py                      # full default grids
    python scripts/run_verification.py --identity prop1 --identity prop6
    python scripts/run_verification.py --threads 4 --out report.json
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ramavg.verify import SuiteConfig, report_to_json, run_suite  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--identity", action="append", dest="identities", metavar="TAG")
    parser.add_argument("--k-max", type=int, dest="k_max")
    parser.add_argument("--r-max", type=int, dest="r_max")
    parser.add_argument("--m-max", type=int, dest="m_max")
    parser.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", type=Path, default=Path("verification_report.json"))
    args = parser.parse_args()

    kwargs = dict(
        identities=args.identities,
        k_max=args.k_max,
        r_max=args.r_max,
        m_max=args.m_max,
        n_max=args.n_max,
        threads=args.threads,
    )
    if args.seed is not None:
        kwargs["seed"] = args.seed
    report = run_suite(SuiteConfig(**kwargs))

    args.out.write_text(report_to_json(report) + "\n")
    print(f"suite: {report.suite}")
    print(f"total {report.total}, passed {report.passed}, failed {report.failed}")
    for tag, err in report.worst_errors.items():
        print(f"worst abs error {tag}: {err:.3e}")
    print(f"wall time {report.wall_time_seconds:.1f}s; report written to {args.out}")
    return 0 if report.failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
