#!/usr/bin/env python3
"""Print small exploration tables: Ramanujan rows, the power-weighted
average S_r(k), and orbicyclic values E(k_1, k_2).

    python scripts/tabulate_averages.py --k-max 12 --r 2
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ramavg.arith import euler_phi  # noqa: E402
from ramavg.averages import s_r_direct  # noqa: E402
from ramavg.multivar import orbicyclic_divisor  # noqa: E402
from ramavg.ramanujan import ramanujan_row  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-max", type=int, default=10, dest="k_max")
    parser.add_argument("--r", type=int, default=1)
    args = parser.parse_args()

    print(f"c_k(j) rows, j = 0..k")
    for k in range(1, args.k_max + 1):
        print(f"  k={k:3d}: {' '.join(f'{v:4d}' for v in ramanujan_row(k).values)}")

    print(f"\nS_{args.r}(k) = (1/k^{args.r + 1}) sum j^{args.r} c_k(j), with phi(k)")
    for k in range(1, args.k_max + 1):
        print(f"  k={k:3d}: S={str(s_r_direct(k, args.r)):>10s}   phi={euler_phi(k)}")

    print("\nE(k1, k2) table")
    header = "      " + " ".join(f"{k2:4d}" for k2 in range(1, args.k_max + 1))
    print(header)
    for k1 in range(1, args.k_max + 1):
        row = " ".join(f"{orbicyclic_divisor((k1, k2)):4d}" for k2 in range(1, args.k_max + 1))
        print(f"  {k1:3d} {row}")


if __name__ == "__main__":
    main()
