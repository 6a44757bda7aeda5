#!/usr/bin/env python3
"""Sweep the unimprovable-fraction estimate across alternative counts.

Exact enumeration up to n=5, seeded sampling beyond; one report line per n.
"""

import argparse

from pairvote.feasibility import unimprovable_fraction


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--trials", type=int, default=2000, help="sample size for n > 5")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    for n in range(3, args.max_n + 1):
        trials = 0 if n <= 5 else args.trials
        print(unimprovable_fraction(n, trials, args.seed).report())


if __name__ == "__main__":
    main()
