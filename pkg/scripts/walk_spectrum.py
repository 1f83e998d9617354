#!/usr/bin/env python3
"""Watch the peak-set walk converge to the peak statistics of random
permutations.

Starts the walk at the point mass on the peak-free set and reports, for
each step, the exact total-variation distance to the stationary law —
which is the distribution of peak sets of a uniform permutation.  Also
prints the transfer spectrum of the degree, whose gap controls the rate.
"""

import argparse
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from peakqsym.combinat import cd_words
from peakqsym.transfer import peak_distribution, transfer_spectrum, walk_step


def tv_distance(a, b):
    keys = set(a) | set(b)
    return sum(abs(a.get(k, Fraction(0)) - b.get(k, Fraction(0))) for k in keys) / 2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=6, help="permutation size (degree + 1)")
    ap.add_argument("--steps", type=int, default=8)
    args = ap.parse_args()

    n = args.size - 1
    target = peak_distribution(args.size).normalized()

    values = sorted({v for v, _, _ in transfer_spectrum(n)}, reverse=True)
    print(f"degree {n}: {len(cd_words(n))} peak sets, spectrum {values}")
    if len(values) > 1:
        print(f"expected decay ratio per step: {Fraction(values[1], values[0])}")

    dist = {"c" * n: Fraction(1)}
    print(f"\nstep  tv-distance to stationary")
    for step in range(args.steps + 1):
        d = tv_distance(dist, target)
        print(f"{step:4d}  {d}  (~{float(d):.3e})")
        if d == 0:
            break
        dist = walk_step(dist)


if __name__ == "__main__":
    main()
