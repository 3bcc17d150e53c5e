"""Assembling the conjectural constants from Euler products and group data.

Evaluates the universal product with its truncation tail bound, shows
the accelerated CM product against the plain partial product, and
assembles all the worked constants: each is an exact rational prefactor
times a shared Euler value.
"""

import argparse

from koblitz import constants, galois
from koblitz.numtheory import KroneckerChar


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=10**6, help="Euler truncation limit")
    args = parser.parse_args()

    value, tail = constants.universal_euler(args.limit)
    print("universal product over primes <= %d:" % args.limit)
    print("  value = %.15f  (tail bound %.2g)" % (value, tail))

    chi = KroneckerChar(-4)
    av, at = constants.cm_euler(chi, args.limit)
    nv, nt = constants.cm_euler_naive(chi, args.limit)
    print("\nGaussian CM product:")
    print("  accelerated  %.15f  (tail %.2g)" % (av, at))
    print("  plain        %.15f  (tail %.2g)" % (nv, nt))

    print("\nassembled constants (prefactor x Euler value):")
    rows = [
        ("maximal image, t=1", constants.serre_closed_form(-3, args.limit)),
        ("entangled, t=2", constants.builtin_constant("jones_x3_9x_18", 2, args.limit)),
        ("entangled, t=3", constants.builtin_constant("jones_x3_9x_18", 3, args.limit)),
        ("entangled, t=6", constants.builtin_constant("jones_x3_9x_18", 6, args.limit)),
        ("X_0(11), t=5", constants.builtin_constant("x0_11", 5, args.limit)),
        ("Gaussian CM, t=8", constants.builtin_constant("cm_gaussian", 8, args.limit)),
    ]
    for label, c in rows:
        print("  %-20s %12s x Euler = %.9f" % (label, c.rational_prefactor, c.value))

    print("\nobstructed case: t=1 for the entangled curve ->",
          constants.obstruction_check(galois.jones_spec(), 1, [36]))

    c = constants.serre_closed_form(-3, args.limit)
    raw, rounded = constants.expected_count(c, 1, 2 * 10**7)
    print("expected count at x = 2e7: %.3f (rounds to %d)" % (raw, rounded))


if __name__ == "__main__":
    main()
