"""Exact densities from mod-m Galois image data.

Walks the three worked group specifications: the glued level-550 image
of X_0(11), the entangled level-180 image of y^2 = x^3 + 9x + 18, and
the Gaussian CM unit group at 2-power level.  Every density is an exact
fraction obtained by finite counting, never by sampling.
"""

from koblitz import galois


def main():
    spec = galois.x0_11_spec()
    print("X_0(11) image at level 550")
    print("  |G(550)| =", spec.cardinality())
    d = galois.delta(spec, 5)
    print("  delta_5   = %s  (%d hits)" % (d.fraction, d.hit_count))

    spec = galois.jones_spec()
    print("\ny^2 = x^3 + 9x + 18 image at level 180")
    print("  |G(180)| =", spec.cardinality())
    for t in (2, 3, 6):
        print("  delta_%d(36) = %s" % (t, galois.delta(spec, t, m=36).fraction))
    print("  delta(5)     =", galois.delta(spec, 2, m=5).fraction)
    t2 = galois.theta(spec, 2).fraction
    t3 = galois.theta(spec, 3).fraction
    t6 = galois.theta(spec, 6).fraction
    print("  theta_2, theta_3, theta_6 = %s, %s, %s" % (t2, t3, t6))
    print("  1 - theta_2 - theta_3 + theta_6 =", 1 - t2 - t3 + t6,
          " (t = 1 is obstructed)")

    cm = galois.CMUnitGroupSpec(4)
    print("\nGaussian CM unit group at level 16 (%d cosets)" % len(cm.elements()))
    print("  cm_delta(t=8) =", galois.cm_delta(cm, 8).fraction)

    text = galois.spec_to_text(galois.jones_spec())
    print("\nserialized spec round-trips bit-exact:",
          galois.spec_to_text(galois.spec_from_text(text)) == text)


if __name__ == "__main__":
    main()
