"""Elliptic curves over Q: reduction mod p and exact group orders |E(F_p)|.

A curve is given by a long Weierstrass model with integer coefficients.
Group orders are computed exactly: by a character-sum / enumeration count
for small p, and by random-point order finding (baby-step/giant-step over
the Hasse interval, with a quadratic-twist disambiguation) for large p.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .numtheory import is_prime, kronecker

# Below this, an O(p) enumeration count is used; above, O(p^(1/4)) order finding.
NAIVE_LIMIT = 1 << 16


class BadReduction(Exception):
    """Raised when reducing a curve modulo a prime dividing its discriminant."""


def _weierstrass_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


@dataclass(frozen=True)
class CurveQ:
    """Integral long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError("singular model (discriminant 0)")

    @classmethod
    def from_coeffs(cls, coeffs) -> "CurveQ":
        """Build from [a1,a2,a3,a4,a6]; a 2-element [A,B] means y^2 = x^3 + Ax + B."""
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) == 2:
            coeffs = [0, 0, 0] + coeffs
        if len(coeffs) != 5:
            raise ValueError("expected [a1,a2,a3,a4,a6] or [A,B]")
        return cls(*coeffs)

    @property
    def c4(self) -> int:
        return _weierstrass_invariants(self.a1, self.a2, self.a3, self.a4, self.a6)[0]

    @property
    def c6(self) -> int:
        return _weierstrass_invariants(self.a1, self.a2, self.a3, self.a4, self.a6)[1]

    @property
    def disc(self) -> int:
        return _weierstrass_invariants(self.a1, self.a2, self.a3, self.a4, self.a6)[2]

    @property
    def bad_primes(self) -> frozenset:
        return frozenset(_prime_factors(abs(self.disc)))

    def coeffs(self):
        return [self.a1, self.a2, self.a3, self.a4, self.a6]


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def discriminant(curve: CurveQ) -> int:
    """Discriminant of the long Weierstrass model."""
    return curve.disc


@dataclass(frozen=True)
class ReducedCurve:
    """Good reduction of a CurveQ at p.

    For p > 3 the short form y^2 = x^3 + Ax + B (A = -27 c4, B = -54 c6);
    for p in {2, 3} the full coefficient tuple mod p.
    """

    p: int
    short: tuple | None  # (A, B) for p > 3
    long: tuple | None  # (a1,a2,a3,a4,a6) mod p for p in {2,3}


def reduce_mod(curve: CurveQ, p: int) -> ReducedCurve:
    """Reduce mod a good prime; raises BadReduction when p | disc."""
    if curve.disc % p == 0:
        raise BadReduction("p=%d divides the discriminant" % p)
    if p > 3:
        A = (-27 * curve.c4) % p
        B = (-54 * curve.c6) % p
        return ReducedCurve(p, (A, B), None)
    return ReducedCurve(p, None, tuple(c % p for c in curve.coeffs()))


def _count_tiny(rc: ReducedCurve) -> int:
    """Point enumeration for p in {2, 3} on the long model."""
    p = rc.p
    a1, a2, a3, a4, a6 = rc.long
    n = 1  # point at infinity
    for x in range(p):
        for y in range(p):
            lhs = (y * y + a1 * x * y + a3 * y) % p
            rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
            if lhs == rhs:
                n += 1
    return n


def _count_naive(rc: ReducedCurve) -> int:
    """Exact character-sum count N = p + 1 + sum_x chi(x^3+Ax+B) for p > 3."""
    p = rc.p
    A, B = rc.short
    # chi(v) = #\{y : y^2 = v\} - 1; tabulate square counts in O(p).
    sq = bytearray(p)
    for y in range((p + 1) // 2):
        sq[y * y % p] += 2 if y else 1
    n = 1
    for x in range(p):
        n += sq[(x * x * x + A * x + B) % p]
    return n


# -- affine arithmetic on y^2 = x^3 + Ax + B over F_p (None is the identity) --


def _ec_add(P, Q, A, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def _ec_neg(P, p):
    return None if P is None else (P[0], (-P[1]) % p)


def _ec_mul(k, P, A, p):
    R = None
    while k:
        if k & 1:
            R = _ec_add(R, P, A, p)
        P = _ec_add(P, P, A, p)
        k >>= 1
    return R


def _sqrt_mod(a: int, p: int) -> int | None:
    """Square root mod an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _bsgs_zeros(P, A, p, lo, hi):
    """All n in [lo, hi] with n*P = O, by baby-step/giant-step."""
    w = hi - lo + 1
    m = math.isqrt(w) + 1
    # baby table: j*P for j in 1..m-1
    baby = {}
    R = P
    for j in range(1, m):
        if R is None:
            return _multiples_in(j, lo, hi)  # ord(P) = j
        baby.setdefault(R[0], []).append((j, R[1]))
        R = _ec_add(R, P, A, p)
    matches = []
    G = _ec_mul(m, P, A, p)
    R = _ec_mul(lo, P, A, p)
    i = 0
    while lo + i * m <= hi + m:
        base = lo + i * m
        if R is None and lo <= base <= hi:
            matches.append(base)
        elif R is not None:
            for j, yj in baby.get(R[0], ()):
                if R[1] == (p - yj) % p:  # R = -jP
                    n = base + j
                    if lo <= n <= hi:
                        matches.append(n)
                if R[1] == yj:  # R = jP
                    n = base - j
                    if lo <= n <= hi:
                        matches.append(n)
        R = _ec_add(R, G, A, p)
        i += 1
    return sorted(set(matches))


def _random_point(A, B, p, rng):
    while True:
        x = rng.randrange(p)
        v = (x * x * x + A * x + B) % p
        y = _sqrt_mod(v, p)
        if y is not None:
            return (x, y)


def _multiples_in(L, lo, hi):
    first = -(-lo // L) * L
    return list(range(first, hi + 1, L))


def _order_count(rc: ReducedCurve, seed: int = 1) -> int:
    """Group order by random-point order finding in the Hasse interval.

    Accumulates the lcm of sampled point orders; if several candidates
    survive, repeats on a quadratic twist and uses N + N' = 2p + 2; for
    the (tiny-p) cases where that still fails, falls back to enumeration.
    """
    p = rc.p
    A, B = rc.short
    h = math.isqrt(4 * p)
    lo, hi = p + 1 - h, p + 1 + h
    rng = random.Random((seed << 32) ^ p)

    def refine(A_, B_):
        L = 1
        for _ in range(6):
            P = _random_point(A_, B_, p, rng)
            zeros = _bsgs_zeros(P, A_, p, lo, hi)
            if len(zeros) == 1:
                return zeros[0], None
            if len(zeros) >= 2:
                L = L * (zeros[1] - zeros[0]) // math.gcd(L, zeros[1] - zeros[0])
                cand = _multiples_in(L, lo, hi)
                if len(cand) == 1:
                    return cand[0], None
        return None, L

    n, L = refine(A, B)
    if n is not None:
        return n
    # quadratic twist by a non-residue d
    d = 2
    while kronecker(d, p) != -1:
        d += 1
    n2, L2 = refine(A * d * d % p, B * d * d % p * d % p)
    if n2 is not None:
        return 2 * p + 2 - n2
    # intersect: N multiple of L, 2p+2-N multiple of L2
    cand = [n for n in _multiples_in(L, lo, hi) if (2 * p + 2 - n) % L2 == 0]
    if len(cand) == 1:
        return cand[0]
    return _count_naive(rc)  # correctness over elegance (tiny p only)


def point_count(rc: ReducedCurve, seed: int = 1) -> int:
    """Exact |E(F_p)| including the point at infinity."""
    if rc.p <= 3:
        return _count_tiny(rc)
    if rc.p <= NAIVE_LIMIT:
        return _count_naive(rc)
    return _order_count(rc, seed)


def a_p(curve: CurveQ, p: int, seed: int = 1) -> int:
    """Trace of Frobenius p + 1 - |E(F_p)|; |a_p| <= 2*sqrt(p)."""
    return p + 1 - point_count(reduce_mod(curve, p), seed)


# The four worked example curves.
CURVES = {
    "serre_6_m2": CurveQ(0, 0, 0, 6, -2),  # y^2 = x^3 + 6x - 2 (Serre curve)
    "jones_9_18": CurveQ(0, 0, 0, 9, 18),  # y^2 = x^3 + 9x + 18
    "cm_gaussian": CurveQ(0, 0, 0, -1, 0),  # y^2 = x^3 - x (CM by Z[i])
    "x0_11": CurveQ(0, -1, 1, -10, -20),  # X_0(11)
}
