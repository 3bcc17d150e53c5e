"""Curve reduction and exact point-count tests (pure-Python paths)."""

import random

import pytest

from koblitz.curve import (
    CURVES,
    BadReduction,
    CurveQ,
    NAIVE_LIMIT,
    _count_naive,
    _order_count,
    a_p,
    discriminant,
    point_count,
    reduce_mod,
)
from koblitz.numtheory import is_prime, iter_primes, kronecker


def test_invariants_known_curves():
    assert discriminant(CURVES["x0_11"]) == -(11**5)
    assert discriminant(CURVES["cm_gaussian"]) == 64
    assert discriminant(CURVES["jones_9_18"]) == -16 * (4 * 9**3 + 27 * 18**2)
    assert CURVES["x0_11"].bad_primes == frozenset({11})
    assert CURVES["cm_gaussian"].bad_primes == frozenset({2})
    assert CURVES["serre_6_m2"].bad_primes == frozenset({2, 3})


def test_from_coeffs_forms():
    assert CurveQ.from_coeffs([6, -2]) == CURVES["serre_6_m2"]
    assert CurveQ.from_coeffs([0, -1, 1, -10, -20]) == CURVES["x0_11"]
    with pytest.raises(ValueError):
        CurveQ.from_coeffs([1, 2, 3])
    with pytest.raises(ValueError):
        CurveQ.from_coeffs([0, 0])  # singular


def test_bad_reduction():
    with pytest.raises(BadReduction):
        reduce_mod(CURVES["x0_11"], 11)
    with pytest.raises(BadReduction):
        reduce_mod(CURVES["cm_gaussian"], 2)


def test_point_count_paper_values():
    assert point_count(reduce_mod(CURVES["jones_9_18"], 5)) == 3
    assert point_count(reduce_mod(CURVES["x0_11"], 3)) == 5
    assert point_count(reduce_mod(CURVES["cm_gaussian"], 5)) == 8
    assert a_p(CURVES["x0_11"], 3) == -1


def test_point_count_exhaustive_oracle():
    # brute force over all affine points of the long model
    for name in ("x0_11", "jones_9_18", "serre_6_m2"):
        E = CURVES[name]
        for p in iter_primes(2, 60):
            if E.disc % p == 0:
                continue
            a1, a2, a3, a4, a6 = (c % p for c in E.coeffs())
            n = 1 + sum(
                1
                for x in range(p)
                for y in range(p)
                if (y * y + a1 * x * y + a3 * y) % p
                == (x**3 + a2 * x * x + a4 * x + a6) % p
            )
            assert point_count(reduce_mod(E, p)) == n, (name, p)


def test_hasse_bound_sample():
    E = CURVES["serre_6_m2"]
    for p in iter_primes(5, 2000):
        if E.disc % p:
            ap = a_p(E, p)
            assert ap * ap <= 4 * p


def test_cm_inert_primes():
    E = CURVES["cm_gaussian"]
    for p in iter_primes(3, 2000):
        if p % 4 == 3:
            assert point_count(reduce_mod(E, p)) == p + 1


def test_naive_vs_bsgs_dual_path():
    # the two independent counting paths agree around the crossover
    from koblitz.curve import ReducedCurve

    rng = random.Random(5)
    primes = list(iter_primes(NAIVE_LIMIT // 4, NAIVE_LIMIT // 4 + 2000))
    for p in primes[:6]:
        A, B = rng.randrange(1, p), rng.randrange(1, p)
        if (4 * A**3 + 27 * B**2) % p == 0:
            continue
        rc = ReducedCurve(p, (A, B), None)
        assert _count_naive(rc) == _order_count(rc)


def test_twist_identity():
    rng = random.Random(11)
    for p in [10007, 20011]:
        for _ in range(3):
            A, B = rng.randrange(1, p), rng.randrange(1, p)
            if (4 * A**3 + 27 * B**2) % p == 0:
                continue
            d = 2
            while kronecker(d, p) != -1:
                d += 1
            from koblitz.curve import ReducedCurve

            n1 = _count_naive(ReducedCurve(p, (A, B), None))
            n2 = _count_naive(ReducedCurve(p, (A * d * d % p, B * pow(d, 3, p) % p), None))
            assert n1 + n2 == 2 * p + 2


def test_order_count_above_naive_limit():
    E = CURVES["serre_6_m2"]
    p = next(iter_primes(NAIVE_LIMIT + 1, NAIVE_LIMIT + 1000))
    rc = reduce_mod(E, p)
    n = point_count(rc)
    assert (p + 1 - n) ** 2 <= 4 * p
    assert n == _count_naive(rc)


def test_point_count_seed_independent():
    E = CURVES["x0_11"]
    p = next(iter_primes(10**5, 10**5 + 100))
    rc = reduce_mod(E, p)
    counts = {point_count(rc, seed=s) for s in (1, 2, 3, 99)}
    assert len(counts) == 1


def test_divisibility_pattern_small():
    # 5 divides |E(F_p)| for X0(11) at every good p >= 3 (small sample here;
    # the 10^5 sweep lives in the acceptance suite)
    E = CURVES["x0_11"]
    for p in iter_primes(3, 500):
        if p != 11:
            assert point_count(reduce_mod(E, p)) % 5 == 0


def test_quotient_counts_small_primes():
    # N/t = 3 at p = 5 counts as a prime quotient for t = 1
    N = point_count(reduce_mod(CURVES["jones_9_18"], 5))
    assert N == 3 and is_prime(N // 1)
