"""Fast integer number theory: primality, prime streams, Kronecker symbols.

Everything here is exact.  ``is_prime`` is deterministic for all n < 2**64
(fixed Miller-Rabin witness set), prime enumeration is a segmented sieve
with an odd-only bitset so that ranges up to 10**9 stream in constant
memory, and ``kronecker`` implements the Kronecker symbol with its usual
conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

# Witnesses proving primality for every n < 2**64 (Sinclair's 7-witness set).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def mulmod(a: int, b: int, m: int) -> int:
    """(a * b) mod m.  Exact for any operand sizes; m >= 1."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return (a * b) % m


def powmod(a: int, k: int, m: int) -> int:
    """(a ** k) mod m for k >= 0; m >= 1."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    return pow(a, k, m)


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for all n < 2**64.

    Larger inputs are accepted; for those the fixed witness set is a
    strong probable-prime test (not needed anywhere in this package).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d|n) with the standard conventions."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if d < 0:
            k = -k
    if n % 2 == 0:
        if d % 2 == 0:
            return 0
        t = 0
        while n % 2 == 0:
            n //= 2
            t += 1
        if t % 2 == 1 and d % 8 in (3, 5):
            k = -k
    # n is now odd and positive: Jacobi symbol via reciprocity.
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


@dataclass(frozen=True)
class KroneckerChar:
    """The quadratic character attached to a fundamental discriminant.

    Completely multiplicative, vanishes exactly on primes dividing the
    discriminant; for discriminant -4 it is (-1)**((l-1)/2) on odd l.
    """

    discriminant: int

    def __post_init__(self):
        d = self.discriminant
        if d % 4 not in (0, 1):
            raise ValueError("not a discriminant: %d" % d)

    def __call__(self, n: int) -> int:
        return kronecker(self.discriminant, n)


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as a uint64 array (plain sieve, used for base primes)."""
    if limit < 2:
        return np.empty(0, dtype=np.uint64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.uint64)


@dataclass
class PrimeIterator:
    """Streams the primes in [lo, hi] in increasing order, each once.

    ``segment_size`` counts odd residues per sieve segment; memory use is
    bounded by it regardless of hi - lo.  Single-consumer; create
    disjoint-range iterators for parallel work.
    """

    lo: int
    hi: int
    segment_size: int = 1 << 20
    _base: np.ndarray = field(init=False, repr=False, default=None)

    def __post_init__(self):
        if self.segment_size < 1:
            raise ValueError("segment_size must be positive")

    def segments(self) -> Iterator[np.ndarray]:
        """Yield numpy arrays of consecutive primes covering [lo, hi]."""
        lo, hi = self.lo, self.hi
        if hi < lo or hi < 2:
            return
        lo = max(lo, 2)
        if self._base is None:
            self._base = _simple_sieve(math.isqrt(hi) + 1)
        base = self._base
        # Odd base primes only; 2 is emitted directly.
        odd_base = base[base > 2].astype(np.int64)
        if lo <= 2 <= hi:
            yield np.array([2], dtype=np.uint64)
        # Sieve odd numbers in [start, hi].
        start = lo if lo % 2 == 1 else lo + 1
        if start < 3:
            start = 3
        seg_span = 2 * self.segment_size
        while start <= hi:
            end = min(start + seg_span - 2, hi)  # odd, inclusive
            n_odd = (end - start) // 2 + 1
            mask = np.ones(n_odd, dtype=bool)
            for p in odd_base:
                p = int(p)
                first = p * p
                if first > end:
                    break
                if first < start:
                    first = start + ((p - start % p) % p)
                    if first % 2 == 0:
                        first += p
                if first > end:
                    continue
                mask[(first - start) // 2 :: p] = False
            primes = start + 2 * np.nonzero(mask)[0].astype(np.uint64)
            if primes.size:
                yield primes
            start = end + 2

    def __iter__(self) -> Iterator[int]:
        for seg in self.segments():
            for p in seg:
                yield int(p)


def primes_in(lo: int, hi: int, visitor: Callable[[int], None]) -> None:
    """Invoke visitor once per prime in [lo, hi], in increasing order."""
    if lo > hi:
        raise ValueError("need lo <= hi")
    for p in PrimeIterator(lo, hi):
        visitor(p)


def iter_primes(lo: int, hi: int) -> Iterator[int]:
    """Generator over the primes in [lo, hi]."""
    return iter(PrimeIterator(lo, hi))


def prime_array(lo: int, hi: int) -> np.ndarray:
    """All primes in [lo, hi] as one uint64 array (use segments() to stream)."""
    segs = list(PrimeIterator(lo, hi).segments())
    if not segs:
        return np.empty(0, dtype=np.uint64)
    return np.concatenate(segs)
