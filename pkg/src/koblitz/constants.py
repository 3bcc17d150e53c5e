"""Assembly of the conjectural prime-quotient constants.

The universal product prod_l (1 - (l^2-l-1)/((l-1)^3 (l+1))) and its CM
analogue are evaluated over primes up to a truncation limit together with
a rigorous bound on the omitted tail.  Finite group data enters through
an exact rational prefactor, so one cached Euler value is shared by every
constant.  The expected-count integral uses adaptive Simpson quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import galois
from .numtheory import KroneckerChar, PrimeIterator


class DomainError(Exception):
    """Integration endpoint out of range."""


class InvalidDiscriminant(Exception):
    """Argument is not congruent to 0 or 1 mod 4."""


@dataclass(frozen=True)
class KoblitzConstant:
    """prefactor x Euler product, with a rigorous truncation tail bound."""

    rational_prefactor: Fraction
    euler_value: float
    tail_bound: float  # absolute bound on the error of `value`
    truncation_limit: int

    @property
    def value(self) -> float:
        return float(self.rational_prefactor) * self.euler_value

    def to_text(self) -> str:
        return (
            "prefactor = %d/%d\n"
            "euler_value = %.17g\n"
            "tail_bound = %.6g\n"
            "value = %.17g\n"
            "truncation_limit = %d\n"
            % (
                self.rational_prefactor.numerator,
                self.rational_prefactor.denominator,
                self.euler_value,
                self.tail_bound,
                self.value,
                self.truncation_limit,
            )
        )


DEFAULT_LIMIT = 10**8


def universal_factor(ell: int) -> Fraction:
    """Exact local factor 1 - (l^2 - l - 1)/((l-1)^3 (l+1))."""
    return 1 - Fraction(ell * ell - ell - 1, (ell - 1) ** 3 * (ell + 1))


_universal_cache: dict = {}


def universal_euler(limit: int) -> tuple:
    """(value, tail_bound) of the universal product over primes <= limit.

    Each omitted factor satisfies |log(1 - f(l))| <= 2/l^2 for l >= 3, so
    the tail of the log-sum is below sum_{n > limit} 2/n^2 <= 2/limit.
    """
    if limit < 10**3:
        raise ValueError("limit must be >= 1000")
    if limit in _universal_cache:
        return _universal_cache[limit]
    logs = []
    for seg in PrimeIterator(2, limit).segments():
        l = seg.astype(np.float64)
        term = (l * l - l - 1.0) / ((l - 1.0) ** 3 * (l + 1.0))
        logs.append(float(np.sum(np.log1p(-term))))
    value = math.exp(math.fsum(logs))
    tail = 2.0 / limit
    result = (value, value * math.expm1(tail))
    _universal_cache[limit] = result
    return result


def cm_factor(ell: int, chi: int) -> Fraction:
    """Exact CM local factor 1 - chi (l^2-l-1)/((l-chi)(l-1)^2), chi in {1,-1}."""
    return 1 - Fraction(chi * (ell * ell - ell - 1), (ell - chi) * (ell - 1) ** 2)


_cm_cache: dict = {}


def cm_euler(char: KroneckerChar, limit: int) -> tuple:
    """(value, tail_bound) of the CM product over odd primes, accelerated.

    Writes the product as L(1,chi)^-1 prod_l f(l) (1 - chi(l)/l)^-1 with
    L(1,chi) = pi/4 for discriminant -4; the rewritten factors are
    1 + O(1/l^2) with |log| <= 6/l^2, giving tail <= 6/limit.
    """
    if char.discriminant != -4:
        raise ValueError("only the Gaussian character (discriminant -4) is supported")
    if limit < 10**3:
        raise ValueError("limit must be >= 1000")
    if limit in _cm_cache:
        return _cm_cache[limit]
    logs = []
    for seg in PrimeIterator(3, limit).segments():
        l = seg.astype(np.float64)
        chi = np.where(seg % 4 == 1, 1.0, -1.0)
        f = 1.0 - chi * (l * l - l - 1.0) / ((l - chi) * (l - 1.0) ** 2)
        g = f / (1.0 - chi / l)
        logs.append(float(np.sum(np.log(g))))
    value = (4.0 / math.pi) * math.exp(math.fsum(logs))
    tail = 6.0 / limit
    result = (value, value * math.expm1(tail))
    _cm_cache[limit] = result
    return result


def cm_euler_naive(char: KroneckerChar, limit: int) -> tuple:
    """Plain partial product of the CM factors, with a computable tail bound.

    The bound combines the accelerated tail (6/limit) with the exactly
    known deficit of the partial product of (1 - chi(l)/l)^-1 against
    L(1,chi) = pi/4.
    """
    if char.discriminant != -4:
        raise ValueError("only discriminant -4 is supported")
    logs = []
    llogs = []
    for seg in PrimeIterator(3, limit).segments():
        l = seg.astype(np.float64)
        chi = np.where(seg % 4 == 1, 1.0, -1.0)
        f = 1.0 - chi * (l * l - l - 1.0) / ((l - chi) * (l - 1.0) ** 2)
        logs.append(float(np.sum(np.log(f))))
        llogs.append(float(np.sum(np.log1p(-chi / l))))
    value = math.exp(math.fsum(logs))
    deficit = abs(math.log(math.pi / 4.0) + math.fsum(llogs))
    tail = 6.0 / limit + deficit
    return (value, value * math.expm1(tail))


def _prime_divisors(n: int) -> list:
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


def assemble_noncm(
    spec: galois.GroupSpec, t: int, M: int, limit: int = DEFAULT_LIMIT
) -> KoblitzConstant:
    """Constant for a non-CM curve from its glued group data.

    The caller's M must satisfy the product-splitting hypothesis; the
    finite level used is L0 = t * prod_{l | tM} l, which must divide the
    spec level.  The exact prefactor divides out the finitely many
    universal factors at l | tM, so the value is prefactor times the full
    universal Euler product.
    """
    ells = _prime_divisors(t * M)
    L0 = t * math.prod(ells)
    if spec.level % L0 != 0:
        raise ValueError("spec level %d does not contain L0 = %d" % (spec.level, L0))
    d = galois.delta(spec, t, m=L0)
    prefactor = d.fraction
    for ell in ells:
        prefactor /= (1 - Fraction(1, ell)) * universal_factor(ell)
    value, tail = universal_euler(limit)
    return KoblitzConstant(prefactor, value, float(prefactor) * tail, limit)


def assemble_cm(
    cm_spec: galois.CMUnitGroupSpec, t: int, limit: int = DEFAULT_LIMIT
) -> KoblitzConstant:
    """Constant for the Gaussian CM configuration (M = 2, 2-power level).

    prefactor = cm_delta / (1 - 1/2); the CM Euler product already omits
    l = 2, so no local factors need dividing out.
    """
    d = galois.cm_delta(cm_spec, t)
    prefactor = d.fraction / Fraction(1, 2)
    value, tail = cm_euler(KroneckerChar(-4), limit)
    return KoblitzConstant(prefactor, value, float(prefactor) * tail, limit)


def serre_closed_form(D: int, limit: int = DEFAULT_LIMIT) -> KoblitzConstant:
    """Closed-form constant for a curve with maximal Galois image, t = 1.

    D is the discriminant of Q(sqrt(model discriminant)).
    """
    if D % 4 == 1:
        extra = Fraction(1)
        for ell in _prime_divisors(abs(D)):
            extra *= Fraction(1, ell**3 - 2 * ell * ell - ell + 3)
        prefactor = 1 + extra
    elif D % 4 == 0:
        prefactor = Fraction(1)
    else:
        raise InvalidDiscriminant(D)
    value, tail = universal_euler(limit)
    return KoblitzConstant(prefactor, value, float(prefactor) * tail, limit)


def builtin_constant(spec_name: str, t: int, limit: int = DEFAULT_LIMIT) -> KoblitzConstant:
    """Constant for a named built-in group spec, using its attached M."""
    if spec_name.strip() == "cm_gaussian":
        k = max(4, (2 * t).bit_length() - 1)
        return assemble_cm(galois.CMUnitGroupSpec(k), t, limit)
    spec = galois.builtin_spec(spec_name)
    return assemble_noncm(spec, t, galois.builtin_m(spec_name), limit)


def obstruction_check(spec: galois.GroupSpec, t: int, probe_levels) -> bool:
    """True iff the density vanishes at some probed level (constant is 0)."""
    for m in probe_levels:
        if galois.delta(spec, t, m=m).hit_count == 0:
            return True
    return False


# ---------------------------------------------------------------------------
# Expected counts
# ---------------------------------------------------------------------------


def _adaptive_simpson(f, a, b, tol, max_depth=60):
    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, tol, depth):
        xm = 0.5 * (x0 + x2)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        fl, fr = f(xl), f(xr)
        left = simpson(x0, xm, f0, fl, f1)
        right = simpson(xm, x2, f1, fr, f2)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(x0, xm, f0, fl, f1, left, tol / 2.0, depth + 1) + recurse(
            xm, x2, f1, fr, f2, right, tol / 2.0, depth + 1
        )

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def counting_integral(t: int, x: float, log_shift: float | None = None, tol: float = 1e-3) -> float:
    """Integral of 1 / ((log(u+1) - log s) log u) over [t+1, x], s = t by default."""
    if x <= t + 1:
        raise DomainError("need x > t + 1")
    s = float(t if log_shift is None else log_shift)
    logs = math.log(s)

    def integrand(u):
        return 1.0 / ((math.log(u + 1.0) - logs) * math.log(u))

    # split at a few points so the adaptive pass starts from a sane partition
    knots = [float(t + 1)]
    k = float(t + 1) * 2.0
    while k < x:
        knots.append(k)
        k *= 8.0
    knots.append(float(x))
    return sum(
        _adaptive_simpson(integrand, a, b, tol / (len(knots) - 1))
        for a, b in zip(knots, knots[1:])
    )


def expected_count(
    constant: KoblitzConstant, t: int, x: float, log_shift: float | None = None
) -> tuple:
    """(raw, rounded) expected number of qualifying primes up to x."""
    raw = constant.value * counting_integral(t, x, log_shift)
    return raw, round(raw)
