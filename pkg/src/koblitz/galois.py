"""Exact densities of matrix sets inside mod-m Galois image groups.

A group is described as a glued (fiber) product of local blocks at
pairwise-coprime levels, cut out by equalities of characters between
blocks.  All counts are exact integers; densities are exact rationals.
Glued cardinalities are computed without materializing tuples: each
block's elements are classified by their character values and the class
counts are convolved over the relation constraints.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .numtheory import kronecker

Mat = tuple  # (a, b, c, d), row-major, entries mod the block level


class BudgetExceeded(Exception):
    """A block's element count exceeds the enumeration budget."""


class UnknownSpec(Exception):
    """No built-in group specification with the requested name."""


DEFAULT_BUDGET = 10**8


def _det(A: Mat, m: int) -> int:
    return (A[0] * A[3] - A[1] * A[2]) % m


def _det_i_minus(A: Mat, m: int) -> int:
    return ((1 - A[0]) * (1 - A[3]) - A[1] * A[2]) % m


def _mul(A: Mat, B: Mat, m: int) -> Mat:
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)


def mat_is_unit(A: Mat, m: int) -> bool:
    return math.gcd(_det(A, m), m) == 1


@dataclass(frozen=True)
class MatModM:
    """A matrix in GL_2(Z/m): level plus four residues."""

    m: int
    entries: Mat

    def __post_init__(self):
        if not mat_is_unit(self.entries, self.m):
            raise ValueError("determinant is not a unit mod %d" % self.m)


def psi_member(A: Mat, m: int, t: int) -> bool:
    """True iff det(I - A) lies in t * (Z/m)^x.

    For t not divisible by m, the set t*(Z/m)^x equals
    {x : gcd(x, m) = gcd(t, m)} (both sides factor over the prime powers
    dividing m).  For t = 0 mod m with m > 1 no residue qualifies.
    """
    if m == 1:
        return True
    if t % m == 0:
        return False
    return math.gcd(_det_i_minus(A, m), m) == math.gcd(t % m, m)


def gl2_order(m: int) -> int:
    """|GL_2(Z/m)| by the closed form over prime powers."""
    n = 1
    mm = m
    ell = 2
    while mm > 1:
        if mm % ell == 0:
            k = 0
            while mm % ell == 0:
                mm //= ell
                k += 1
            n *= ell ** (4 * k - 3) * (ell - 1) * (ell * ell - 1)
        ell += 1 if ell == 2 else 2
    return n


# ---------------------------------------------------------------------------
# Local blocks
# ---------------------------------------------------------------------------

# Membership predicates available to PREDICATE blocks.
def _pred_lower_left_divisible(A: Mat, m: int, q: int) -> bool:
    """Reduction mod q is upper triangular (lower-left entry divisible by q)."""
    return A[2] % q == 0


def _pred_unipotent_shape(A: Mat, m: int, q: int) -> bool:
    """Shape [[1+qa, qb], [qc, u]] mod m (here q^2 = m)."""
    return A[0] % q == 1 and A[1] % q == 0 and A[2] % q == 0


def _pred_sign_eq_det_char(A: Mat, m: int, _unused: int) -> bool:
    """Signature on 2-torsion equals the nontrivial character of det mod 4."""
    return _char_sign2(A, m) == _char_detmod4(A, m)


_PREDICATES = {
    "lower_left_divisible": _pred_lower_left_divisible,
    "unipotent_shape": _pred_unipotent_shape,
    "sign_eq_det_char": _pred_sign_eq_det_char,
}


@dataclass
class LocalBlock:
    """One local factor of a glued group.

    membership is ("full",), ("predicate", name, param) or
    ("generators", tuple of 4-tuples).  Levels must be prime powers (or a
    product handled atomically, at enumeration cost level**4).
    """

    level: int
    membership: tuple
    _cache: list = field(default=None, repr=False)

    def elements(self, budget: int = DEFAULT_BUDGET) -> list:
        if self._cache is not None:
            return self._cache
        m = self.level
        kind = self.membership[0]
        if kind == "generators":
            self._cache = self._closure(budget)
            return self._cache
        if m**4 > budget:
            raise BudgetExceeded("block level %d too large to enumerate" % m)
        if kind == "full":
            elems = [A for A in product(range(m), repeat=4) if mat_is_unit(A, m)]
        elif kind == "predicate":
            name, param = self.membership[1], self.membership[2]
            pred = _PREDICATES[name]
            elems = [
                A
                for A in product(range(m), repeat=4)
                if mat_is_unit(A, m) and pred(A, m, param)
            ]
        else:
            raise ValueError("unknown membership kind %r" % (kind,))
        self._cache = elems
        return elems

    def _closure(self, budget: int) -> list:
        m = self.level
        gens = [tuple(g) for g in self.membership[1]]
        seen = set(gens)
        frontier = list(gens)
        while frontier:
            new = []
            for X in frontier:
                for g in gens:
                    Y = _mul(X, g, m)
                    if Y not in seen:
                        seen.add(Y)
                        new.append(Y)
            if len(seen) > budget:
                raise BudgetExceeded("generated block exceeds budget")
            frontier = new
        return sorted(seen)

    def cardinality(self, budget: int = DEFAULT_BUDGET) -> int:
        if self.membership[0] == "full":
            return gl2_order(self.level)
        return len(self.elements(budget))


# ---------------------------------------------------------------------------
# Glue characters
# ---------------------------------------------------------------------------

_TWO_TORSION = ((0, 1), (1, 0), (1, 1))


def _char_sign2(A: Mat, m: int) -> int:
    """Signature of the permutation induced on the nonzero 2-torsion vectors."""
    a, b, c, d = (x % 2 for x in A)
    perm = []
    for (x, y) in _TWO_TORSION:
        perm.append(_TWO_TORSION.index(((a * x + b * y) % 2, (c * x + d * y) % 2)))
    # parity of a permutation of 3 symbols
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def _char_detmod4(A: Mat, m: int) -> int:
    """Nontrivial character of (Z/4)^x composed with det."""
    return 1 if _det(A, m) % 4 == 1 else -1


def _dlog_table(ell: int, g: int, q: int) -> dict:
    """x -> k with g^k = +-x in F_ell^x / {+-1} (cyclic of order q)."""
    table = {}
    v = 1
    for k in range(q):
        table[v] = k
        table[ell - v] = k
        v = v * g % ell
    return table


_F11_CLASSES = _dlog_table(11, 2, 5)


@dataclass(frozen=True)
class GlueChar:
    """A named character on one block, from the fixed catalog.

    name/param pairs:
      sign2 ()            -- 2-torsion signature, values {+-1}
      detjac d            -- Jacobi symbol (det | d), values {+-1}
      detmod4 ()          -- nontrivial character of (Z/4)^x at det, {+-1}
      detclass_11 ()      -- det in F_11^x / {+-1} = Z/5 via generator +-2
      upper_a_5 ()        -- [[1+5a,*],[*,*]] -> a mod 5 (level-25 block)
      beta3 ()            -- eigencharacter on the fixed 3-torsion line, {+-1}
    """

    block_index: int
    name: str
    param: int = 0

    def value(self, A: Mat, m: int) -> int:
        if self.name == "sign2":
            return _char_sign2(A, m)
        if self.name == "detjac":
            return kronecker(_det(A, m), self.param)
        if self.name == "detmod4":
            return _char_detmod4(A, m)
        if self.name == "detclass_11":
            return _F11_CLASSES[_det(A, m) % 11]
        if self.name == "upper_a_5":
            return (A[0] - 1) // 5 % 5
        if self.name == "beta3":
            return 1 if A[0] % 3 == 1 else -1
        raise ValueError("unknown character %r" % self.name)

    def domain(self) -> tuple:
        if self.name in ("detclass_11", "upper_a_5"):
            return (0, 1, 2, 3, 4)
        return (1, -1)


# ---------------------------------------------------------------------------
# Glued specifications
# ---------------------------------------------------------------------------


@dataclass
class GroupSpec:
    """A glued product of local blocks with character-equality relations."""

    blocks: list
    relations: list  # list of (GlueChar, GlueChar) pairs

    def __post_init__(self):
        levels = [b.level for b in self.blocks]
        for i in range(len(levels)):
            for j in range(i + 1, len(levels)):
                if math.gcd(levels[i], levels[j]) != 1:
                    raise ValueError("block levels must be pairwise coprime")
        for ca, cb in self.relations:
            if len(ca.domain()) != len(cb.domain()):
                raise ValueError("glued characters must share a target size")

    @property
    def level(self) -> int:
        return math.prod(b.level for b in self.blocks)

    def _block_chars(self, i: int) -> list:
        out = []
        for r, (ca, cb) in enumerate(self.relations):
            if ca.block_index == i:
                out.append((r, ca))
            if cb.block_index == i:
                out.append((r, cb))
        return out

    def _tables(self, preds, budget: int) -> list:
        """Per block: dict mapping tuples of incident relation values to counts."""
        tables = []
        for i, blk in enumerate(self.blocks):
            chars = self._block_chars(i)
            table = {}
            m = blk.level
            for A in blk.elements(budget):
                if preds[i] is not None and not preds[i](A, m):
                    continue
                key = tuple(c.value(A, m) for _, c in chars)
                table[key] = table.get(key, 0) + 1
            tables.append((chars, table))
        return tables

    def _glued_count(self, preds, budget: int) -> int:
        tables = self._tables(preds, budget)
        domains = [rel[0].domain() for rel in self.relations]
        total = 0
        for assignment in product(*domains) if domains else [()]:
            prod_count = 1
            for chars, table in tables:
                key = tuple(assignment[r] for r, _ in chars)
                prod_count *= table.get(key, 0)
                if prod_count == 0:
                    break
            total += prod_count
        return total

    def cardinality(self, budget: int = DEFAULT_BUDGET) -> int:
        return self._glued_count([None] * len(self.blocks), budget)


@dataclass(frozen=True)
class DensityResult:
    """An exact density hit_count / group_order, reduced to lowest terms."""

    numerator: int
    denominator: int
    group_order: int
    hit_count: int

    @classmethod
    def of(cls, hits: int, order: int) -> "DensityResult":
        f = Fraction(hits, order)
        return cls(f.numerator, f.denominator, order, hits)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator


def _local_modulus(m: int, level: int) -> int:
    """Part of m supported on the primes of a block level.

    Valid because m divides the product of the pairwise-coprime block
    levels, so the local part of m at this block's primes divides level.
    """
    return math.gcd(m, level)


def delta(spec: GroupSpec, t: int, m: int | None = None, budget: int = DEFAULT_BUDGET) -> DensityResult:
    """Exact density of elements A with det(I - A) in t * (Z/m)^x.

    m defaults to the full spec level; it must divide the spec level.
    The condition factors over blocks (the set t*(Z/m)^x is a product of
    its local pieces), so the count is a character-class convolution.
    """
    if m is None:
        m = spec.level
    if spec.level % m != 0:
        raise ValueError("m must divide the spec level")
    preds = []
    for blk in spec.blocks:
        mb = _local_modulus(m, blk.level)
        if mb == 1:
            preds.append(None)
        else:
            preds.append(lambda A, lvl, mb=mb: psi_member(A, mb, t))
    hits = spec._glued_count(preds, budget)
    return DensityResult.of(hits, spec.cardinality(budget))


def theta(spec: GroupSpec, m: int, budget: int = DEFAULT_BUDGET) -> DensityResult:
    """Exact density of elements with det(I - A) = 0 mod m (m | spec level)."""
    if spec.level % m != 0:
        raise ValueError("m must divide the spec level")
    preds = []
    for blk in spec.blocks:
        mb = _local_modulus(m, blk.level)
        if mb == 1:
            preds.append(None)
        else:
            preds.append(lambda A, lvl, mb=mb: _det_i_minus(A, mb) % mb == 0)
    hits = spec._glued_count(preds, budget)
    return DensityResult.of(hits, spec.cardinality(budget))


def eigenvalue_count(ell: int, a: int) -> int:
    """Matrices in GL_2(F_ell) with eigenvalues exactly 1 and a (a a unit)."""
    if a % ell == 0:
        raise ValueError("a must be a unit mod ell")
    return ell * ell if a % ell == 1 else ell * ell + ell


def y_counts(ell: int) -> tuple:
    """(|Y+|, |Y-|): unit-det(I-A) matrices split by quadratic class of det."""
    base = ell * (ell - 1) ** 2 * (ell + 1) // 2 - (ell - 1) * (ell * ell + ell) // 2
    return (base + ell, base)


def y_ratio_sum(ell: int) -> Fraction:
    yp, ym = y_counts(ell)
    return Fraction(yp + ym) / (gl2_order(ell) * Fraction(ell - 1, ell))


def y_ratio_diff(ell: int) -> Fraction:
    yp, ym = y_counts(ell)
    return Fraction(yp - ym) / (gl2_order(ell) * Fraction(ell - 1, ell))


# ---------------------------------------------------------------------------
# CM unit groups over Z[i] at 2-power level
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CMUnitGroupSpec:
    """The filtered unit group (1 + pp^3) / (1 + pp^(2k)) in Z[i] at level 2^k,
    pp = (1 + i).  Element count is 2^(2k - 3)."""

    k: int
    filtration_depth: int = 3

    def elements(self):
        """Gaussian integers a = x + yi mod 2^k with a - 1 in pp^3."""
        m = 1 << self.k
        out = []
        for u in range(m // 2):  # x = 1 + 2u
            for v in range(m // 2):  # y = 2v
                if (u + v) % 2 == 0:
                    out.append(((1 + 2 * u) % m, (2 * v) % m))
        return out


def cm_delta(spec: CMUnitGroupSpec, t: int) -> DensityResult:
    """Exact proportion of a with norm(1 - a) in t * (Z/2^k)^x."""
    m = 1 << spec.k
    elems = spec.elements()
    if t % m == 0:
        return DensityResult.of(0, len(elems))
    g = math.gcd(t % m, m)
    hits = 0
    for (x, y) in elems:
        nrm = ((1 - x) * (1 - x) + y * y) % m
        if math.gcd(nrm, m) == g:
            hits += 1
    return DensityResult.of(hits, len(elems))


# ---------------------------------------------------------------------------
# Built-in specifications
# ---------------------------------------------------------------------------

# Generators of the (unique up to conjugacy) order-96 subgroup of GL_2(F_5)
# whose image in PGL_2 is S_4; verified to give density 77/96.
_ORDER96_GENS = ((0, 1, 1, 2), (0, 1, 2, 0))


def serre_spec(D: int) -> GroupSpec:
    """Level-2d glued spec for a curve with maximal image and discriminant field D."""
    if D % 4 == 0:
        return GroupSpec([LocalBlock(2, ("full",))], [])
    if D % 4 != 1:
        raise ValueError("D must be a fundamental discriminant")
    d = abs(D)
    return GroupSpec(
        [LocalBlock(2, ("full",)), LocalBlock(d, ("full",))],
        [(GlueChar(0, "sign2"), GlueChar(1, "detjac", d))],
    )


def jones_spec() -> GroupSpec:
    """Glued level-180 spec for y^2 = x^3 + 9x + 18 (blocks at 4, 9, 5)."""
    return GroupSpec(
        [
            LocalBlock(4, ("predicate", "sign_eq_det_char", 0)),
            LocalBlock(9, ("predicate", "lower_left_divisible", 3)),
            LocalBlock(5, ("generators", _ORDER96_GENS)),
        ],
        [(GlueChar(0, "sign2"), GlueChar(1, "beta3"))],
    )


def x0_11_spec() -> GroupSpec:
    """Glued level-550 spec for X_0(11) (blocks at 2, 25, 11)."""
    return GroupSpec(
        [
            LocalBlock(2, ("full",)),
            LocalBlock(25, ("predicate", "unipotent_shape", 5)),
            LocalBlock(11, ("full",)),
        ],
        [
            (GlueChar(1, "upper_a_5"), GlueChar(2, "detclass_11")),
            (GlueChar(2, "detjac", 11), GlueChar(0, "sign2")),
        ],
    )


def full_gl2_spec(m: int) -> GroupSpec:
    return GroupSpec([LocalBlock(m, ("full",))], [])


def builtin_spec(name: str) -> GroupSpec:
    """Look up a built-in spec: serre(D), jones_x3_9x_18, x0_11, full_gl2(m)."""
    name = name.strip()
    if name == "jones_x3_9x_18":
        return jones_spec()
    if name == "x0_11":
        return x0_11_spec()
    for prefix, fn in (("serre", serre_spec), ("full_gl2", full_gl2_spec)):
        if name.startswith(prefix + "(") and name.endswith(")"):
            return fn(int(name[len(prefix) + 1 : -1]))
    raise UnknownSpec(name)


# Prop-2.5 style splitting levels M for the built-in specs.
def builtin_m(name: str) -> int:
    name = name.strip()
    if name == "jones_x3_9x_18":
        return 30
    if name == "x0_11":
        return 2 * 5 * 11
    if name.startswith("serre("):
        D = int(name[6:-1])
        return 2 if D % 4 == 0 else 2 * abs(D)
    if name.startswith("full_gl2("):
        return int(name[9:-1])
    raise UnknownSpec(name)


# ---------------------------------------------------------------------------
# Serialization (bit-exact round trip)
# ---------------------------------------------------------------------------


def spec_to_text(spec: GroupSpec) -> str:
    doc = {
        "blocks": [
            {
                "level": b.level,
                "kind": b.membership[0],
                "params": [
                    list(g) if isinstance(g, tuple) else g
                    for g in (
                        b.membership[1] if b.membership[0] == "generators" else b.membership[1:]
                    )
                ],
            }
            for b in spec.blocks
        ],
        "relations": [
            [[c.block_index, c.name, c.param] for c in rel] for rel in spec.relations
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def spec_from_text(text: str) -> GroupSpec:
    doc = json.loads(text)
    blocks = []
    for b in doc["blocks"]:
        kind = b["kind"]
        if kind == "generators":
            membership = (kind, tuple(tuple(g) for g in b["params"]))
        else:
            membership = (kind, *b["params"])
        blocks.append(LocalBlock(b["level"], membership))
    relations = [
        tuple(GlueChar(c[0], c[1], c[2]) for c in rel) for rel in doc["relations"]
    ]
    return GroupSpec(blocks, relations)
