"""Counting primes p with |E(F_p)|/t prime, and the constants that predict them.

Submodules: ``numtheory`` (primes, characters), ``curve`` (exact point
counts over F_p), ``galois`` (densities from mod-m Galois image data),
``constants`` (Euler products and constant assembly), ``harness``
(experiment runner) and ``cli``.
"""

from .constants import (
    KoblitzConstant,
    assemble_cm,
    assemble_noncm,
    builtin_constant,
    cm_euler,
    counting_integral,
    expected_count,
    serre_closed_form,
    universal_euler,
)
from .curve import CURVES, BadReduction, CurveQ, a_p, point_count, reduce_mod
from .galois import (
    CMUnitGroupSpec,
    DensityResult,
    GroupSpec,
    LocalBlock,
    builtin_spec,
    cm_delta,
    delta,
    theta,
)
from .harness import (
    CountTable,
    ExperimentConfig,
    TEResult,
    emit,
    estimate_te,
    run_count,
    run_counts_multi,
)
from .numtheory import KroneckerChar, PrimeIterator, is_prime, kronecker

__version__ = "1.0.0"

__all__ = [
    "KoblitzConstant",
    "assemble_cm",
    "assemble_noncm",
    "builtin_constant",
    "cm_euler",
    "counting_integral",
    "expected_count",
    "serre_closed_form",
    "universal_euler",
    "CURVES",
    "BadReduction",
    "CurveQ",
    "a_p",
    "point_count",
    "reduce_mod",
    "CMUnitGroupSpec",
    "DensityResult",
    "GroupSpec",
    "LocalBlock",
    "builtin_spec",
    "cm_delta",
    "delta",
    "theta",
    "CountTable",
    "ExperimentConfig",
    "TEResult",
    "emit",
    "estimate_te",
    "run_count",
    "run_counts_multi",
    "KroneckerChar",
    "PrimeIterator",
    "is_prime",
    "kronecker",
    "__version__",
]
