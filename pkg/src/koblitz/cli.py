"""Command-line interface.

Subcommands: count (prime counting experiments), constant (assemble a
conjectural constant), euler (Euler products), te (empirical t_E),
delta and theta (exact densities from a group spec).  Exit codes:
0 success, 2 configuration error, 3 group-enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import constants, galois, harness
from .curve import CurveQ
from .numtheory import KroneckerChar


def _parse_curve(text: str) -> CurveQ:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise harness.ConfigError("curve must look like [a1,a2,a3,a4,a6] or [A,B]")
    try:
        coeffs = [int(v) for v in text[1:-1].split(",")]
        return CurveQ.from_coeffs(coeffs)
    except ValueError as exc:
        raise harness.ConfigError("bad curve %r: %s" % (text, exc)) from exc


def _spec_for(name: str) -> galois.GroupSpec:
    return galois.builtin_spec(name)


def _cmd_count(args) -> int:
    if args.config:
        config = harness.ExperimentConfig.from_file(args.config)
    else:
        if args.curve is None or args.x is None:
            raise harness.ConfigError("count needs --curve and --x (or --config)")
        checkpoints = (
            [int(v) for v in args.checkpoints.split(",")] if args.checkpoints else [args.x]
        )
        residue_filter = None
        if args.filter_mod is not None:
            if not args.filter_residues:
                raise harness.ConfigError("--filter-mod needs --filter-residues")
            residues = tuple(int(v) for v in args.filter_residues.split(","))
            residue_filter = (args.filter_mod, residues)
        config = harness.ExperimentConfig(
            curve=_parse_curve(args.curve),
            t=args.t,
            x_max=args.x,
            checkpoints=checkpoints,
            residue_filter=residue_filter,
            spec_name=args.spec,
            seed=args.seed,
            shards=args.shards,
        )
    table = harness.run_count(config)
    text = harness.emit(table, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def _cmd_constant(args) -> int:
    if args.serre_disc is not None:
        c = constants.serre_closed_form(args.serre_disc, args.euler_limit)
    elif args.cm_gaussian:
        c = constants.builtin_constant("cm_gaussian", args.t, args.euler_limit)
    elif args.spec is not None:
        c = constants.builtin_constant(args.spec, args.t, args.euler_limit)
    else:
        raise harness.ConfigError("constant needs --spec, --serre-disc, or --cm-gaussian")
    sys.stdout.write(c.to_text())
    return 0


def _cmd_euler(args) -> int:
    if args.char == "universal":
        value, tail = constants.universal_euler(args.limit)
    elif args.char == "gaussian":
        value, tail = constants.cm_euler(KroneckerChar(-4), args.limit)
    else:
        raise harness.ConfigError("unknown character %r" % args.char)
    sys.stdout.write("value = %.17g\ntail_bound = %.6g\n" % (value, tail))
    return 0


def _cmd_te(args) -> int:
    result = harness.estimate_te(_parse_curve(args.curve), args.bound)
    sys.stdout.write(
        "t_E = %d\nprimes_used = %d\nexcluded = %s\nstable = %s\n"
        % (result.t_E, result.primes_used, result.excluded, result.stable)
    )
    return 0


def _cmd_delta(args) -> int:
    spec = _spec_for(args.spec)
    result = galois.delta(spec, args.t, m=args.level)
    sys.stdout.write(
        "delta = %s\nhits = %d\ngroup_order = %d\n"
        % (result.fraction, result.hit_count, result.group_order)
    )
    return 0


def _cmd_theta(args) -> int:
    spec = _spec_for(args.spec)
    result = galois.theta(spec, args.m)
    sys.stdout.write(
        "theta = %s\nhits = %d\ngroup_order = %d\n"
        % (result.fraction, result.hit_count, result.group_order)
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koblitz", description="Prime counts |E(F_p)|/t and their conjectural constants."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count primes p <= x with |E(F_p)|/t prime")
    p.add_argument("--curve", help='"[a1,a2,a3,a4,a6]" or "[A,B]"')
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--x", type=int)
    p.add_argument("--checkpoints", help="comma-separated x values")
    p.add_argument("--filter-mod", type=int)
    p.add_argument("--filter-residues", help="comma-separated residues")
    p.add_argument("--spec", help="built-in group spec for the expected column")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--config", help="JSON config file instead of flags")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("constant", help="assemble a conjectural constant")
    p.add_argument("--spec")
    p.add_argument("--serre-disc", type=int)
    p.add_argument("--cm-gaussian", action="store_true")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--euler-limit", type=int, default=10**7)
    p.set_defaults(fn=_cmd_constant)

    p = sub.add_parser("euler", help="evaluate an Euler product")
    p.add_argument("--limit", type=int, default=10**7)
    p.add_argument("--char", choices=("universal", "gaussian"), default="universal")
    p.set_defaults(fn=_cmd_euler)

    p = sub.add_parser("te", help="empirical t_E from point-count gcds")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=int, default=1000)
    p.set_defaults(fn=_cmd_te)

    p = sub.add_parser("delta", help="exact density delta_{E,t}(m)")
    p.add_argument("--spec", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--level", type=int, default=None)
    p.set_defaults(fn=_cmd_delta)

    p = sub.add_parser("theta", help="exact divisibility density theta_m")
    p.add_argument("--spec", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=_cmd_theta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except galois.BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 3
    except (
        harness.ConfigError,
        galois.UnknownSpec,
        constants.DomainError,
        constants.InvalidDiscriminant,
        ValueError,
    ) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
