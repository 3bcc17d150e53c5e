"""Actual-versus-expected prime counting tables.

Streams every good prime up to x for one of the four worked experiments,
counts those whose quotient |E(F_p)|/t is prime, and sets the count
against the conjectural expectation.  The published rows use x up to
4*10^7; the default here is smaller so the demo finishes quickly.
"""

import argparse

from koblitz.curve import CURVES
from koblitz.harness import ExperimentConfig, emit, run_count

EXPERIMENTS = {
    "table1": ("serre_6_m2", 1, None, "serre(-3)"),
    "table2": ("jones_9_18", 2, None, "jones_x3_9x_18"),
    "table3": ("cm_gaussian", 8, (4, (1,)), "cm_gaussian"),
    "table4": ("x0_11", 5, None, "x0_11"),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--experiment", choices=sorted(EXPERIMENTS), default="table4")
    parser.add_argument("--x", type=int, default=10**6)
    parser.add_argument("--checkpoints", type=int, default=4)
    parser.add_argument("--shards", type=int, default=4)
    args = parser.parse_args()

    name, t, residue_filter, spec_name = EXPERIMENTS[args.experiment]
    checkpoints = [args.x * (i + 1) // args.checkpoints for i in range(args.checkpoints)]
    config = ExperimentConfig(
        curve=CURVES[name],
        t=t,
        x_max=args.x,
        checkpoints=checkpoints,
        residue_filter=residue_filter,
        spec_name=spec_name,
        shards=args.shards,
    )
    table = run_count(config)
    print("%s: curve %s, t = %d" % (args.experiment, CURVES[name].coeffs(), t))
    if residue_filter:
        print("filter: p = %s mod %d" % (list(residue_filter[1]), residue_filter[0]))
    print(emit(table, "text"), end="")


if __name__ == "__main__":
    main()
