#!/usr/bin/env python3
"""Randomized agreement sweep over the independent norm routes.

Each instance draws a metric space and a zero-sum problem, then compares
the min-cost-flow norm against the Lipschitz dual value, the quotient
norm of a lifted optimal plan, and (within the support cap) the plain
transportation LP.  Any disagreement is reported and the run exits
nonzero.  The sweep is fully determined by --seed.
"""

import argparse
import random
import sys

from tcspace import (
    dual_optimal,
    format_rational,
    lift_plan,
    quotient_norm,
    tc_brute_force,
    tc_norm,
)
from tcspace.sampling import random_metric_space, random_zero_sum_problem
from tcspace.transport import BRUTE_FORCE_SUPPORT_LIMIT


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20260816)
    parser.add_argument("--nmin", type=int, default=3)
    parser.add_argument("--nmax", type=int, default=6)
    parser.add_argument(
        "--verbose", action="store_true", help="print one line per instance"
    )
    args = parser.parse_args()
    if not 2 <= args.nmin <= args.nmax:
        parser.error("need 2 <= --nmin <= --nmax")

    rng = random.Random(args.seed)
    mismatches = 0
    for t in range(args.count):
        n = rng.randrange(args.nmin, args.nmax + 1)
        space = random_metric_space(rng, n)
        f = random_zero_sum_problem(rng, space, n)
        norm, plan = tc_norm(space, f)
        routes = {"flow": norm}
        routes["dual"] = dual_optimal(space, f)[1]
        routes["quotient"] = quotient_norm(space, lift_plan(plan, n))[0]
        if len(f.entries) <= BRUTE_FORCE_SUPPORT_LIMIT:
            routes["lp"] = tc_brute_force(space, f)
        agree = len(set(routes.values())) == 1
        if not agree:
            mismatches += 1
            detail = ", ".join(
                f"{name}={format_rational(value)}" for name, value in routes.items()
            )
            print(f"instance {t}: MISMATCH ({detail})")
        elif args.verbose:
            print(
                f"instance {t}: n={n} support={len(f.entries)} "
                f"norm={format_rational(norm)} ok"
            )
    if mismatches:
        print(f"{mismatches} of {args.count} instances disagree")
        return 1
    print(f"all {args.count} instances agree across routes (seed {args.seed})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
