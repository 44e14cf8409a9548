#!/usr/bin/env python3
"""Survey the five point families.

For each family the script sweeps every strict quadruple inequality up
to --max, then runs the prefix-minimality check on two canonical pair
sequences: consecutive pairs (v1,v2), (v3,v4), ... and crossed pairs
(v1,v3), (v2,v4).  The quadruple inequality makes the consecutive
pairing lose to the crossing at depth 2 in every family, while the
crossed pairing survives (ties count in its favor), so the report shows
one refutation and one inconclusive verdict per family.
"""

import argparse
import sys

from tcspace import (
    FAMILY_TAGS,
    PairSequence,
    format_rational,
    quadruple_inequality_check,
    refute_pair_sequence,
)


def consecutive_pairs(depth: int) -> PairSequence:
    return PairSequence(tuple((2 * i + 1, 2 * i + 2) for i in range(depth)))


def crossed_pairs() -> PairSequence:
    return PairSequence(((1, 3), (2, 4)))


def describe(result) -> str:
    if result.refuted:
        return (
            f"refuted at prefix {result.depth}: prescribed "
            f"{format_rational(result.prescribed_weight)}, a matching of weight "
            f"{format_rational(result.witness.weight)} is lighter"
        )
    return f"inconclusive after {result.depth} prefixes"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max", type=int, default=20, help="largest family index")
    parser.add_argument(
        "--depth", type=int, default=3, help="consecutive pairs to prescribe"
    )
    args = parser.parse_args()
    if args.max < 4 or args.depth < 1 or 2 * args.depth > args.max:
        parser.error("need --max >= 4 and 1 <= --depth <= --max/2")

    failures = 0
    for tag in FAMILY_TAGS:
        sweep = quadruple_inequality_check(tag, args.max)
        verdict = "PASS" if sweep.passed else f"FAIL ({len(sweep.violations)})"
        if not sweep.passed:
            failures += 1
        print(f"family {tag}: {sweep.quadruples_checked} quadruples {verdict}")
        consecutive = refute_pair_sequence(tag, consecutive_pairs(args.depth))
        print(f"  consecutive pairs: {describe(consecutive)}")
        crossed = refute_pair_sequence(tag, crossed_pairs())
        print(f"  crossed pairs:     {describe(crossed)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
