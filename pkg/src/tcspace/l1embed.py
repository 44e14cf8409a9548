"""Sign-pattern isometry checks and refutations on the benchmark families.

A pair sequence with positive coefficients spans an isometric copy of
l1 exactly when every signed combination of the normalized pair
differences attains the full triangle-inequality budget in the
transportation cost norm.  The checks here sweep all sign patterns
exactly, verify the strict quadruple inequality that powers the
families' refutations, and refute prescribed pair sequences through the
nested-matching criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matching import Matching, NestedCheckResult, PairSequence, nested_matching_check
from .metric import FiniteMetricSpace, family_metric
from .transport import TransportationProblem, tc_norm

_ZERO = Fraction(0)

SIGN_SWEEP_PAIR_LIMIT = 12


@dataclass(frozen=True)
class SignPatternReport:
    """Outcome of the all-sign-patterns isometry sweep.

    On failure ``pattern`` is the first violating sign vector in
    lexicographic order (+1 before -1) and ``achieved`` the strictly
    smaller norm that was found; ``expected`` is always the coefficient
    total.
    """

    passed: bool
    patterns_checked: int
    expected: Fraction
    pattern: tuple[int, ...] | None = None
    achieved: Fraction | None = None


def sign_pattern_isometry_check(
    space: FiniteMetricSpace,
    pairs: PairSequence,
    coefficients: Sequence[Fraction] | None = None,
) -> SignPatternReport:
    """Do the normalized pair differences span l1 isometrically?

    For each sign vector the combination of pair differences (each
    scaled to norm one, then by its positive coefficient) must have
    transportation cost equal to the coefficient total; any strict drop
    refutes the isometry and is reported.
    """
    k = len(pairs)
    if k == 0:
        raise ValueError("need at least one pair")
    if k > SIGN_SWEEP_PAIR_LIMIT:
        raise ValueError(f"too many pairs for the sign sweep (limit {SIGN_SWEEP_PAIR_LIMIT})")
    for x, y in pairs.pairs:
        for p in (x, y):
            if not 0 <= p < space.n:
                raise IndexError(f"pair endpoint {p} out of range for n={space.n}")
    if coefficients is None:
        coeffs = tuple(Fraction(1) for _ in range(k))
    else:
        coeffs = tuple(Fraction(a) for a in coefficients)
        if len(coeffs) != k:
            raise ValueError("coefficient count must match pair count")
        if any(a <= 0 for a in coeffs):
            raise ValueError("coefficients must be strictly positive")
    masses = [
        coeffs[i] / space.dist[x][y] for i, (x, y) in enumerate(pairs.pairs)
    ]
    expected = sum(coeffs, _ZERO)
    checked = 0
    for eps in itertools.product((1, -1), repeat=k):
        values: dict[int, Fraction] = {}
        for (x, y), s, m in zip(pairs.pairs, eps, masses):
            signed = m if s > 0 else -m
            values[x] = values.get(x, _ZERO) + signed
            values[y] = values.get(y, _ZERO) - signed
        norm, _ = tc_norm(space, TransportationProblem.from_values(values))
        checked += 1
        if norm != expected:
            return SignPatternReport(False, checked, expected, eps, norm)
    return SignPatternReport(True, checked, expected)


@dataclass(frozen=True)
class QuadrupleReport:
    """Outcome of the strict quadruple-inequality sweep over a family."""

    passed: bool
    family: str
    max_index: int
    quadruples_checked: int
    violations: tuple[tuple[int, int, int, int], ...] = ()


def quadruple_inequality_check(family_tag: str, max_index: int) -> QuadrupleReport:
    """Check d(q1,q3) + d(q2,q4) < d(q1,q2) + d(q3,q4), strictly, everywhere.

    Quadruples q1 < q2 < q3 < q4 range over the 1-based family indices
    up to ``max_index``; any non-strict case is collected as a violation.
    """
    if max_index < 4:
        raise ValueError("quadruple sweep needs max_index >= 4")
    space = family_metric(family_tag, max_index)
    d = space.dist
    violations = []
    count = 0
    for q1, q2, q3, q4 in itertools.combinations(range(1, max_index + 1), 4):
        count += 1
        lhs = d[q1 - 1][q3 - 1] + d[q2 - 1][q4 - 1]
        rhs = d[q1 - 1][q2 - 1] + d[q3 - 1][q4 - 1]
        if not lhs < rhs:
            violations.append((q1, q2, q3, q4))
    return QuadrupleReport(
        not violations, family_tag, max_index, count, tuple(violations)
    )


@dataclass(frozen=True)
class RefutationResult:
    """Nested-matching verdict on a prescribed family pair sequence.

    ``refuted`` means some prefix of the sequence is beaten strictly by
    another matching (carried as ``witness``, 0-based indices into the
    truncated family space).  Otherwise the finite check is inconclusive
    at the examined ``depth``.
    """

    refuted: bool
    family: str
    depth: int
    prescribed_weight: Fraction | None = None
    witness: Matching | None = None


def refute_pair_sequence(family_tag: str, pairs: PairSequence) -> RefutationResult:
    """Run the nested-matching check on a pair sequence of family points.

    Pair entries are the 1-based family indices v1, v2, ...; the check
    runs on the family truncated at the largest index used.  A sequence
    can be refuted (FAIL at some prefix) but never validated: passing
    all prefixes only says the finite evidence is inconclusive.
    """
    if not pairs.pairs:
        raise ValueError("need at least one pair")
    low = min(p for pair in pairs.pairs for p in pair)
    if low < 1:
        raise ValueError("family indices are 1-based")
    top = max(p for pair in pairs.pairs for p in pair)
    space = family_metric(family_tag, max(top, 2))
    shifted = PairSequence(tuple((x - 1, y - 1) for x, y in pairs.pairs))
    res: NestedCheckResult = nested_matching_check(space, shifted)
    if res.passed:
        return RefutationResult(False, family_tag, res.depth)
    return RefutationResult(
        True, family_tag, res.depth, res.prescribed_weight, res.witness
    )
