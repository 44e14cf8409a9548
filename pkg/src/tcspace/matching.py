"""Minimum-weight perfect matchings and the nested-matching criterion.

The production matcher is a bitmask subset DP; a factorial enumeration
of all matchings is kept alongside it as an oracle.  The nested check
asks, prefix by prefix, whether a prescribed pairing of points is a
minimum-weight perfect matching of the subspace it spans; ties count as
passing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .metric import FiniteMetricSpace

_ZERO = Fraction(0)

DP_VERTEX_LIMIT = 20
BRUTE_FORCE_VERTEX_LIMIT = 10


@dataclass(frozen=True)
class PairSequence:
    """An ordered list of point pairs with all endpoints distinct."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cleaned = tuple((int(x), int(y)) for x, y in self.pairs)
        flat = [p for pair in cleaned for p in pair]
        if len(set(flat)) != len(flat):
            raise ValueError("pair endpoints must all be distinct")
        object.__setattr__(self, "pairs", cleaned)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Matching:
    """Pairwise disjoint edges ``(u, v)`` with u < v, plus the total weight."""

    edges: tuple[tuple[int, int], ...]
    weight: Fraction

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.edges:
            if u >= v:
                raise ValueError(f"edge ({u}, {v}) must be ordered u < v")
            if u in seen or v in seen:
                raise ValueError("matching edges must be pairwise disjoint")
            seen.add(u)
            seen.add(v)
        object.__setattr__(self, "weight", Fraction(self.weight))


def _checked_vertices(
    space: FiniteMetricSpace, vertices: Iterable[int], limit: int
) -> list[int]:
    vs = [int(v) for v in vertices]
    if not vs or len(vs) % 2:
        raise ValueError("vertex set must be nonempty and of even size")
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertex in matching input")
    for v in vs:
        if not 0 <= v < space.n:
            raise IndexError(f"vertex {v} out of range for n={space.n}")
    if len(vs) > limit:
        raise ValueError(f"vertex set too large (limit {limit})")
    return sorted(vs)


def min_weight_perfect_matching(
    space: FiniteMetricSpace, vertices: Iterable[int]
) -> Matching:
    """Exact minimum-weight perfect matching of ``vertices`` (subset DP).

    Weight ties are resolved to the lexicographically smallest edge
    list, so the result is deterministic.  Capped at
    ``DP_VERTEX_LIMIT`` vertices.
    """
    vs = _checked_vertices(space, vertices, DP_VERTEX_LIMIT)
    d = space.dist
    memo: dict[int, Fraction] = {0: _ZERO}

    def best(mask: int) -> Fraction:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        best_w = None
        sub = rest
        while sub:
            j = (sub & -sub).bit_length() - 1
            sub ^= 1 << j
            w = d[vs[low]][vs[j]] + best(rest ^ (1 << j))
            if best_w is None or w < best_w:
                best_w = w
        memo[mask] = best_w
        return best_w

    full = (1 << len(vs)) - 1
    total = best(full)

    edges: list[tuple[int, int]] = []
    mask = full
    while mask:
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        sub = rest
        while sub:
            j = (sub & -sub).bit_length() - 1
            sub ^= 1 << j
            if d[vs[low]][vs[j]] + memo[rest ^ (1 << j)] == memo[mask]:
                edges.append((vs[low], vs[j]))
                mask = rest ^ (1 << j)
                break
    return Matching(tuple(edges), total)


def matching_brute_force(
    space: FiniteMetricSpace, vertices: Iterable[int]
) -> Matching:
    """Oracle matcher: enumerate all (|S|-1)!! perfect matchings."""
    vs = _checked_vertices(space, vertices, BRUTE_FORCE_VERTEX_LIMIT)
    d = space.dist
    best_w: Fraction | None = None
    best_e: tuple[tuple[int, int], ...] = ()

    def rec(pool: tuple[int, ...], acc_w: Fraction, acc_e: list[tuple[int, int]]):
        nonlocal best_w, best_e
        if not pool:
            if best_w is None or acc_w < best_w:
                best_w = acc_w
                best_e = tuple(acc_e)
            return
        x = pool[0]
        for t in range(1, len(pool)):
            y = pool[t]
            acc_e.append((x, y))
            rec(pool[1:t] + pool[t + 1 :], acc_w + d[x][y], acc_e)
            acc_e.pop()

    rec(tuple(vs), _ZERO, [])
    return Matching(best_e, best_w)


@dataclass(frozen=True)
class NestedCheckResult:
    """Outcome of the prefix-by-prefix matching check.

    ``passed`` with ``depth`` = number of prefixes verified, or a failure
    at prefix ``depth`` with the prescribed weight and a strictly lighter
    witness matching.
    """

    passed: bool
    depth: int
    prescribed_weight: Fraction | None = None
    witness: Matching | None = None


def prescribed_prefix_weight(
    space: FiniteMetricSpace, pairs: PairSequence, upto: int
) -> Fraction:
    """Total weight of the first ``upto`` prescribed pairs."""
    return sum((space.dist[x][y] for x, y in pairs.pairs[:upto]), _ZERO)


def nested_matching_check(
    space: FiniteMetricSpace, pairs: PairSequence
) -> NestedCheckResult:
    """Is every prefix of ``pairs`` a minimum-weight perfect matching?

    Prefixes are scanned in order; equality of weights is accepted.  On
    failure the result carries the smallest failing prefix together with
    a strictly lighter matching of the same vertex set.
    """
    if not pairs.pairs:
        raise ValueError("need at least one pair")
    for x, y in pairs.pairs:
        for p in (x, y):
            if not 0 <= p < space.n:
                raise IndexError(f"pair endpoint {p} out of range for n={space.n}")
    if 2 * len(pairs.pairs) > DP_VERTEX_LIMIT:
        raise ValueError(f"pair sequence too long (limit {DP_VERTEX_LIMIT // 2})")
    for k in range(1, len(pairs.pairs) + 1):
        span = [p for pair in pairs.pairs[:k] for p in pair]
        prescribed = prescribed_prefix_weight(space, pairs, k)
        optimum = min_weight_perfect_matching(space, span)
        if optimum.weight < prescribed:
            return NestedCheckResult(False, k, prescribed, optimum)
    return NestedCheckResult(True, len(pairs.pairs))
