"""Finite metric spaces with exact rational distances.

Spaces are validated on construction: zero diagonal, symmetry, strict
positivity off the diagonal, and every triangle inequality, all checked
exactly.  The module also generates the five one-parameter point
families (tags ``a`` .. ``e``) whose truncations exercise the
nested-matching and sign-pattern machinery elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import ParseError, data_lines, format_rational, parse_rational

FAMILY_TAGS = ("a", "b", "c", "d", "e")


class NotAMetricError(ValueError):
    """A metric axiom fails; carries the axiom name and witness indices."""

    def __init__(self, axiom: str, witness: tuple[int, ...], detail: str = ""):
        message = f"{axiom} violated at {witness}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class FiniteMetricSpace:
    """n points with a symmetric, fully validated rational distance matrix."""

    dist: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        d = self.dist
        n = len(d)
        for row in d:
            if len(row) != n:
                raise ValueError("distance matrix must be square")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length must match the point count")
        for u in range(n):
            if d[u][u] != 0:
                raise NotAMetricError("zero diagonal", (u,), f"d={d[u][u]}")
        for u in range(n):
            for v in range(u + 1, n):
                if d[u][v] != d[v][u]:
                    raise NotAMetricError("symmetry", (u, v))
                if d[u][v] <= 0:
                    raise NotAMetricError("positivity", (u, v), f"d={d[u][v]}")
        for u in range(n):
            du = d[u]
            for w in range(u + 1, n):
                duw = du[w]
                for v in range(n):
                    if v != u and v != w and duw > du[v] + d[v][w]:
                        raise NotAMetricError(
                            "triangle",
                            (u, v, w),
                            f"{duw} > {du[v]} + {d[v][w]}",
                        )

    @classmethod
    def from_matrix(
        cls, rows: Iterable[Iterable], labels: Iterable[str] | None = None
    ) -> "FiniteMetricSpace":
        dist = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return cls(dist, None if labels is None else tuple(labels))

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, u: int, v: int) -> Fraction:
        return self.dist[u][v]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else f"p{v}"


def parse_metric(text: str) -> FiniteMetricSpace:
    """Read the plain metric format: point count, then the strict upper triangle.

    Tokens may be split across lines arbitrarily; ``#`` starts a comment.
    Raises ``ParseError`` for shape/token problems and ``NotAMetricError``
    when the numbers fail an axiom.
    """
    tokens: list[str] = []
    for _, line in data_lines(text):
        tokens.extend(line.split())
    if not tokens:
        raise ParseError("empty metric description")
    head = tokens[0]
    if not head.isdigit() or int(head) < 1:
        raise ParseError(f"point count must be a positive integer, got {head!r}")
    n = int(head)
    body = tokens[1:]
    need = n * (n - 1) // 2
    if len(body) != need:
        raise ParseError(f"expected {need} distances for n={n}, got {len(body)}")
    d = [[Fraction(0)] * n for _ in range(n)]
    it = iter(body)
    for u in range(n):
        for v in range(u + 1, n):
            q = parse_rational(next(it))
            d[u][v] = d[v][u] = q
    return FiniteMetricSpace(tuple(tuple(row) for row in d))


def serialize_metric(space: FiniteMetricSpace) -> str:
    """Write the format read by :func:`parse_metric` (labels are not stored)."""
    lines = [str(space.n)]
    for u in range(space.n - 1):
        lines.append(
            " ".join(format_rational(space.dist[u][v]) for v in range(u + 1, space.n))
        )
    return "\n".join(lines) + "\n"


def family_distance(tag: str, k: int, m: int) -> Fraction:
    """Distance between points v_k and v_m (1-based, k != m) of family ``tag``."""
    if tag not in FAMILY_TAGS:
        raise ValueError(f"unknown family {tag!r}, expected one of {FAMILY_TAGS}")
    if k < 1 or m < 1 or k == m:
        raise ValueError("family indices must be distinct and >= 1")
    if k > m:
        k, m = m, k
    if tag == "a":
        return Fraction(k + m) - Fraction(1, k)
    if tag == "b":
        return 2 - Fraction(1, k) + Fraction(1, m)
    if tag == "c":
        return 2 - Fraction(1, k) - Fraction(1, 2 * m)
    if tag == "d":
        return 1 + Fraction(1, m)
    return 1 + Fraction(1, 2 * k) + Fraction(1, m)


def family_metric(tag: str, n: int) -> FiniteMetricSpace:
    """The first ``n`` points of family ``tag``, labelled ``v1`` .. ``vn``."""
    if n < 2:
        raise ValueError("family truncations need n >= 2")
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q = family_distance(tag, i + 1, j + 1)
            d[i][j] = d[j][i] = q
    labels = tuple(f"v{i + 1}" for i in range(n))
    return FiniteMetricSpace(tuple(tuple(row) for row in d), labels)


def induced_subspace(
    space: FiniteMetricSpace, indices: Sequence[int]
) -> FiniteMetricSpace:
    """Restriction of the metric to ``indices``, order preserved."""
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate index in subspace selection")
    for i in idx:
        if not 0 <= i < space.n:
            raise IndexError(f"point index {i} out of range for n={space.n}")
    d = tuple(tuple(space.dist[u][v] for v in idx) for u in idx)
    labels = None if space.labels is None else tuple(space.labels[i] for i in idx)
    return FiniteMetricSpace(d, labels)


def extremes(space: FiniteMetricSpace) -> tuple[Fraction, Fraction]:
    """``(smallest distance, diameter)`` over distinct point pairs."""
    if space.n < 2:
        raise ValueError("extremes need at least two points")
    values = [
        space.dist[u][v] for u in range(space.n) for v in range(u + 1, space.n)
    ]
    return min(values), max(values)
