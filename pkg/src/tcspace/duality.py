"""Lipschitz duality: constants, the pairing, exact dual optima, gradients.

A point function h certifies a lower bound sum(h * f) <= lip(h) * tc(f)
on the transportation cost; an optimal h vanishing at the base point
attains equality.  The dual optimum is computed by its own LP over the
Lipschitz constraints so it stays independent of the flow and quotient
routes to the norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .metric import FiniteMetricSpace
from .quotient import EdgeVector
from .rationals import ParseError, data_lines, format_rational, parse_rational
from .solvers import LE, LinearProgram, simplex_solve
from .transport import TransportationProblem

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LipFunction:
    """A rational function on all points, stored as a dense value tuple."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]


def lip_constant(space: FiniteMetricSpace, h: LipFunction) -> Fraction:
    """Smallest L with |h(u) - h(v)| <= L * d(u, v) everywhere."""
    if len(h) != space.n:
        raise ValueError("function and space have different point counts")
    best = _ZERO
    for u in range(space.n):
        for v in range(u + 1, space.n):
            ratio = abs(h[u] - h[v]) / space.dist[u][v]
            if ratio > best:
                best = ratio
    return best


def pairing(h: LipFunction, f: TransportationProblem) -> Fraction:
    """The dual pairing sum over v of h(v) * f(v)."""
    for v, _ in f.entries:
        if v >= len(h):
            raise ValueError(
                f"support point {v} outside the function's {len(h)} points"
            )
    return sum((h[v] * a for v, a in f.entries), _ZERO)


def dual_optimal(
    space: FiniteMetricSpace, f: TransportationProblem, base: int = 0
) -> tuple[LipFunction, Fraction]:
    """A 1-Lipschitz h vanishing at ``base`` maximizing the pairing with f.

    Solved as an exact LP with one variable per non-base point and the
    two-sided Lipschitz constraints on every pair; the optimal value
    equals the transportation cost norm of f.
    """
    n = space.n
    if not 0 <= base < n:
        raise IndexError(f"base point {base} out of range for n={n}")
    for v, _ in f.entries:
        if v >= n:
            raise IndexError(f"support point {v} out of range for n={n}")
    if n == 1:
        return LipFunction((_ZERO,)), _ZERO
    var_of = {v: idx for idx, v in enumerate(p for p in range(n) if p != base)}
    nv = n - 1
    objective = [_ZERO] * nv
    for v, a in f.entries:
        if v != base:
            objective[var_of[v]] = -a
    constraints = []
    for u in range(n):
        for w in range(u + 1, n):
            row = [_ZERO] * nv
            if u != base:
                row[var_of[u]] += Fraction(1)
            if w != base:
                row[var_of[w]] -= Fraction(1)
            d = space.dist[u][w]
            constraints.append((row, LE, d))
            constraints.append(([-a for a in row], LE, d))
    value, x = simplex_solve(LinearProgram(objective, constraints))
    values = [_ZERO] * n
    for v, idx in var_of.items():
        values[v] = x[idx]
    return LipFunction(tuple(values)), -value


def gradient_field(space: FiniteMetricSpace, h: LipFunction) -> EdgeVector:
    """Edge vector of increments: edge (i, j), i < j, carries h(j) - h(i)."""
    if len(h) != space.n:
        raise ValueError("function and space have different point counts")
    n = space.n
    return EdgeVector.from_values(
        n,
        {
            (i, j): h[j] - h[i]
            for i in range(n)
            for j in range(i + 1, n)
        },
    )


def linf_d_norm(space: FiniteMetricSpace, g: EdgeVector) -> Fraction:
    """Distance-relative sup norm: max of |g_e| / d(e)."""
    if g.n != space.n:
        raise ValueError("edge vector and space have different point counts")
    best = _ZERO
    for (i, j), v in g.entries:
        ratio = abs(v) / space.dist[i][j]
        if ratio > best:
            best = ratio
    return best


def parse_lip(text: str, n: int) -> LipFunction:
    """Read the ``index value`` format; unlisted points default to zero."""
    values = [_ZERO] * n
    seen: set[int] = set()
    for lineno, line in data_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'index value'")
        idx, val = parts
        if not idx.isdigit():
            raise ParseError(f"line {lineno}: bad point index {idx!r}")
        v = int(idx)
        if v >= n:
            raise ParseError(f"line {lineno}: index {v} out of range for n={n}")
        if v in seen:
            raise ParseError(f"line {lineno}: duplicate index {v}")
        seen.add(v)
        values[v] = parse_rational(val)
    return LipFunction(tuple(values))


def format_lip(h: LipFunction) -> str:
    """Write the format read by :func:`parse_lip` (all points, in order)."""
    return "".join(f"{v} {format_rational(a)}\n" for v, a in enumerate(h.values))
