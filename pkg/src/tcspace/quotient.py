"""The edge space of the complete graph, its cycle space, and the quotient norm.

Edge vectors live on the edges ``(i, j)``, ``i < j``, of the complete
graph on ``n`` points; the reference orientation points every edge from
the lower to the higher index.  The cycle space is spanned by the
fundamental triangles through point 0.  The quotient norm of an edge
vector is the cheapest distance-weighted l1 norm over its coset modulo
cycles, computed by an exact LP; by design it matches the
transportation cost of the vector's boundary, and the test-suite leans
on that agreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .metric import FiniteMetricSpace
from .rationals import ParseError, data_lines, format_rational, parse_rational
from .solvers import GE, LinearProgram, least_squares_exact, simplex_solve
from .transport import TransportPlan, TransportationProblem

_ZERO = Fraction(0)

Edge = tuple[int, int]


@dataclass(frozen=True)
class EdgeVector:
    """Rational values on the edges of the complete graph on ``n`` points.

    Keys are ``(i, j)`` with ``0 <= i < j < n``.  Entries are merged,
    zero values dropped, and the support sorted on construction.
    """

    n: int
    entries: tuple[tuple[Edge, Fraction], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient point count must be >= 1")
        merged: dict[Edge, Fraction] = {}
        for (i, j), val in self.entries:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i}, {j}) for n={self.n}")
            merged[(i, j)] = merged.get((i, j), _ZERO) + Fraction(val)
        cleaned = tuple(sorted((e, v) for e, v in merged.items() if v != 0))
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_values(
        cls, n: int, values: Mapping[Edge, Fraction] | Iterable[tuple[Edge, Fraction]]
    ) -> "EdgeVector":
        items = values.items() if isinstance(values, Mapping) else values
        return cls(n, tuple((e, v) for e, v in items))

    def value(self, i: int, j: int) -> Fraction:
        if not i < j:
            raise ValueError(f"edge must be queried as (i, j) with i < j, got ({i}, {j})")
        for e, v in self.entries:
            if e == (i, j):
                return v
        return _ZERO

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def scaled(self, factor) -> "EdgeVector":
        q = Fraction(factor)
        return EdgeVector(self.n, tuple((e, q * v) for e, v in self.entries))

    def __add__(self, other: "EdgeVector") -> "EdgeVector":
        if self.n != other.n:
            raise ValueError("edge vectors live on different point counts")
        return EdgeVector(self.n, self.entries + other.entries)

    def __sub__(self, other: "EdgeVector") -> "EdgeVector":
        return self + (-other)

    def __neg__(self) -> "EdgeVector":
        return EdgeVector(self.n, tuple((e, -v) for e, v in self.entries))


def all_edges(n: int) -> list[Edge]:
    """Every edge of the complete graph on ``n`` points, lexicographic."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def cycle_basis(n: int) -> tuple[EdgeVector, ...]:
    """Fundamental triangles of the star at point 0.

    For 1 <= i < j <= n-1 the cycle 0 -> i -> j -> 0 has +1 on (0, i),
    +1 on (i, j) and -1 on (0, j).  Together these (n-1)(n-2)/2 vectors
    are a basis of the kernel of the boundary map.
    """
    if n < 1:
        raise ValueError("ambient point count must be >= 1")
    basis = []
    for i in range(1, n):
        for j in range(i + 1, n):
            basis.append(
                EdgeVector.from_values(
                    n, {(0, i): Fraction(1), (i, j): Fraction(1), (0, j): Fraction(-1)}
                )
            )
    return tuple(basis)


def boundary(f: EdgeVector) -> TransportationProblem:
    """Net in-flow at every point: heads (higher index) count positive."""
    acc: dict[int, Fraction] = {}
    for (i, j), val in f.entries:
        acc[j] = acc.get(j, _ZERO) + val
        acc[i] = acc.get(i, _ZERO) - val
    return TransportationProblem.from_values(acc)


def lift_plan(plan: TransportPlan, n: int) -> EdgeVector:
    """Edge vector whose boundary is the plan's problem.

    A move ``(x, y, a)`` contributes ``-a`` on edge ``(min, max)`` when
    x < y and ``+a`` when x > y.
    """
    acc: dict[Edge, Fraction] = {}
    for x, y, a in plan.moves:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"plan endpoint out of range for n={n}")
        if x < y:
            e, signed = (x, y), -a
        else:
            e, signed = (y, x), a
        acc[e] = acc.get(e, _ZERO) + signed
    return EdgeVector.from_values(n, acc)


def l1d_norm(space: FiniteMetricSpace, f: EdgeVector) -> Fraction:
    """Distance-weighted l1 norm: sum of |f_e| * d(e)."""
    if f.n != space.n:
        raise ValueError("edge vector and space have different point counts")
    return sum((abs(v) * space.dist[i][j] for (i, j), v in f.entries), _ZERO)


Orientation = Mapping[Edge, int]


def _reorient(f: EdgeVector, orientation: Orientation | None) -> EdgeVector:
    if orientation is None:
        return f
    for e, s in orientation.items():
        i, j = e
        if not (0 <= i < j < f.n):
            raise ValueError(f"orientation key {e} is not an edge for n={f.n}")
        if s not in (1, -1):
            raise ValueError("orientation signs must be +1 or -1")
    return EdgeVector(
        f.n, tuple((e, v * orientation.get(e, 1)) for e, v in f.entries)
    )


def quotient_norm(
    space: FiniteMetricSpace,
    f: EdgeVector,
    orientation: Orientation | None = None,
) -> tuple[Fraction, EdgeVector]:
    """Cheapest distance-weighted l1 norm over the coset of ``f`` mod cycles.

    Solved as an exact LP: free coefficients on the basis cycles plus
    one auxiliary variable per edge dominating the absolute value there.
    Returns the optimal value and one optimal coset representative.

    Passing an ``orientation`` (a +-1 sign per edge) re-expresses both
    the vector and the cycle basis under that orientation before
    solving; the value must not depend on it.
    """
    if f.n != space.n:
        raise ValueError("edge vector and space have different point counts")
    n = space.n
    g = _reorient(f, orientation)
    if n < 2:
        return _ZERO, g
    basis = cycle_basis(n)
    if orientation is not None:
        basis = tuple(_reorient(chi, orientation) for chi in basis)
    edges = all_edges(n)
    ne = len(edges)
    nc = len(basis)
    nvars = ne + nc
    chi_values = [dict(chi.entries) for chi in basis]
    objective = [space.dist[i][j] for i, j in edges] + [_ZERO] * nc
    constraints = []
    for idx, e in enumerate(edges):
        fe = g.value(*e)
        row_minus = [_ZERO] * nvars
        row_plus = [_ZERO] * nvars
        row_minus[idx] = Fraction(1)
        row_plus[idx] = Fraction(1)
        for k, chi in enumerate(chi_values):
            ce = chi.get(e)
            if ce:
                row_minus[ne + k] = -ce
                row_plus[ne + k] = ce
        constraints.append((row_minus, GE, fe))
        constraints.append((row_plus, GE, -fe))
    bounds = [(Fraction(0), None)] * ne + [(None, None)] * nc
    value, x = simplex_solve(LinearProgram(objective, constraints, bounds))
    representative = g
    for k, chi in enumerate(basis):
        if x[ne + k]:
            representative = representative + chi.scaled(x[ne + k])
    return value, representative


def cut_decomposition(f: EdgeVector) -> tuple[EdgeVector, EdgeVector]:
    """Split ``f = z + b`` with ``z`` in the cycle space, ``b`` a gradient field.

    ``b`` is the orthogonal projection of ``f`` onto the span of the
    point-function gradients, taken in the unweighted Euclidean inner
    product on edge space (the split does not depend on any metric).
    """
    n = f.n
    edges = all_edges(n)
    rows = []
    for i, j in edges:
        row = [_ZERO] * n
        row[j] = Fraction(1)
        row[i] = Fraction(-1)
        rows.append(row)
    target = [f.value(i, j) for i, j in edges]
    h = least_squares_exact(rows, target)
    b = EdgeVector.from_values(
        n, {(i, j): h[j] - h[i] for i, j in edges}
    )
    return f - b, b


def parse_edge_vector(text: str, n: int) -> EdgeVector:
    """Read the ``i j value`` line format; repeated edges are summed."""
    acc: dict[Edge, Fraction] = {}
    for lineno, line in data_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'i j value'")
        si, sj, val = parts
        if not (si.isdigit() and sj.isdigit()):
            raise ParseError(f"line {lineno}: bad edge indices {si!r} {sj!r}")
        i, j = int(si), int(sj)
        if not i < j:
            raise ParseError(f"line {lineno}: edge must satisfy i < j")
        if j >= n:
            raise ParseError(f"line {lineno}: edge ({i}, {j}) out of range for n={n}")
        acc[(i, j)] = acc.get((i, j), _ZERO) + parse_rational(val)
    return EdgeVector.from_values(n, acc)


def format_edge_vector(f: EdgeVector) -> str:
    """Write the format read by :func:`parse_edge_vector`."""
    return "".join(f"{i} {j} {format_rational(v)}\n" for (i, j), v in f.entries)
