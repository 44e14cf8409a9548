"""Exact optimization kernels shared by the rest of the package.

Three primitives, all over arbitrary-precision rationals
(``fractions.Fraction``): a two-phase simplex solver using Bland's
anti-cycling rule, a successive-shortest-path minimum-cost flow solver
with node potentials, and a least-squares solver working through the
normal equations.  Every tie is broken by lowest index, so results are
deterministic, and no step ever rounds.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Optional, Sequence

# The rational carrier for the whole package.  ``fractions.Fraction``
# already guarantees lowest terms, positive denominators and exact
# arithmetic at arbitrary precision, which is everything the exact
# pipeline needs.
Rational = Fraction

LE = "<="
EQ = "=="
GE = ">="
_RELATIONS = (LE, EQ, GE)

_ZERO = Fraction(0)
_ONE = Fraction(1)

Bound = Optional[Fraction]


class InfeasibleError(Exception):
    """The constraint system has no feasible point."""


class UnboundedError(Exception):
    """The objective is unbounded below on the feasible region."""


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class LinearProgram:
    """A minimization LP: objective, rows ``(coeffs, relation, rhs)``, bounds.

    Bounds are per-variable ``(lower, upper)`` pairs with ``None`` meaning
    unbounded on that side; omitting ``bounds`` leaves every variable free.
    The description is not mutated after construction.
    """

    __slots__ = ("objective", "constraints", "bounds")

    def __init__(
        self,
        objective: Iterable,
        constraints: Iterable[tuple],
        bounds: Sequence[tuple[Bound, Bound]] | None = None,
    ):
        self.objective: tuple[Fraction, ...] = tuple(_frac(c) for c in objective)
        nvars = len(self.objective)
        rows = []
        for coeffs, relation, rhs in constraints:
            coeffs = tuple(_frac(a) for a in coeffs)
            if len(coeffs) != nvars:
                raise ValueError("constraint row length differs from objective length")
            if relation not in _RELATIONS:
                raise ValueError(f"unknown relation {relation!r}")
            rows.append((coeffs, relation, _frac(rhs)))
        self.constraints: tuple = tuple(rows)
        if bounds is None:
            bounds = [(None, None)] * nvars
        if len(bounds) != nvars:
            raise ValueError("bounds length differs from objective length")
        self.bounds: tuple = tuple(
            (None if lo is None else _frac(lo), None if hi is None else _frac(hi))
            for lo, hi in bounds
        )


def simplex_solve(lp: LinearProgram) -> tuple[Fraction, list[Fraction]]:
    """Exact optimum of ``lp`` together with one optimal assignment.

    Two-phase primal simplex on a standard-form rewrite.  Entering and
    leaving variables follow Bland's rule (lowest eligible index), which
    rules out cycling and makes the run deterministic.

    Raises ``InfeasibleError`` / ``UnboundedError`` accordingly.
    """
    nvars = len(lp.objective)

    # Rewrite each variable onto one or two nonnegative columns.
    # recipe: ("lo", col, lo) -> x = lo + y
    #         ("hi", col, hi) -> x = hi - y
    #         ("split", cp, cm) -> x = y+ - y-
    recipes: list[tuple] = []
    ncols = 0
    box_rows: list[tuple[int, Fraction]] = []  # y_col <= width for doubly bounded
    for lo, hi in lp.bounds:
        if lo is not None:
            recipes.append(("lo", ncols, lo))
            if hi is not None:
                box_rows.append((ncols, hi - lo))
            ncols += 1
        elif hi is not None:
            recipes.append(("hi", ncols, hi))
            ncols += 1
        else:
            recipes.append(("split", ncols, ncols + 1))
            ncols += 2

    def expand(coeffs: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
        row = [_ZERO] * ncols
        shift = _ZERO
        for a, recipe in zip(coeffs, recipes):
            if not a:
                continue
            kind = recipe[0]
            if kind == "lo":
                row[recipe[1]] = a
                shift += a * recipe[2]
            elif kind == "hi":
                row[recipe[1]] = -a
                shift += a * recipe[2]
            else:
                row[recipe[1]] = a
                row[recipe[2]] = -a
        return row, shift

    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for coeffs, relation, rhs in lp.constraints:
        row, shift = expand(coeffs)
        b = rhs - shift
        if b < 0:
            row = [-a for a in row]
            b = -b
            relation = {LE: GE, GE: LE, EQ: EQ}[relation]
        rows.append((row, relation, b))
    for col, width in box_rows:
        if width < 0:
            raise InfeasibleError("contradictory variable bounds")
        row = [_ZERO] * ncols
        row[col] = _ONE
        rows.append((row, LE, width))

    m = len(rows)
    slack_of: dict[int, int] = {}
    for i, (_, relation, _) in enumerate(rows):
        if relation != EQ:
            slack_of[i] = ncols + len(slack_of)
    n_slack = len(slack_of)
    art_of: dict[int, int] = {}
    for i, (_, relation, _) in enumerate(rows):
        if relation != LE:
            art_of[i] = ncols + n_slack + len(art_of)
    n_art = len(art_of)
    width = ncols + n_slack + n_art

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (row, relation, b) in enumerate(rows):
        full = row + [_ZERO] * (n_slack + n_art) + [b]
        if relation == LE:
            full[slack_of[i]] = _ONE
            basis.append(slack_of[i])
        elif relation == GE:
            full[slack_of[i]] = -_ONE
            full[art_of[i]] = _ONE
            basis.append(art_of[i])
        else:
            full[art_of[i]] = _ONE
            basis.append(art_of[i])
        tableau.append(full)

    def reduce_cost_row(raw: list[Fraction]) -> list[Fraction]:
        cost = list(raw) + [_ZERO]
        for i, bj in enumerate(basis):
            coef = cost[bj]
            if coef:
                trow = tableau[i]
                cost = [a - coef * t if t else a for a, t in zip(cost, trow)]
        return cost

    def pivot(r: int, jc: int) -> list[Fraction]:
        prow = tableau[r]
        piv = prow[jc]
        if piv != 1:
            prow = [v / piv for v in prow]
            tableau[r] = prow
        for i, row in enumerate(tableau):
            if i != r:
                f = row[jc]
                if f:
                    tableau[i] = [a - f * t if t else a for a, t in zip(row, prow)]
        basis[r] = jc
        return prow

    def run(cost: list[Fraction], allowed: int) -> list[Fraction]:
        while True:
            enter = -1
            for j in range(allowed):
                if cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return cost
            best_row = -1
            best_ratio = None
            for i, row in enumerate(tableau):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])
                    ):
                        best_ratio = ratio
                        best_row = i
            if best_row < 0:
                raise UnboundedError("objective unbounded below")
            prow = pivot(best_row, enter)
            f = cost[enter]
            if f:
                cost = [a - f * t if t else a for a, t in zip(cost, prow)]

    if n_art:
        raw = [_ZERO] * width
        for col in art_of.values():
            raw[col] = _ONE
        cost = reduce_cost_row(raw)
        cost = run(cost, width)
        if cost[-1] != 0:
            raise InfeasibleError("no feasible point")
        art_cols = set(art_of.values())
        structural = ncols + n_slack
        redundant: list[int] = []
        for i in range(m):
            if basis[i] in art_cols:
                jc = next((j for j in range(structural) if tableau[i][j]), None)
                if jc is None:
                    redundant.append(i)
                else:
                    pivot(i, jc)
        for i in reversed(redundant):
            del tableau[i]
            del basis[i]
        tableau = [row[:structural] + row[-1:] for row in tableau]
        width = structural

    std_cost = [_ZERO] * width
    for c_j, recipe in zip(lp.objective, recipes):
        if not c_j:
            continue
        kind = recipe[0]
        if kind == "lo":
            std_cost[recipe[1]] += c_j
        elif kind == "hi":
            std_cost[recipe[1]] -= c_j
        else:
            std_cost[recipe[1]] += c_j
            std_cost[recipe[2]] -= c_j
    cost = reduce_cost_row(std_cost)
    run(cost, width)

    y = [_ZERO] * width
    for i, bj in enumerate(basis):
        y[bj] = tableau[i][-1]
    x: list[Fraction] = []
    for recipe in recipes:
        kind = recipe[0]
        if kind == "lo":
            x.append(recipe[2] + y[recipe[1]])
        elif kind == "hi":
            x.append(recipe[2] - y[recipe[1]])
        else:
            x.append(y[recipe[1]] - y[recipe[2]])
    value = sum((c * v for c, v in zip(lp.objective, x)), _ZERO)
    return value, x


class FlowNetwork:
    """Minimum-cost flow instance: node supplies plus capacitated cost arcs.

    Arcs are ``(tail, head, cost, capacity)`` with ``capacity=None`` for
    uncapacitated arcs.  Supplies must sum to zero and costs must be
    nonnegative; both are checked at construction.
    """

    __slots__ = ("supplies", "arcs")

    def __init__(self, supplies: Iterable, arcs: Iterable[tuple]):
        self.supplies: tuple[Fraction, ...] = tuple(_frac(s) for s in supplies)
        if sum(self.supplies, _ZERO) != 0:
            raise ValueError("supplies must sum to zero")
        n = len(self.supplies)
        cleaned = []
        for tail, head, cost, capacity in arcs:
            if not (0 <= tail < n and 0 <= head < n):
                raise ValueError(f"arc ({tail}, {head}) out of node range")
            if tail == head:
                raise ValueError(f"arc ({tail}, {head}) is a self-loop")
            cost = _frac(cost)
            if cost < 0:
                raise ValueError("arc costs must be nonnegative")
            if capacity is not None:
                capacity = _frac(capacity)
                if capacity < 0:
                    raise ValueError("arc capacities must be nonnegative")
            cleaned.append((tail, head, cost, capacity))
        self.arcs: tuple = tuple(cleaned)


def min_cost_flow(net: FlowNetwork) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Route all supplies at exact minimum cost; returns ``(cost, arc flows)``.

    Successive shortest augmenting paths from a super-source to a
    super-sink.  Node potentials keep every residual reduced cost
    nonnegative, so Dijkstra remains valid after each augmentation.
    Raises ``InfeasibleError`` when the supplies cannot be routed.
    """
    n = len(net.supplies)
    source, sink = n, n + 1
    nn = n + 2

    to: list[int] = []
    rcost: list[Fraction] = []
    remain: list[Fraction | None] = []
    adj: list[list[int]] = [[] for _ in range(nn)]

    def add_arc(u: int, v: int, cost: Fraction, cap: Fraction | None) -> None:
        adj[u].append(len(to))
        to.append(v)
        rcost.append(cost)
        remain.append(cap)
        adj[v].append(len(to))
        to.append(u)
        rcost.append(-cost)
        remain.append(_ZERO)

    for tail, head, cost, cap in net.arcs:
        add_arc(tail, head, cost, cap)
    required = _ZERO
    for v, s in enumerate(net.supplies):
        if s > 0:
            add_arc(source, v, _ZERO, s)
            required += s
        elif s < 0:
            add_arc(v, sink, _ZERO, -s)

    potential = [_ZERO] * nn
    delivered = _ZERO
    while delivered < required:
        dist: list[Fraction | None] = [None] * nn
        parent = [-1] * nn
        dist[source] = _ZERO
        heap: list[tuple[Fraction, int]] = [(_ZERO, source)]
        while heap:
            d_u, u = heapq.heappop(heap)
            if d_u > dist[u]:
                continue
            for k in adj[u]:
                r = remain[k]
                if r is not None and r == 0:
                    continue
                v = to[k]
                nd = d_u + rcost[k] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = k
                    heapq.heappush(heap, (nd, v))
        if dist[sink] is None:
            raise InfeasibleError("supplies cannot be routed")
        bottleneck = None
        v = sink
        while v != source:
            k = parent[v]
            r = remain[k]
            if r is not None and (bottleneck is None or r < bottleneck):
                bottleneck = r
            v = to[k ^ 1]
        # super-source arcs are always capacitated, so a bottleneck exists
        v = sink
        while v != source:
            k = parent[v]
            if remain[k] is not None:
                remain[k] -= bottleneck
            if remain[k ^ 1] is not None:
                remain[k ^ 1] += bottleneck
            v = to[k ^ 1]
        for v in range(nn):
            if dist[v] is not None:
                potential[v] += dist[v]
        delivered += bottleneck

    flows = tuple(remain[2 * idx + 1] for idx in range(len(net.arcs)))
    total = sum((f * arc[2] for f, arc in zip(flows, net.arcs)), _ZERO)
    return total, flows


def least_squares_exact(
    rows: Sequence[Sequence], target: Sequence
) -> list[Fraction]:
    """An exact minimizer of ``||A x - target||_2`` via the normal equations.

    Rank deficiency is fine: free variables are pinned to zero, so some
    minimizer is always returned (the normal equations are consistent).
    """
    m = len(rows)
    if len(target) != m:
        raise ValueError("matrix and target dimensions do not match")
    k = len(rows[0]) if m else 0
    mat: list[list[Fraction]] = []
    for row in rows:
        if len(row) != k:
            raise ValueError("ragged matrix")
        mat.append([_frac(a) for a in row])
    b = [_frac(t) for t in target]

    # normal equations G x = g, reduced to RREF with exact pivots
    aug: list[list[Fraction]] = []
    for i in range(k):
        row = [
            sum((mr[i] * mr[j] for mr in mat), _ZERO) for j in range(k)
        ]
        row.append(sum((mr[i] * t for mr, t in zip(mat, b)), _ZERO))
        aug.append(row)

    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, k) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        prow = aug[r]
        piv = prow[c]
        if piv != 1:
            prow = [v / piv for v in prow]
            aug[r] = prow
        for i in range(k):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * t if t else a for a, t in zip(aug[i], prow)]
        pivots.append((r, c))
        r += 1
        if r == k:
            break

    x = [_ZERO] * k
    for rr, cc in pivots:
        x[cc] = aug[rr][-1]
    return x
