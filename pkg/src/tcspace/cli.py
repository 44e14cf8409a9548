"""Command line interface.

Exit codes: 0 for success or PASS, 1 for a mathematical FAIL (a refuted
check), 2 for input errors.  Output is deterministic: the same inputs
produce byte-identical reports, rationals always print as ``p/q`` (or
``p`` for integers), and ``--json`` switches to a structured report
carrying the same values.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .duality import dual_optimal
from .l1embed import quadruple_inequality_check, sign_pattern_isometry_check
from .matching import (
    PairSequence,
    matching_brute_force,
    min_weight_perfect_matching,
    nested_matching_check,
)
from .metric import (
    FAMILY_TAGS,
    FiniteMetricSpace,
    NotAMetricError,
    extremes,
    family_metric,
    parse_metric,
    serialize_metric,
)
from .quotient import lift_plan, parse_edge_vector, quotient_norm
from .rationals import ParseError, format_rational
from .sampling import random_metric_space, random_zero_sum_problem
from .solvers import InfeasibleError, UnboundedError
from .transport import (
    NotZeroSumError,
    l1_norm,
    parse_problem,
    tc_brute_force,
    tc_norm,
)

_INPUT_ERRORS = (
    ParseError,
    NotAMetricError,
    NotZeroSumError,
    InfeasibleError,
    UnboundedError,
    ValueError,
    IndexError,
    OSError,
)

_SELFTEST_SEED = 271828
_SELFTEST_NORM_INSTANCES = 24
_SELFTEST_MATCHING_INSTANCES = 12


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_metric(path: str) -> FiniteMetricSpace:
    try:
        return parse_metric(_read(path))
    except (ParseError, NotAMetricError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _load_problem(path: str):
    try:
        return parse_problem(_read(path))
    except (ParseError, NotZeroSumError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _load_edge_vector(path: str, n: int):
    try:
        return parse_edge_vector(_read(path), n)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _parse_pairs(text: str) -> PairSequence:
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        left, sep, right = chunk.partition(":")
        if not sep or not left.strip().isdigit() or not right.strip().isdigit():
            raise ValueError(f"--pairs: expected 'x:y' entries, got {chunk!r}")
        pairs.append((int(left), int(right)))
    try:
        return PairSequence(tuple(pairs))
    except ValueError as exc:
        raise ValueError(f"--pairs: {exc}") from None


def _parse_vertices(text: str) -> list[int]:
    vertices = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk.isdigit():
            raise ValueError(f"--vertices: expected integers, got {chunk!r}")
        vertices.append(int(chunk))
    return vertices


def _parse_coeffs(text: str) -> list[Fraction]:
    from .rationals import parse_rational

    coeffs = []
    for chunk in text.split(","):
        try:
            coeffs.append(parse_rational(chunk.strip()))
        except ParseError as exc:
            raise ValueError(f"--coeffs: {exc}") from None
    return coeffs


def _edge_label(space: FiniteMetricSpace, u: int, v: int) -> str:
    if space.labels is None:
        return f"edge {u} {v}"
    return f"edge {u} {v} ({space.labels[u]},{space.labels[v]})"


def _cmd_validate(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    lines = [f"OK n={space.n}"]
    payload: dict = {"ok": True, "n": space.n}
    if space.n >= 2:
        lo, hi = extremes(space)
        lines.append(f"delta {format_rational(lo)}")
        lines.append(f"diameter {format_rational(hi)}")
        payload["delta"] = format_rational(lo)
        payload["diameter"] = format_rational(hi)
    return 0, lines, payload


def _cmd_tcnorm(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    problem = _load_problem(args.problem)
    norm, plan = tc_norm(space, problem)
    lines = [f"norm {format_rational(norm)}"]
    moves = []
    for x, y, a in plan.moves:
        lines.append(f"move {x} -> {y} amount {format_rational(a)}")
        moves.append({"source": x, "sink": y, "amount": format_rational(a)})
    payload = {"norm": format_rational(norm), "plan": moves}
    return 0, lines, payload


def _cmd_l1norm(args) -> tuple[int, list[str], dict]:
    problem = _load_problem(args.problem)
    value = l1_norm(problem)
    return 0, [f"l1 {format_rational(value)}"], {"l1": format_rational(value)}


def _cmd_matching(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    vertices = _parse_vertices(args.vertices)
    result = min_weight_perfect_matching(space, vertices)
    lines = [f"weight {format_rational(result.weight)}"]
    for u, v in result.edges:
        lines.append(_edge_label(space, u, v))
    payload = {
        "weight": format_rational(result.weight),
        "edges": [[u, v] for u, v in result.edges],
    }
    return 0, lines, payload


def _cmd_nested_check(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    pairs = _parse_pairs(args.pairs)
    result = nested_matching_check(space, pairs)
    if result.passed:
        lines = [f"PASS {result.depth} prefixes"]
        payload = {"result": "PASS", "depth": result.depth}
        return 0, lines, payload
    lines = [
        f"FAIL at n={result.depth}",
        f"prescribed weight {format_rational(result.prescribed_weight)}",
        f"witness weight {format_rational(result.witness.weight)}",
    ]
    for u, v in result.witness.edges:
        lines.append(_edge_label(space, u, v))
    payload = {
        "result": "FAIL",
        "depth": result.depth,
        "prescribed_weight": format_rational(result.prescribed_weight),
        "witness_weight": format_rational(result.witness.weight),
        "witness_edges": [[u, v] for u, v in result.witness.edges],
    }
    return 1, lines, payload


def _cmd_quotient(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    vector = _load_edge_vector(args.edges, space.n)
    value, representative = quotient_norm(space, vector)
    lines = [f"norm {format_rational(value)}"]
    entries = []
    for (i, j), v in representative.entries:
        lines.append(f"rep {i} {j} {format_rational(v)}")
        entries.append({"edge": [i, j], "value": format_rational(v)})
    payload = {"norm": format_rational(value), "representative": entries}
    return 0, lines, payload


def _cmd_dual(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    problem = _load_problem(args.problem)
    h, value = dual_optimal(space, problem, base=args.base)
    lines = [f"value {format_rational(value)}"]
    for v, a in enumerate(h.values):
        lines.append(f"h {v} {format_rational(a)}")
    payload = {
        "value": format_rational(value),
        "base": args.base,
        "h": [format_rational(a) for a in h.values],
    }
    return 0, lines, payload


def _cmd_l1check(args) -> tuple[int, list[str], dict]:
    space = _load_metric(args.metric)
    pairs = _parse_pairs(args.pairs)
    coeffs = _parse_coeffs(args.coeffs) if args.coeffs else None
    report = sign_pattern_isometry_check(space, pairs, coeffs)
    if report.passed:
        lines = [
            f"PASS {report.patterns_checked} patterns",
            f"norm {format_rational(report.expected)} in every pattern",
        ]
        payload = {
            "result": "PASS",
            "patterns": report.patterns_checked,
            "expected": format_rational(report.expected),
        }
        return 0, lines, payload
    rendered = "".join("+" if s > 0 else "-" for s in report.pattern)
    lines = [
        f"FAIL pattern {rendered}",
        f"achieved {format_rational(report.achieved)}"
        f" expected {format_rational(report.expected)}",
    ]
    payload = {
        "result": "FAIL",
        "pattern": rendered,
        "achieved": format_rational(report.achieved),
        "expected": format_rational(report.expected),
    }
    return 1, lines, payload


def _cmd_family(args) -> tuple[int, list[str], dict]:
    space = family_metric(args.family, args.n)
    header = f"# family {args.family} n={args.n} points " + " ".join(space.labels)
    body = serialize_metric(space)
    lines = [header] + body.splitlines()
    payload = {
        "family": args.family,
        "n": args.n,
        "labels": list(space.labels),
        "metric": body,
    }
    return 0, lines, payload


def _cmd_quad_check(args) -> tuple[int, list[str], dict]:
    report = quadruple_inequality_check(args.family, args.max)
    if report.passed:
        lines = [f"PASS {report.quadruples_checked} quadruples"]
        payload = {
            "result": "PASS",
            "family": report.family,
            "max_index": report.max_index,
            "quadruples": report.quadruples_checked,
        }
        return 0, lines, payload
    lines = [f"FAIL {len(report.violations)} violations"]
    for q in report.violations:
        lines.append("violation " + " ".join(str(x) for x in q))
    payload = {
        "result": "FAIL",
        "family": report.family,
        "max_index": report.max_index,
        "quadruples": report.quadruples_checked,
        "violations": [list(q) for q in report.violations],
    }
    return 1, lines, payload


def _cmd_selftest(args) -> tuple[int, list[str], dict]:
    rng = random.Random(_SELFTEST_SEED)
    ok = True
    lines = [
        f"selftest seed={_SELFTEST_SEED}"
        f" norms={_SELFTEST_NORM_INSTANCES}"
        f" matchings={_SELFTEST_MATCHING_INSTANCES}"
    ]
    checks = []
    for t in range(_SELFTEST_NORM_INSTANCES):
        n = rng.randrange(3, 7)
        space = random_metric_space(rng, n)
        f = random_zero_sum_problem(rng, space, n)
        norm, plan = tc_norm(space, f)
        brute = tc_brute_force(space, f)
        qvalue, _ = quotient_norm(space, lift_plan(plan, n))
        _, dvalue = dual_optimal(space, f)
        good = norm == brute == qvalue == dvalue
        ok = ok and good
        verdict = "ok" if good else "MISMATCH"
        lines.append(
            f"norm {t:02d} n={n} value {format_rational(norm)} {verdict}"
        )
        checks.append({"check": f"norm {t:02d}", "ok": good})
    for t in range(_SELFTEST_MATCHING_INSTANCES):
        n = rng.randrange(4, 9)
        space = random_metric_space(rng, n)
        size = rng.choice((2, 4, 6))
        vertices = sorted(rng.sample(range(n), min(size, n)))
        if len(vertices) % 2:
            vertices = vertices[:-1]
        dp = min_weight_perfect_matching(space, vertices)
        bf = matching_brute_force(space, vertices)
        good = dp.weight == bf.weight and dp.edges == bf.edges
        ok = ok and good
        verdict = "ok" if good else "MISMATCH"
        lines.append(
            f"matching {t:02d} size={len(vertices)}"
            f" weight {format_rational(dp.weight)} {verdict}"
        )
        checks.append({"check": f"matching {t:02d}", "ok": good})
    lines.append("SELFTEST " + ("PASS" if ok else "FAIL"))
    payload = {"result": "PASS" if ok else "FAIL", "checks": checks}
    return (0 if ok else 1), lines, payload


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcspace",
        description="Exact transportation cost norms on finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, handler):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--out", metavar="FILE", help="write the report to FILE")
        return p

    p = add("validate", "check a metric file and report its extremes", _cmd_validate)
    p.add_argument("metric")

    p = add("tcnorm", "transportation cost norm and an optimal plan", _cmd_tcnorm)
    p.add_argument("metric")
    p.add_argument("problem")

    p = add("l1norm", "plain l1 norm of a transportation problem", _cmd_l1norm)
    p.add_argument("problem")

    p = add("matching", "minimum-weight perfect matching", _cmd_matching)
    p.add_argument("metric")
    p.add_argument("--vertices", required=True, metavar="i,j,...")

    p = add("nested-check", "prefix-by-prefix matching minimality", _cmd_nested_check)
    p.add_argument("metric")
    p.add_argument("--pairs", required=True, metavar="x:y,...")

    p = add("quotient", "quotient norm of an edge vector mod cycles", _cmd_quotient)
    p.add_argument("metric")
    p.add_argument("edges")

    p = add("dual", "optimal Lipschitz dual certificate", _cmd_dual)
    p.add_argument("metric")
    p.add_argument("problem")
    p.add_argument("--base", type=int, default=0, help="base point (default 0)")

    p = add("l1check", "all-sign-pattern isometric l1 check", _cmd_l1check)
    p.add_argument("metric")
    p.add_argument("--pairs", required=True, metavar="x:y,...")
    p.add_argument("--coeffs", metavar="p/q,...")

    p = add("family", "emit a benchmark family as a metric file", _cmd_family)
    p.add_argument("--family", required=True, choices=FAMILY_TAGS)
    p.add_argument("--n", required=True, type=int)

    p = add("quad-check", "strict quadruple inequality over a family", _cmd_quad_check)
    p.add_argument("--family", required=True, choices=FAMILY_TAGS)
    p.add_argument("--max", required=True, type=int)

    add("selftest", "seeded cross-check of the independent routes", _cmd_selftest)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        code, lines, payload = args.handler(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        output = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        output = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
