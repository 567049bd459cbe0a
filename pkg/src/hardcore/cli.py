"""``hardcore`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 a proved bound was
violated (which means a bug in this package).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Any, Iterable

from . import bijection, bounds, graph_core, homomorphism, indset
from .bounds import BoundId, BoundReport
from .exact_arith import to_rational
from .graph_core import Graph, GraphFormatError

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- constructor expressions -------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(.))")


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        out.append(m.group(0).strip())
        pos = m.end()
    return [t for t in out if t]


def parse_expression(text: str) -> Graph:
    """Build a graph from ``K(a,b)``, ``C(n)``, ``Kn(n)``, ``P(n)``,
    ``U(t, expr)`` or ``DC(expr)``."""
    toks = _tokens(text)
    pos = 0

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(toks):
            raise UsageError(f"unexpected end of expression {text!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise UsageError(f"expected {expected!r} at token {pos} of {text!r}, got {tok!r}")
        pos += 1
        return tok

    def integer() -> int:
        tok = take()
        if not tok.isdigit():
            raise UsageError(f"expected an integer in {text!r}, got {tok!r}")
        return int(tok)

    def expr() -> Graph:
        name = take()
        take("(")
        if name == "K":
            a = integer()
            take(",")
            b = integer()
            g = graph_core.complete_bipartite(a, b)
        elif name == "C":
            g = graph_core.cycle(integer())
        elif name == "Kn":
            g = graph_core.complete_graph(integer())
        elif name == "P":
            g = graph_core.path(integer())
        elif name == "U":
            t = integer()
            take(",")
            g = graph_core.disjoint_union([expr()] * t)
        elif name == "DC":
            g = graph_core.double_cover(expr())
        else:
            raise UsageError(f"unknown constructor {name!r} in {text!r}")
        take(")")
        return g

    try:
        g = expr()
    except ValueError as exc:
        raise UsageError(f"bad constructor arguments in {text!r}: {exc}") from exc
    if pos != len(toks):
        raise UsageError(f"trailing input in expression {text!r}")
    return g


def _read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    out = []
    for lineno, line in enumerate(lines, 1):
        if line.strip():
            try:
                out.append(graph_core.read_graph6(line))
            except GraphFormatError as exc:
                raise UsageError(f"line {lineno}: {exc}") from exc
    return out


def load_graphs(source: str) -> list[Graph]:
    """Graphs from ``-`` (graph6 on stdin), a file (graph6 lines or edge-list
    ``.json``), a constructor expression, or a literal graph6 string."""
    if source == "-":
        return _read_graph6_lines(sys.stdin)
    if os.path.isfile(source):
        with open(source, encoding="ascii") as fh:
            text = fh.read()
        if source.endswith(".json"):
            try:
                return [graph_core.read_edge_list(text)]
            except GraphFormatError as exc:
                raise UsageError(f"{source}: {exc}") from exc
        return _read_graph6_lines(text.splitlines())
    if "(" in source:
        return [parse_expression(source)]
    try:
        return [graph_core.read_graph6(source)]
    except GraphFormatError as exc:
        raise UsageError(f"cannot read graph {source!r}: {exc}") from exc


def parse_target(spec: str, loops: str | None, activities: str | None, lam: Fraction | None) -> homomorphism.TargetGraph:
    if spec == "ind":
        return homomorphism.independent_set_target(lam if lam is not None else 1)
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            try:
                h = homomorphism.TargetGraph.from_json(fh.read())
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(f"{spec}: bad target JSON: {exc}") from exc
    else:
        g = parse_expression(spec)
        h = homomorphism.TargetGraph.from_graph(g)
    if loops:
        h = homomorphism.TargetGraph.build(
            h.m, h.edges(), h.loops + [int(v) for v in loops.split(",")], h.activities
        )
    if activities:
        h = h.with_activities(_rationals(activities, "--activities"))
    return h


def _rationals(text: str, flag: str) -> list[Fraction]:
    try:
        return [to_rational(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _int_range(text: str, flag: str) -> list[int]:
    out: list[int] = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            elif part.strip():
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"{flag}: expected integers or ranges like 4-10, got {text!r}") from exc
    return out


# -- output --------------------------------------------------------------------

def _emit(fmt: str, payload: Any, human: str, csv_text: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for check and scan")
        sys.stdout.write(csv_text)
    else:
        print(human)


def _report_line(r: BoundReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items()) if k != "target")
    tag = " FINDING" if r.is_finding else " BUG" if r.is_bug else ""
    return f"{r.bound_id.value:<16} {r.graph6:<12} {r.verdict.value:<9} lhs={r.lhs} rhs={r.rhs} [{params}]{tag}"


# -- subcommands -------------------------------------------------------------------

def cmd_poly(args) -> int:
    payload, lines = [], []
    for g in load_graphs(args.graph):
        p = indset.brute_force_polynomial(g) if args.brute else indset.independence_polynomial(g)
        i = sum(p.coeffs)
        payload.append({"graph6": graph_core.write_graph6(g), "poly": p.to_json(), "i": str(i)})
        lines.append(f"{p.pretty()}\ni = {i}")
    _emit(args.format, payload, "\n".join(lines))
    return EXIT_OK


def cmd_profile(args) -> int:
    payload, lines = [], []
    for g in load_graphs(args.graph):
        try:
            prof = indset.bipartite_profile(g)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        payload.append({
            "graph6": graph_core.write_graph6(g),
            "left": list(graph_core.bits(prof.bipartition.left)),
            "profile": prof.bivar.to_json(),
        })
        terms = " + ".join(f"{c}·μ^{j}λ^{k}" for (j, k), c in sorted(prof.bivar.coeffs.items()))
        lines.append(f"left = {sorted(graph_core.bits(prof.bipartition.left))}\n{terms}")
    _emit(args.format, payload, "\n".join(lines))
    return EXIT_OK


def cmd_lemma(args) -> int:
    status = EXIT_OK
    payload, lines = [], []
    for g in load_graphs(args.graph):
        try:
            rep = bijection.verify_lemma(g)
        except indset.SizeError as exc:
            raise UsageError(str(exc)) from exc
        out = rep.to_json()
        out["graph6"] = graph_core.write_graph6(g)
        payload.append(out)
        checks = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in rep.checks.items())
        lines.append(
            f"{out['graph6']}: {'pass' if rep.passed else 'FAIL'}; sizes {rep.family_sizes}; "
            f"series identity {'ok' if rep.polynomial_identity else 'FAIL'}; {checks}"
        )
        if not rep.passed:
            status = EXIT_VIOLATION
    _emit(args.format, payload, "\n".join(lines))
    return status


def cmd_double_cover(args) -> int:
    payload, lines = [], []
    for g in load_graphs(args.graph):
        dc = graph_core.double_cover(g)
        g6 = graph_core.write_graph6(dc)
        payload.append({"graph6": g6, "n": dc.n, "edges": [list(e) for e in dc.edges()]})
        lines.append(g6)
    _emit(args.format, payload, "\n".join(lines))
    return EXIT_OK


def cmd_hom(args) -> int:
    lam = _rationals(args.lam, "--lambda")[0] if args.lam else None
    h = parse_target(args.target, args.loops, args.activities, lam)
    payload, lines = [], []
    for g in load_graphs(args.graph):
        dist = homomorphism.hom_distribution(g, h)
        z = homomorphism.distribution_weight(dist, h.activities)
        payload.append({
            "graph6": graph_core.write_graph6(g),
            "target": h.to_json(),
            "total": str(dist.total()),
            "Z": str(z),
            "distribution": dist.to_json(),
        })
        rows = "\n".join(f"  {list(k)}: {c}" for k, c in sorted(dist.classes.items()))
        lines.append(f"|Hom| = {dist.total()}\nZ = {z}\n{rows}")
    _emit(args.format, payload, "\n".join(lines))
    return EXIT_OK


def _run_check(g: Graph, bound: BoundId, args) -> list[BoundReport]:
    lams = _rationals(args.lam, "--lambda") if args.lam else [Fraction(1)]
    mus = _rationals(args.mu, "--mu") if args.mu else lams
    if bound is BoundId.THM1:
        return [bounds.check_theorem1(g, lam) for lam in lams]
    if bound is BoundId.COR1:
        return [bounds.check_corollary1(g)]
    if bound is BoundId.EQ3_EDGE:
        return [bounds.check_edge_weighted_eq3(g)]
    if bound is BoundId.EQ4_BIWEIGHTED:
        return [bounds.check_biweighted_eq4(g, bp, mu, lam)
                for bp in bounds.orientations(g) for mu in mus for lam in lams]
    if bound is BoundId.EQ5_CHAIN:
        return [bounds.check_chain_eq5(g, lam) for lam in lams]
    if bound is BoundId.EQ6_TERMWISE:
        out = [bounds.check_termwise_eq6(g)]
        if args.biweighted:
            out.append(bounds.check_biweighted_termwise(g))
        return out
    target = args.target or "Kn(3)"
    if bound is BoundId.EQ7_HOM:
        h = parse_target(target, args.loops, None, None)
        return [bounds.check_hom_bounds(g, h, BoundId.EQ7_HOM)]
    return [bounds.check_hom_bounds(g, parse_target(target, args.loops, args.activities, lam),
                                    BoundId.EQ8_HOM_WEIGHTED) for lam in lams]


def _finish_reports(reports: list[BoundReport], fmt: str, extra: dict | None = None) -> int:
    payload: dict[str, Any] = {"reports": [r.to_json() for r in reports]}
    if extra:
        payload.update(extra)
    human = "\n".join(_report_line(r) for r in reports)
    _emit(fmt, payload, human, bounds.reports_to_csv(reports))
    return EXIT_VIOLATION if any(r.is_bug for r in reports) else EXIT_OK


def cmd_check(args) -> int:
    try:
        bound = BoundId.parse(args.bound)
    except ValueError as exc:
        raise UsageError(f"--bound: {exc}") from exc
    reports = []
    for g in load_graphs(args.graph):
        try:
            reports.extend(_run_check(g, bound, args))
        except ValueError as exc:
            if isinstance(exc, UsageError):
                raise
            raise UsageError(f"{graph_core.write_graph6(g)}: {exc}") from exc
    return _finish_reports(reports, args.format)


def cmd_scan(args) -> int:
    try:
        selected = [BoundId.parse(b) for b in args.bounds.split(",") if b.strip()]
    except ValueError as exc:
        raise UsageError(f"--bounds: {exc}") from exc
    if args.input:
        graphs = load_graphs(args.input)
    else:
        if args.n is None or args.d is None:
            raise UsageError("scan needs --n and --d, or --input")
        graphs = []
        for d in _int_range(args.d, "--d"):
            for n in _int_range(args.n, "--n"):
                if n * d % 2 == 0 and 0 <= d < n:
                    graphs.extend(graph_core.enumerate_regular(n, d, dedup=not args.no_dedup))
    lams = _rationals(args.lam, "--lambda") if args.lam else None
    mus = _rationals(args.mu, "--mu") if args.mu else None
    targets = [parse_target(args.target, args.loops, None, None)] if args.target else None
    rep = bounds.scan(graphs, selected, lams, mus, targets, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    elif args.format == "csv":
        sys.stdout.write(rep.to_csv())
    else:
        print(f"graphs scanned: {rep.graphs}")
        for bound, row in rep.summary().items():
            print(f"  {bound:<16} " + "  ".join(f"{k}={v}" for k, v in row.items()))
        for title, rows in (("equality cases", rep.equality_cases), ("findings", rep.findings),
                            ("VIOLATIONS", rep.violations)):
            if rows:
                print(f"{title}:")
                for r in rows:
                    print("  " + _report_line(r))
        if rep.skipped:
            print(f"skipped: {len(rep.skipped)}")
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def paper_numbers() -> list[dict[str, Any]]:
    """Published reference values for the extremal bounds, recomputed exactly."""
    from .homomorphism import TargetGraph, distribution_power, hom_distribution, injection_domination

    rows: list[dict[str, Any]] = []

    def row(claim: str, expected, computed) -> None:
        rows.append({"claim": claim, "expected": str(expected), "computed": str(computed),
                     "match": expected == computed})

    for d in range(1, 9):
        kdd = graph_core.complete_bipartite(d, d)
        p = indset.independence_polynomial(kdd)
        row(f"P(λ, K_{d},{d}) = 2(1+λ)^{d} - 1", bounds.extremal_polynomial(d).pretty(), p.pretty())
        row(f"i(K_{d},{d}) = 2^{d + 1} - 1", 2 ** (d + 1) - 1, sum(p.coeffs))

    k3 = graph_core.complete_graph(3)
    c6 = graph_core.double_cover(k3)
    h = TargetGraph.from_graph(k3)
    src = hom_distribution(graph_core.disjoint_union([k3, k3]), h)
    tgt = hom_distribution(c6, h)
    row("Hom(2·K3, K3) balanced class count", 36, src.count((2, 2, 2)))
    row("Hom(K3×K2, K3) balanced class count", 24, tgt.count((2, 2, 2)))
    row("K3×K2 is C6", True, graph_core.are_isomorphic(c6, graph_core.cycle(6)))
    single = hom_distribution(k3, h)
    for ell, expect in ((1, False), (5, True), (6, True)):
        res = injection_domination(distribution_power(single, 2 * ell), distribution_power(tgt, ell))
        row(f"weight-preserving injection Hom(2·{ell}·K3, K3) -> Hom({ell}·K3×K2, K3) exists",
            expect, res.holds)
    row("source balanced count at ℓ=5 is 36^5", 60466176, distribution_power(single, 10).count((10, 10, 10)))

    two_c6 = graph_core.disjoint_union([c6, c6])
    three_k22 = graph_core.disjoint_union([graph_core.complete_bipartite(2, 2)] * 3)
    row("independent sets of 2·(K3×K2) with 3 vertices per side", 2,
        indset.bipartite_profile(two_c6).bivar.coeff(3, 3))
    row("independent sets of 3·K_2,2 with 3 vertices per side", 0,
        indset.bipartite_profile(three_k22).bivar.coeff(3, 3))
    row("i(K3×K2)", 18, indset.count_independent_sets(c6))
    row("i(K3)^2", 16, indset.count_independent_sets(k3) ** 2)
    return rows


def cmd_paper_numbers(args) -> int:
    rows = paper_numbers()
    width = max(len(r["claim"]) for r in rows)
    human = "\n".join(
        f"{r['claim']:<{width}}  expected={r['expected']:<22} computed={r['computed']:<22} "
        f"{'ok' if r['match'] else 'MISMATCH'}" for r in rows
    )
    _emit(args.format, rows, human)
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hardcore", description="Exact independence polynomials and hard-core bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, graph=True):
        sp = sub.add_parser(name, help=help_text)
        if graph:
            sp.add_argument("graph", help="constructor expression, graph6 string, file, or '-' for stdin")
        sp.add_argument("--format", choices=("human", "json", "csv"), default="human")
        sp.set_defaults(func=func)
        return sp

    sp = add("poly", cmd_poly, "independence polynomial")
    sp.add_argument("--brute", action="store_true", help="use subset enumeration")
    add("profile", cmd_profile, "bipartite (mu, lambda) profile")
    add("lemma", cmd_lemma, "verify the pair involution exhaustively")
    add("double-cover", cmd_double_cover, "bipartite double cover as graph6")

    sp = add("hom", cmd_hom, "homomorphism weight classes")
    sp.add_argument("--target", required=True, help="'ind', a constructor expression, or target JSON")
    sp.add_argument("--loops", help="comma-separated looped target vertices")
    sp.add_argument("--activities", help="comma-separated activities, e.g. 1,1/2,3")
    sp.add_argument("--lambda", dest="lam", help="activity for the 'ind' target")

    sp = add("check", cmd_check, "check one bound")
    sp.add_argument("--bound", required=True, help="THM1|COR1|EQ3|EQ4|EQ5|EQ6|EQ7|EQ8")
    sp.add_argument("--lambda", dest="lam", help="comma-separated activities (default 1)")
    sp.add_argument("--mu", help="comma-separated mu values for EQ4")
    sp.add_argument("--target", help="target for EQ7/EQ8 (default Kn(3); 'ind' for independent sets)")
    sp.add_argument("--loops")
    sp.add_argument("--activities")
    sp.add_argument("--biweighted", action="store_true", help="EQ6: also run the bivariate variant")

    sp = add("scan", cmd_scan, "scan a family of graphs", graph=False)
    sp.add_argument("--n", help="vertex counts, e.g. 4-10")
    sp.add_argument("--d", help="degrees, e.g. 2,3")
    sp.add_argument("--input", help="scan graphs from this source instead of enumerating")
    sp.add_argument("--lambda", dest="lam", help="activity grid (default 0,1/2,1,2,10)")
    sp.add_argument("--mu", help="mu grid for EQ4 (default: the lambda grid)")
    sp.add_argument("--bounds", default="THM1,COR1", help="comma-separated bound ids")
    sp.add_argument("--target", help="target graph for EQ7")
    sp.add_argument("--loops")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-dedup", action="store_true", help="stream labelled graphs")

    add("paper-numbers", cmd_paper_numbers, "recompute the published reference values", graph=False)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit 1
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, indset.SizeError, graph_core.CapacityError) as exc:
        print(f"hardcore: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
