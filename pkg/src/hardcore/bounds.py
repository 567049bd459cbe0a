"""Exact checks of the hard-core / independent-set upper bounds.

Every bound has the shape ``X**(1/p) <= Y**(1/q)`` and is decided by comparing
the integers ``X**q`` and ``Y**p`` (after clearing denominators).  Reports
keep both powered sides so a verdict can be audited.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .bijection import LEMMA_MAX_N, independent_from_series
from .exact_arith import (
    BivariatePolynomial,
    IntPolynomial,
    binomial_power,
    coeffwise_leq,
    powered_sides,
    to_rational,
)
from .graph_core import (
    Bipartition,
    Graph,
    canonical_bipartition,
    complete_bipartite,
    complete_graph,
    component_masks,
    double_cover,
    is_regular,
    is_union_of_complete_bipartite,
    write_graph6,
)
from .homomorphism import TargetGraph, independent_set_target, partition_function
from .indset import bipartite_profile, count_independent_sets, independence_polynomial, size_limit

DEFAULT_LAMBDAS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(10))
ORIENTATION_COMPONENT_CAP = 10
RANDOM_ORIENTATIONS = 100


class BoundId(str, enum.Enum):
    THM1 = "THM1"
    COR1 = "COR1"
    EQ3_EDGE = "EQ3_EDGE"
    EQ4_BIWEIGHTED = "EQ4_BIWEIGHTED"
    EQ5_CHAIN = "EQ5_CHAIN"
    EQ6_TERMWISE = "EQ6_TERMWISE"
    EQ7_HOM = "EQ7_HOM"
    EQ8_HOM_WEIGHTED = "EQ8_HOM_WEIGHTED"

    @classmethod
    def parse(cls, text: str) -> "BoundId":
        key = text.strip().upper()
        for b in cls:
            if b.value == key or b.value.split("_")[0] == key:
                return b
        raise ValueError(f"unknown bound {text!r}")


BOUND_ORDER = {b: i for i, b in enumerate(BoundId)}


class Verdict(str, enum.Enum):
    STRICT = "strict"
    EQUALITY = "equality"
    VIOLATION = "violation"


class NotRegularError(ValueError):
    pass


def verdict_of(lhs: int, rhs: int) -> Verdict:
    if lhs < rhs:
        return Verdict.STRICT
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.VIOLATION


@dataclass
class BoundReport:
    """Outcome of one check of ``lhs <= rhs``.

    ``proved`` marks bounds that are theorems in the checked regime: a
    violation there is a bug.  Outside it a violation is a finding.
    ``side_checks`` holds auxiliary identities verified along the way.
    """

    bound_id: BoundId
    graph6: str
    params: dict[str, str]
    verdict: Verdict
    lhs: int
    rhs: int
    proved: bool
    details: dict[str, Any] = field(default_factory=dict)
    side_checks: dict[str, bool] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.VIOLATION or not all(self.side_checks.values())

    @property
    def is_bug(self) -> bool:
        return self.proved and self.failed

    @property
    def is_finding(self) -> bool:
        return not self.proved and self.failed

    def sort_key(self) -> tuple:
        return (self.graph6, BOUND_ORDER[self.bound_id], json.dumps(self.params, sort_keys=True))

    def to_json(self) -> dict[str, Any]:
        return {
            "bound_id": self.bound_id.value,
            "graph6": self.graph6,
            "params": self.params,
            "verdict": self.verdict.value,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "proved": self.proved,
            "finding": self.is_finding,
            "side_checks": self.side_checks,
            "details": self.details,
        }


def _report(bound_id, g, params, x, y, proved, **kw) -> BoundReport:
    return BoundReport(
        bound_id=bound_id,
        graph6=write_graph6(g),
        params={k: str(v) for k, v in params.items()},
        verdict=verdict_of(x, y),
        lhs=x,
        rhs=y,
        proved=proved,
        **kw,
    )


def _regular_degree(g: Graph) -> int:
    d = is_regular(g)
    if d is None or d < 1:
        raise NotRegularError("graph must be d-regular with d >= 1")
    return d


def _activity(x) -> Fraction:
    x = to_rational(x)
    if x < 0:
        raise ValueError("activities must be nonnegative")
    return x


def extremal_polynomial(d: int) -> IntPolynomial:
    """Independence polynomial of ``K_{d,d}``: ``2(1+x)**d - 1``."""
    return binomial_power(d) * 2 - 1


def check_theorem1(g: Graph, lam=1, bound_id: BoundId = BoundId.THM1) -> BoundReport:
    """``P(lam, G)**(2d) <= (2(1+lam)**d - 1)**N`` for d-regular ``G``."""
    d = _regular_degree(g)
    lam = _activity(lam)
    n = g.n
    p = independence_polynomial(g)
    x, y = powered_sides(p(lam), n, extremal_polynomial(d)(lam), 2 * d)
    return _report(
        bound_id, g, {"lambda": lam, "d": d, "N": n}, x, y, True,
        details={"extremal": is_union_of_complete_bipartite(g, d), "P": p.to_json()},
    )


def check_corollary1(g: Graph) -> BoundReport:
    """Independent-set count: ``i(G)**(2d) <= (2**(d+1) - 1)**N``."""
    return check_theorem1(g, 1, BoundId.COR1)


def check_chain_eq5(g: Graph, lam=1, structural: bool | None = None) -> BoundReport:
    """``P(lam, G)**2 <= P(lam, G x K2)`` plus the pair correspondence.

    The structural side check counts pairs ``(A, B)`` with ``A``
    independent from ``B`` by size and compares with the independence
    polynomial of the double cover; it runs when ``n`` is within the
    pair-enumeration guard.
    """
    lam = _activity(lam)
    p = independence_polynomial(g)
    cover = independence_polynomial(double_cover(g))
    x, y = powered_sides(p(lam) ** 2, 1, cover(lam), 1)
    side: dict[str, bool] = {"coefficientwise": coeffwise_leq(p * p, cover).holds}
    if structural is None:
        structural = g.n <= size_limit(LEMMA_MAX_N)
    if structural:
        side["pair_correspondence"] = IntPolynomial(independent_from_series(g)) == cover
    return _report(
        BoundId.EQ5_CHAIN, g, {"lambda": lam, "N": g.n}, x, y, True,
        details={"i_G": sum(p.coeffs), "i_cover": sum(cover.coeffs)},
        side_checks=side,
    )


EQ3_PROVED_MAX_DEGREE = 5


def check_edge_weighted_eq3(g: Graph) -> BoundReport:
    """``i(G)**L <= prod_uv (2**d(u) + 2**d(v) - 1)**(L / (d(u) d(v)))``,
    with ``L`` the lcm of the edge degree products."""
    degs = g.degrees()
    if g.n == 0 or min(degs) == 0:
        raise ValueError("graph must have no isolated vertices")
    edges = g.edges()
    weights = [degs[u] * degs[v] for u, v in edges]
    big_l = math.lcm(*weights)
    x = count_independent_sets(g) ** big_l
    y = 1
    for (u, v), w in zip(edges, weights):
        y *= (2 ** degs[u] + 2 ** degs[v] - 1) ** (big_l // w)
    return _report(
        BoundId.EQ3_EDGE, g, {"N": g.n, "L": big_l}, x, y, max(degs) <= EQ3_PROVED_MAX_DEGREE,
    )


def _bipartite_regular(g: Graph) -> tuple[int, Bipartition]:
    d = _regular_degree(g)
    bp = canonical_bipartition(g, g.vertex_mask)
    if bp is None:
        raise ValueError("graph must be bipartite")
    return d, bp


def biweighted_extremal(d: int) -> BivariatePolynomial:
    """Profile of ``K_{d,d}``: ``(1+mu)**d + (1+lam)**d - 1``."""
    row = binomial_power(d).coeffs
    out = {(j, 0): c for j, c in enumerate(row)}
    for k, c in enumerate(row):
        out[(0, k)] = out.get((0, k), 0) + c
    out[(0, 0)] -= 1
    return BivariatePolynomial(out)


def check_biweighted_eq4(g: Graph, bp: Bipartition | None = None, mu=1, lam=1) -> BoundReport:
    """``Z(mu, lam)**(2d) <= ((1+mu)**d + (1+lam)**d - 1)**N`` for bipartite d-regular ``G``."""
    d, canonical = _bipartite_regular(g)
    bp = bp or canonical
    mu, lam = _activity(mu), _activity(lam)
    profile = bipartite_profile(g, bp).bivar
    rhs = (1 + mu) ** d + (1 + lam) ** d - 1
    x, y = powered_sides(profile.evaluate(mu, lam), g.n, rhs, 2 * d)
    return _report(
        BoundId.EQ4_BIWEIGHTED, g,
        {"mu": mu, "lambda": lam, "d": d, "N": g.n, "left": bp.left},
        x, y, True,
    )


def orientations(g: Graph, seed: int = 0) -> list[Bipartition]:
    """Bipartitions of a bipartite graph, one per choice of side per
    component up to a global swap.

    Beyond ``ORIENTATION_COMPONENT_CAP`` components: the canonical one plus
    ``RANDOM_ORIENTATIONS`` seeded random flips.
    """
    base = canonical_bipartition(g, g.vertex_mask)
    if base is None:
        raise ValueError("graph must be bipartite")
    comps = component_masks(g)
    if len(comps) <= ORIENTATION_COMPONENT_CAP:
        flips = range(1 << max(len(comps) - 1, 0))
    else:
        rng = random.Random(seed)
        flips = sorted({0} | {rng.getrandbits(len(comps) - 1) for _ in range(RANDOM_ORIENTATIONS)})
    out = []
    for f in flips:
        left = 0
        for i, comp in enumerate(comps):
            # component 0 is never flipped
            flip = i > 0 and f >> (i - 1) & 1
            left |= (base.right if flip else base.left) & comp
        out.append(Bipartition(left, g.vertex_mask & ~left, g.vertex_mask))
    return out


def termwise_sides(g: Graph) -> tuple[IntPolynomial, IntPolynomial, int]:
    """Polynomials compared by the termwise check and the copy count used.

    For even ``N``: ``P(G)**d`` against ``P(K_{d,d})**(N/2)``; for odd
    ``N`` both exponents are doubled.
    """
    d = _regular_degree(g)
    p = independence_polynomial(g)
    k = extremal_polynomial(d)
    if g.n % 2 == 0:
        return p ** d, k ** (g.n // 2), 1
    return p ** (2 * d), k ** g.n, 2


def check_termwise_eq6(g: Graph) -> BoundReport:
    """Coefficientwise comparison of ``d`` copies of ``G`` against ``N/2`` copies of ``K_{d,d}``.

    This is conjectural; a failure is a finding.  ``lhs``/``rhs`` hold the
    two sides evaluated at 1 so the sum of the slack equals ``rhs - lhs``.
    """
    lhs, rhs, scale = termwise_sides(g)
    cmp = coeffwise_leq(lhs, rhs)
    x, y = sum(lhs.coeffs), sum(rhs.coeffs)
    verdict = Verdict.EQUALITY if lhs == rhs else Verdict.STRICT if cmp.holds else Verdict.VIOLATION
    details: dict[str, Any] = {"slack": [str(s) for s in cmp.slack], "copies_scale": scale}
    if not cmp.holds:
        details["witness"] = {"k": cmp.witness, "lhs": str(cmp.lhs_coeff), "rhs": str(cmp.rhs_coeff)}
    report = _report(BoundId.EQ6_TERMWISE, g, {"N": g.n, "variant": "univariate"}, x, y, False, details=details)
    report.verdict = verdict
    return report


def check_biweighted_termwise(g: Graph, bp: Bipartition | None = None) -> BoundReport:
    """Bivariate analogue of :func:`check_termwise_eq6` on a bipartite regular graph."""
    d, canonical = _bipartite_regular(g)
    bp = bp or canonical
    profile = bipartite_profile(g, bp).bivar
    ext = biweighted_extremal(d)
    if g.n % 2 == 0:
        lhs, rhs = profile ** d, ext ** (g.n // 2)
    else:
        lhs, rhs = profile ** (2 * d), ext ** g.n
    keys = sorted(set(lhs.coeffs) | set(rhs.coeffs))
    bad = [k for k in keys if lhs.coeff(*k) > rhs.coeff(*k)]
    x, y = lhs.evaluate(1, 1), rhs.evaluate(1, 1)
    if bad:
        verdict = Verdict.VIOLATION
    else:
        verdict = Verdict.EQUALITY if lhs == rhs else Verdict.STRICT
    details: dict[str, Any] = {}
    if bad:
        details["violations"] = [
            {"class": list(k), "lhs": str(lhs.coeff(*k)), "rhs": str(rhs.coeff(*k))} for k in bad
        ]
    report = _report(
        BoundId.EQ6_TERMWISE, g, {"N": g.n, "variant": "biweighted", "left": bp.left},
        int(x), int(y), False, details=details,
    )
    report.verdict = verdict
    return report


def check_hom_bounds(g: Graph, h: TargetGraph, bound_id: BoundId | None = None) -> BoundReport:
    """``Z(G, H)**(2d) <= Z(K_{d,d}, H)**N``; proved for bipartite ``G``."""
    d = _regular_degree(g)
    if bound_id is None:
        unit = all(a == 1 for a in h.activities)
        bound_id = BoundId.EQ7_HOM if unit else BoundId.EQ8_HOM_WEIGHTED
    if bound_id is BoundId.EQ7_HOM:
        h = h.with_activities([1] * h.m)
    z_g = partition_function(g, h)
    z_k = partition_function(complete_bipartite(d, d), h)
    x, y = powered_sides(z_g, g.n, z_k, 2 * d)
    proved = canonical_bipartition(g, g.vertex_mask) is not None
    return _report(
        bound_id, g,
        {"d": d, "N": g.n, "target": json.dumps(h.to_json(), sort_keys=True)},
        x, y, proved,
        details={"Z_G": str(z_g), "Z_Kdd": str(z_k)},
    )


# -- scanning ---------------------------------------------------------------

@dataclass
class ScanConfig:
    bounds: tuple[BoundId, ...]
    lambdas: tuple[Fraction, ...] = DEFAULT_LAMBDAS
    mus: tuple[Fraction, ...] | None = None
    hom_targets: tuple[TargetGraph, ...] | None = None

    def resolved_mus(self) -> tuple[Fraction, ...]:
        return self.lambdas if self.mus is None else self.mus

    def resolved_targets(self) -> tuple[TargetGraph, ...]:
        if self.hom_targets is not None:
            return self.hom_targets
        return (TargetGraph.from_graph(complete_graph(3)),)


@dataclass
class Skip:
    graph6: str
    bound_id: BoundId
    reason: str

    def to_json(self) -> dict:
        return {"graph6": self.graph6, "bound_id": self.bound_id.value, "reason": self.reason}


def _checks_for(g: Graph, cfg: ScanConfig) -> tuple[list[BoundReport], list[Skip]]:
    reports: list[BoundReport] = []
    skips: list[Skip] = []
    for bound in cfg.bounds:
        try:
            if bound is BoundId.THM1:
                reports.extend(check_theorem1(g, lam) for lam in cfg.lambdas)
            elif bound is BoundId.COR1:
                reports.append(check_corollary1(g))
            elif bound is BoundId.EQ3_EDGE:
                reports.append(check_edge_weighted_eq3(g))
            elif bound is BoundId.EQ4_BIWEIGHTED:
                _bipartite_regular(g)
                for bp in orientations(g):
                    for mu in cfg.resolved_mus():
                        for lam in cfg.lambdas:
                            reports.append(check_biweighted_eq4(g, bp, mu, lam))
            elif bound is BoundId.EQ5_CHAIN:
                reports.extend(check_chain_eq5(g, lam) for lam in cfg.lambdas)
            elif bound is BoundId.EQ6_TERMWISE:
                reports.append(check_termwise_eq6(g))
            elif bound is BoundId.EQ7_HOM:
                for h in cfg.resolved_targets():
                    reports.append(check_hom_bounds(g, h, BoundId.EQ7_HOM))
            elif bound is BoundId.EQ8_HOM_WEIGHTED:
                for lam in cfg.lambdas:
                    if lam > 0:
                        reports.append(check_hom_bounds(g, independent_set_target(lam), BoundId.EQ8_HOM_WEIGHTED))
        except ValueError as exc:
            skips.append(Skip(write_graph6(g), bound, str(exc)))
    return reports, skips


def _scan_one(args):
    g, cfg = args
    return _checks_for(g, cfg)


@dataclass
class ScanReport:
    reports: list[BoundReport] = field(default_factory=list)
    skipped: list[Skip] = field(default_factory=list)
    graphs: int = 0

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            row = out.setdefault(r.bound_id.value, {v.value: 0 for v in Verdict})
            row[r.verdict.value] += 1
        return out

    @property
    def equality_cases(self) -> list[BoundReport]:
        return [r for r in self.reports if r.verdict is Verdict.EQUALITY]

    @property
    def violations(self) -> list[BoundReport]:
        """Failures inside proved regimes (implementation bugs)."""
        return [r for r in self.reports if r.is_bug]

    @property
    def findings(self) -> list[BoundReport]:
        return [r for r in self.reports if r.is_finding]

    def to_json(self) -> dict[str, Any]:
        return {
            "graphs": self.graphs,
            "summary": self.summary(),
            "equality_cases": [r.to_json() for r in self.equality_cases],
            "violations": [r.to_json() for r in self.violations],
            "findings": [r.to_json() for r in self.findings],
            "skipped": [s.to_json() for s in self.skipped],
            "reports": [r.to_json() for r in self.reports],
        }

    def to_csv(self) -> str:
        return reports_to_csv(self.reports)


CSV_FIELDS = ("bound_id", "graph6", "params", "verdict", "lhs", "rhs")


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        params = ";".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        w.writerow([r.bound_id.value, r.graph6, params, r.verdict.value, str(r.lhs), str(r.rhs)])
    return buf.getvalue()


def scan(source: Iterable[Graph], bounds: Sequence[BoundId], lambdas: Sequence | None = None,
         mus: Sequence | None = None, hom_targets: Sequence[TargetGraph] | None = None,
         jobs: int = 1) -> ScanReport:
    """Run the selected checks over a stream of graphs.

    Graphs failing a bound's preconditions are recorded in ``skipped``.
    Output order is sorted by graph6, bound and parameters, so it does not
    depend on ``jobs``.
    """
    cfg = ScanConfig(
        bounds=tuple(bounds),
        lambdas=tuple(_activity(x) for x in (lambdas if lambdas is not None else DEFAULT_LAMBDAS)),
        mus=None if mus is None else tuple(_activity(x) for x in mus),
        hom_targets=None if hom_targets is None else tuple(hom_targets),
    )
    graphs = list(source)
    if jobs > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, [(g, cfg) for g in graphs], chunksize=4))
    else:
        results = [_checks_for(g, cfg) for g in graphs]
    out = ScanReport(graphs=len(graphs))
    for reps, skips in results:
        out.reports.extend(reps)
        out.skipped.extend(skips)
    out.reports.sort(key=BoundReport.sort_key)
    out.skipped.sort(key=lambda s: (s.graph6, BOUND_ORDER[s.bound_id]))
    return out
