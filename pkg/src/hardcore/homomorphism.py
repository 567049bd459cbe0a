"""Graph homomorphism counts graded by weight class.

A homomorphism ``f: G -> H`` has weight ``prod_v act[f(v)]``, which is
determined by its image multiplicities ``e_i = |f^{-1}(i)|``.  We keep
the exact count of homomorphisms for each exponent vector ``e``.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_arith import IntPolynomial, to_rational
from .graph_core import Graph, bits, component_masks
from .indset import SizeError, size_limit

HOM_MAX_N = 20


@dataclass(frozen=True)
class TargetGraph:
    """Target graph ``H``; loops allowed (``adj[i]`` has bit ``i`` set)."""

    m: int
    adj: tuple[int, ...]
    activities: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.adj) != self.m or len(self.activities) != self.m:
            raise ValueError("adjacency and activities must have length m")
        for i, nb in enumerate(self.adj):
            for j in bits(nb):
                if j >= self.m or not self.adj[j] >> i & 1:
                    raise ValueError(f"asymmetric target adjacency at ({i}, {j})")
        if any(a <= 0 for a in self.activities):
            raise ValueError("activities must be positive")

    @classmethod
    def build(
        cls,
        m: int,
        edges: Iterable[Sequence[int]] = (),
        loops: Iterable[int] = (),
        activities: Sequence | None = None,
    ) -> "TargetGraph":
        adj = [0] * m
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        for v in loops:
            adj[v] |= 1 << v
        acts = tuple(to_rational(a) for a in activities) if activities is not None else (Fraction(1),) * m
        return cls(m, tuple(adj), acts)

    @classmethod
    def from_graph(cls, g: Graph, loops: Iterable[int] = (), activities: Sequence | None = None):
        return cls.build(g.n, g.edges(), loops, activities)

    @property
    def loops(self) -> list[int]:
        return [i for i in range(self.m) if self.adj[i] >> i & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.m) for j in bits(self.adj[i]) if i < j]

    def with_activities(self, activities: Sequence) -> "TargetGraph":
        return TargetGraph(self.m, self.adj, tuple(to_rational(a) for a in activities))

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "adj": [[j for j in bits(self.adj[i]) if j != i] for i in range(self.m)],
            "loops": self.loops,
            "activities": [str(a) for a in self.activities],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "TargetGraph":
        if isinstance(data, str):
            data = json.loads(data)
        m = int(data["m"])
        edges = [(i, int(j)) for i, row in enumerate(data.get("adj", [])) for j in row]
        return cls.build(m, edges, data.get("loops", []), data.get("activities"))


def independent_set_target(lam=1) -> TargetGraph:
    """``K_2`` with a loop on vertex 1: homomorphisms into it are independent sets.

    Vertex 0 ("occupied") carries activity ``lam``; vertex 1 carries 1.
    """
    return TargetGraph.build(2, [(0, 1)], loops=[1], activities=[lam, 1])


@dataclass
class WeightClassDistribution:
    m: int
    classes: dict[tuple[int, ...], int] = field(default_factory=dict)

    @classmethod
    def unit(cls, m: int) -> "WeightClassDistribution":
        """Distribution of the empty source graph (one empty map)."""
        return cls(m, {(0,) * m: 1})

    def total(self) -> int:
        return sum(self.classes.values())

    def count(self, cls_vector: Sequence[int]) -> int:
        return self.classes.get(tuple(cls_vector), 0)

    def __eq__(self, other):
        if not isinstance(other, WeightClassDistribution):
            return NotImplemented
        return self.m == other.m and self.classes == other.classes

    def to_json(self) -> list[dict]:
        return [{"class": list(k), "count": str(c)} for k, c in sorted(self.classes.items())]


def _bfs_order(g: Graph, comp: int) -> list[int]:
    order = []
    seen = root = comp & -comp
    frontier = [root.bit_length() - 1]
    while frontier:
        order.extend(frontier)
        nxt = []
        for v in frontier:
            for u in bits(g.adj[v] & comp & ~seen):
                seen |= 1 << u
                nxt.append(u)
        frontier = nxt
    return order


def _component_distribution(g: Graph, comp: int, h: TargetGraph) -> dict[tuple[int, ...], int]:
    order = _bfs_order(g, comp)
    position = {v: i for i, v in enumerate(order)}
    # earlier neighbours of each vertex in the BFS order
    back = [[position[u] for u in bits(g.adj[v] & comp) if position[u] < i] for i, v in enumerate(order)]
    all_targets = (1 << h.m) - 1
    image = [0] * len(order)
    exps = [0] * h.m
    out: dict[tuple[int, ...], int] = defaultdict(int)
    k = len(order)

    def rec(i: int) -> None:
        if i == k:
            out[tuple(exps)] += 1
            return
        allowed = all_targets
        for j in back[i]:
            allowed &= h.adj[image[j]]
        for c in bits(allowed):
            image[i] = c
            exps[c] += 1
            rec(i + 1)
            exps[c] -= 1

    rec(0)
    return dict(out)


def distribution_convolve(d1: WeightClassDistribution, d2: WeightClassDistribution) -> WeightClassDistribution:
    """Distribution for the disjoint union of the two source graphs."""
    if d1.m != d2.m:
        raise ValueError("distributions refer to different target graphs")
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for k1, c1 in d1.classes.items():
        for k2, c2 in d2.classes.items():
            out[tuple(a + b for a, b in zip(k1, k2))] += c1 * c2
    return WeightClassDistribution(d1.m, dict(out))


def distribution_power(d: WeightClassDistribution, t: int) -> WeightClassDistribution:
    if t < 0:
        raise ValueError("power must be nonnegative")
    result = WeightClassDistribution.unit(d.m)
    base = d
    while t:
        if t & 1:
            result = distribution_convolve(result, base)
        t >>= 1
        if t:
            base = distribution_convolve(base, base)
    return result


def hom_distribution(g: Graph, h: TargetGraph) -> WeightClassDistribution:
    """Weight-class histogram of ``Hom(g, h)``.

    Each component is searched by backtracking in BFS order, restricting a
    vertex's image to the common neighbourhood (in ``h``) of its already
    mapped neighbours; components are then combined by convolution.
    """
    limit = size_limit(HOM_MAX_N)
    result = WeightClassDistribution.unit(h.m)
    for comp in component_masks(g):
        if comp.bit_count() > limit:
            raise SizeError(f"homomorphism search needs components of <= {limit} vertices")
        part = WeightClassDistribution(h.m, _component_distribution(g, comp, h))
        result = distribution_convolve(result, part)
    return result


def brute_force_distribution(g: Graph, h: TargetGraph) -> WeightClassDistribution:
    """Oracle: test every one of the ``m**n`` vertex maps."""
    edges = g.edges()
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for f in itertools.product(range(h.m), repeat=g.n):
        if all(h.adj[f[u]] >> f[v] & 1 for u, v in edges):
            exps = [0] * h.m
            for c in f:
                exps[c] += 1
            out[tuple(exps)] += 1
    return WeightClassDistribution(h.m, dict(out))


def distribution_weight(d: WeightClassDistribution, activities: Sequence) -> Fraction:
    acts = [to_rational(a) for a in activities]
    total = Fraction(0)
    for k, c in d.classes.items():
        w = Fraction(c)
        for a, e in zip(acts, k):
            if e:
                w *= a ** e
        total += w
    return total


def partition_function(g: Graph, h: TargetGraph) -> Fraction:
    """``Z(G, H) = sum over homomorphisms f of prod_v act[f(v)]``."""
    return distribution_weight(hom_distribution(g, h), h.activities)


def occupation_polynomial(d: WeightClassDistribution, vertex: int = 0) -> IntPolynomial:
    """Collapse a distribution to a polynomial in the activity of one target vertex."""
    out: dict[int, int] = defaultdict(int)
    for k, c in d.classes.items():
        out[k[vertex]] += c
    top = max(out, default=-1)
    return IntPolynomial(out.get(i, 0) for i in range(top + 1))


@dataclass(frozen=True)
class DominationResult:
    holds: bool
    witness: tuple[int, ...] | None = None
    source_count: int | None = None
    target_count: int | None = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "source_count": None if self.source_count is None else str(self.source_count),
            "target_count": None if self.target_count is None else str(self.target_count),
        }


def injection_domination(source: WeightClassDistribution, target: WeightClassDistribution) -> DominationResult:
    """Does a weight-preserving injection from ``source`` into ``target`` exist?

    Weights must match exactly, so this is per-class domination; the
    first violating class (in sorted order) is reported.
    """
    if source.m != target.m:
        raise ValueError("distributions refer to different target graphs")
    for k in sorted(source.classes):
        s, t = source.classes[k], target.classes.get(k, 0)
        if s > t:
            return DominationResult(False, k, s, t)
    return DominationResult(True)
