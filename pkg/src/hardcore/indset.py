"""Independence polynomials (hard-core partition functions) of graphs."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .exact_arith import BivariatePolynomial, IntPolynomial
from .graph_core import Bipartition, Graph, bits, canonical_bipartition

BRUTE_FORCE_MAX_N = 26


def size_limit(default: int) -> int:
    """Enumeration guard, overridable through ``HARDCORE_MAX_N``."""
    raw = os.environ.get("HARDCORE_MAX_N")
    return int(raw) if raw else default


class SizeError(ValueError):
    pass


def _mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binomial_row(m: int) -> list[int]:
    row = [1]
    for _ in range(m):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return row


def _components(adj, mask: int) -> list[int]:
    comps = []
    while mask:
        comp = frontier = mask & -mask
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= adj[v]
            frontier = reach & mask & ~comp
            comp |= frontier
        comps.append(comp)
        mask &= ~comp
    return comps


def _branch_vertex(adj, mask: int) -> tuple[int, int]:
    """Maximum-degree vertex within ``mask`` (ties to the lowest index)."""
    best_v, best_deg = -1, -1
    for v in bits(mask):
        deg = (adj[v] & mask).bit_count()
        if deg > best_deg:
            best_v, best_deg = v, deg
    return best_v, best_deg


def independence_polynomial(g: Graph) -> IntPolynomial:
    """``P(x, G) = sum over independent sets I of x**|I|``.

    Components are multiplied; within a component we branch on a
    maximum-degree vertex ``v`` using ``P(G) = P(G - v) + x P(G - N[v])``,
    memoising on the vertex bitset.
    """
    adj = g.adj
    memo: dict[int, list[int]] = {}

    def connected(mask: int) -> list[int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v, deg = _branch_vertex(adj, mask)
        if deg == 0:
            res = _binomial_row(mask.bit_count())
        else:
            without = solve(mask & ~(1 << v))
            closed = solve(mask & ~(adj[v] | (1 << v)))
            res = without + [0] * max(0, len(closed) + 1 - len(without))
            for k, c in enumerate(closed):
                res[k + 1] += c
        memo[mask] = res
        return res

    def solve(mask: int) -> list[int]:
        result = [1]
        isolated = 0
        for comp in _components(adj, mask):
            if comp & (comp - 1) == 0:
                isolated += 1
            else:
                result = _mul(result, connected(comp))
        if isolated:
            result = _mul(result, _binomial_row(isolated))
        return result

    return IntPolynomial(solve(g.vertex_mask))


def count_independent_sets(g: Graph) -> int:
    """``i(G)``, the number of independent sets including the empty set."""
    return sum(independence_polynomial(g).coeffs)


def subset_neighbourhoods(adj, n: int) -> np.ndarray:
    """``out[S]`` = union of neighbourhoods of the vertices in ``S``, for all ``S``."""
    table = np.zeros(1 << n, dtype=np.uint64)
    for v in range(n):
        half = 1 << v
        table[half:2 * half] = table[:half] | np.uint64(adj[v])
    return table


def brute_force_polynomial(g: Graph) -> IntPolynomial:
    """Histogram of independent-set sizes by scanning every vertex subset.

    Testing oracle; deliberately unrelated to the branching algorithm.
    """
    n = g.n
    limit = size_limit(BRUTE_FORCE_MAX_N)
    if n > limit:
        raise SizeError(f"brute force needs n <= {limit}, got {n}")
    low = min(n, 16)
    high = n - low
    low_mask = (1 << low) - 1
    low_adj = [a & low_mask for a in g.adj[:low]]
    cross_adj = [a >> low for a in g.adj[:low]]
    sizes = np.bitwise_count(np.arange(1 << low, dtype=np.uint64)).astype(np.int64)
    subsets = np.arange(1 << low, dtype=np.uint64)
    low_ok = (subset_neighbourhoods(low_adj, low) & subsets) == 0
    cross = subset_neighbourhoods(cross_adj, low)
    high_adj = [g.adj[low + i] >> low for i in range(high)]
    hist = np.zeros(n + 1, dtype=np.int64)
    for h in range(1 << high):
        if any(high_adj[i] & h for i in bits(h)):
            continue
        ok = low_ok & ((cross & np.uint64(h)) == 0)
        hist += np.bincount(sizes[ok] + h.bit_count(), minlength=n + 1)[: n + 1]
    return IntPolynomial(int(c) for c in hist)


@dataclass(frozen=True)
class BipartiteProfile:
    """Counts of independent sets by how many vertices lie on each side.

    In ``bivar`` the exponent of ``mu`` counts left-side vertices and the
    exponent of ``lam`` counts right-side vertices.
    """

    bivar: BivariatePolynomial
    bipartition: Bipartition


def _bmul(a: dict, b: dict) -> dict:
    out: dict[tuple[int, int], int] = {}
    for (j1, k1), c1 in a.items():
        for (j2, k2), c2 in b.items():
            key = (j1 + j2, k1 + k2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def bipartite_profile(g: Graph, bp: Bipartition | None = None) -> BipartiteProfile:
    """Bivariate independence polynomial relative to a bipartition of all of ``V(g)``.

    Defaults to the canonical bipartition.  Same branching scheme as
    :func:`independence_polynomial`, remembering which side a chosen vertex is on.
    """
    full = g.vertex_mask
    if bp is None:
        bp = canonical_bipartition(g, full)
        if bp is None:
            raise ValueError("graph is not bipartite")
    if bp.over != full or bp.left | bp.right != full or bp.left & bp.right:
        raise ValueError("bipartition must split the whole vertex set")
    for side in (bp.left, bp.right):
        if any(g.adj[v] & side for v in bits(side)):
            raise ValueError("bipartition side is not independent")
    adj = g.adj
    left = bp.left
    memo: dict[int, dict] = {}

    def edgeless(mask: int) -> dict:
        a = _binomial_row((mask & left).bit_count())
        b = _binomial_row((mask & ~left).bit_count())
        return {(j, k): x * y for j, x in enumerate(a) for k, y in enumerate(b)}

    def connected(mask: int) -> dict:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v, deg = _branch_vertex(adj, mask)
        if deg == 0:
            res = edgeless(mask)
        else:
            res = dict(solve(mask & ~(1 << v)))
            dj, dk = (1, 0) if left >> v & 1 else (0, 1)
            for (j, k), c in solve(mask & ~(adj[v] | (1 << v))).items():
                key = (j + dj, k + dk)
                res[key] = res.get(key, 0) + c
        memo[mask] = res
        return res

    def solve(mask: int) -> dict:
        result = {(0, 0): 1}
        isolated = 0
        for comp in _components(adj, mask):
            if comp & (comp - 1) == 0:
                isolated |= comp
            else:
                result = _bmul(result, connected(comp))
        if isolated:
            result = _bmul(result, edgeless(isolated))
        return result

    return BipartiteProfile(BivariatePolynomial(solve(full)), bp)


def brute_force_profile(g: Graph, bp: Bipartition) -> BivariatePolynomial:
    """Oracle for :func:`bipartite_profile` by subset enumeration (small ``n``)."""
    out: dict[tuple[int, int], int] = {}
    for s in range(1 << g.n):
        if any(g.adj[v] & s for v in bits(s)):
            continue
        key = ((s & bp.left).bit_count(), (s & bp.right).bit_count())
        out[key] = out.get(key, 0) + 1
    return BivariatePolynomial(out)
