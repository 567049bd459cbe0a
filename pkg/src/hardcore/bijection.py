"""Pairs of vertex subsets and the size-preserving involution that swaps
``I(G) x I(G)`` with the pairs that are mutually independent and span a
bipartite subgraph.

Families (``G`` any simple graph):

* ``K``: pairs ``(A, B)`` with ``G[A | B]`` bipartite;
* ``J``: pairs in ``K`` with no edge between ``A`` and ``B``;
* ``I_PRODUCT``: pairs of independent sets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph_core import Graph, bits, canonical_bipartition
from .indset import SizeError, independence_polynomial, size_limit, subset_neighbourhoods

LEMMA_MAX_N = 13


class FamilyKind(enum.Enum):
    K = "K"
    J = "J"
    I_PRODUCT = "I_PRODUCT"


@dataclass(frozen=True)
class VertexPair:
    a: int
    b: int

    @property
    def size(self) -> int:
        return self.a.bit_count() + self.b.bit_count()

    def as_lists(self) -> tuple[list[int], list[int]]:
        return list(bits(self.a)), list(bits(self.b))


@dataclass
class PairFamily:
    kind: FamilyKind
    members: list[VertexPair]

    def __len__(self) -> int:
        return len(self.members)


def is_independent_from(g: Graph, a: int, b: int) -> bool:
    """No edge of ``g`` joins a vertex of ``a`` to a vertex of ``b``."""
    return all(not (g.adj[v] & b) for v in bits(a))


def _is_independent(g: Graph, s: int) -> bool:
    return is_independent_from(g, s, s)


def in_family(g: Graph, pair: VertexPair, kind: FamilyKind) -> bool:
    if kind is FamilyKind.I_PRODUCT:
        return _is_independent(g, pair.a) and _is_independent(g, pair.b)
    if canonical_bipartition(g, pair.a | pair.b) is None:
        return False
    return kind is FamilyKind.K or is_independent_from(g, pair.a, pair.b)


def involution(g: Graph, pair: VertexPair) -> VertexPair:
    """Swap the parts of ``A`` and ``B`` lying on the second side of ``A | B``.

    With ``(W1, W2)`` the canonical bipartition of ``W = A | B`` the image is
    ``((A & W1) | (B & W2), (A & W2) | (B & W1))``.
    """
    a, b = pair.a, pair.b
    bp = canonical_bipartition(g, a | b)
    if bp is None:
        raise ValueError("involution is only defined when G[A | B] is bipartite")
    w1, w2 = bp.left, bp.right
    return VertexPair((a & w1) | (b & w2), (a & w2) | (b & w1))


def _check_lemma_size(n: int) -> None:
    limit = size_limit(LEMMA_MAX_N)
    if n > limit:
        raise SizeError(f"pair enumeration needs n <= {limit}, got {n}")


@dataclass
class SubsetTables:
    """Per-subset lookup tables for vectorised pair scans."""

    subsets: np.ndarray
    neighbourhood: np.ndarray
    independent: np.ndarray
    bipartite: np.ndarray
    left: np.ndarray
    size: np.ndarray


def subset_tables(g: Graph) -> SubsetTables:
    n = g.n
    dtype = np.uint32 if n <= 32 else np.uint64
    subsets = np.arange(1 << n, dtype=dtype)
    nbhd = subset_neighbourhoods(g.adj, n).astype(dtype)
    bip = np.zeros(1 << n, dtype=bool)
    left = np.zeros(1 << n, dtype=dtype)
    for s in range(1 << n):
        bp = canonical_bipartition(g, s)
        if bp is not None:
            bip[s] = True
            left[s] = bp.left
    return SubsetTables(
        subsets=subsets,
        neighbourhood=nbhd,
        independent=(nbhd & subsets) == 0,
        bipartite=bip,
        left=left,
        size=np.bitwise_count(subsets).astype(np.int64),
    )


def _chunks(n: int, dtype, budget: int = 1 << 18):
    total = 1 << n
    rows = max(1, budget >> n)
    for start in range(0, total, rows):
        yield np.arange(start, min(start + rows, total), dtype=dtype)[:, None]


def family_mask(t: SubsetTables, a: np.ndarray, b: np.ndarray, kind: FamilyKind) -> np.ndarray:
    if kind is FamilyKind.I_PRODUCT:
        return t.independent[a] & t.independent[b]
    mask = t.bipartite[a | b]
    if kind is FamilyKind.J:
        mask &= (t.neighbourhood[a] & b) == 0
    return mask


def enumerate_family(g: Graph, kind: FamilyKind) -> PairFamily:
    """All pairs ``(A, B)`` of vertex subsets belonging to ``kind``."""
    _check_lemma_size(g.n)
    t = subset_tables(g)
    b = t.subsets[None, :]
    members = []
    for a in _chunks(g.n, b.dtype):
        rows, cols = np.nonzero(family_mask(t, a, b, kind))
        members.extend(VertexPair(int(a[r, 0]), int(c)) for r, c in zip(rows, cols))
    return PairFamily(kind, members)


def pair_size_series(g: Graph, kind: FamilyKind) -> list[int]:
    """``out[k]`` = number of pairs in the family with ``|A| + |B| = k``."""
    _check_lemma_size(g.n)
    t = subset_tables(g)
    b = t.subsets[None, :]
    hist = np.zeros(2 * g.n + 1, dtype=np.int64)
    for a in _chunks(g.n, b.dtype):
        m = family_mask(t, a, b, kind)
        sizes = (t.size[a] + t.size[b])[m]
        hist += np.bincount(sizes, minlength=2 * g.n + 1)
    return [int(c) for c in hist]


def independent_from_series(g: Graph) -> list[int]:
    """Pairs ``(A, B)`` with ``A`` independent from ``B``, counted by ``|A| + |B|``.

    These are exactly the independent sets of the bipartite double cover.
    """
    _check_lemma_size(g.n)
    subsets = np.arange(1 << g.n, dtype=np.uint64)
    nbhd = subset_neighbourhoods(g.adj, g.n)
    size = np.bitwise_count(subsets).astype(np.int64)
    hist = np.zeros(2 * g.n + 1, dtype=np.int64)
    for a in _chunks(g.n, np.uint64):
        ok = (nbhd[a] & subsets[None, :]) == 0
        hist += np.bincount((size[a] + size[None, :])[ok], minlength=2 * g.n + 1)
    return [int(c) for c in np.trim_zeros(hist, "b")]


@dataclass
class LemmaReport:
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    family_sizes: dict[str, int] = field(default_factory=dict)
    polynomial_identity: bool = False
    counterexample: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and self.polynomial_identity

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "n": self.n,
            "checks": [{"name": k, "passed": v} for k, v in self.checks.items()],
            "family_sizes": self.family_sizes,
            "polynomial_identity": self.polynomial_identity,
            "passed": self.passed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


_CHECKS = ("involution", "size_preserved", "union_preserved", "I2_to_J", "J_to_I2", "inclusions")


def verify_lemma(g: Graph) -> LemmaReport:
    """Check the involution on every pair of vertex subsets of ``g``.

    Verifies that it is an involution of ``K`` fixing the union ``A | B``,
    that it preserves size, that it maps ``I x I`` into ``J`` and ``J`` into
    ``I x I``, and that the size series of ``J`` equals ``P(x, G)**2``.
    """
    n = g.n
    _check_lemma_size(n)
    t = subset_tables(g)
    report = LemmaReport(n=n, checks={name: True for name in _CHECKS})
    b = t.subsets[None, :]
    counts = {kind: 0 for kind in FamilyKind}
    j_hist = np.zeros(2 * n + 1, dtype=np.int64)

    for a in _chunks(n, b.dtype):
        a2 = np.broadcast_to(a, (a.shape[0], b.shape[1]))
        b2 = np.broadcast_to(b, a2.shape)
        in_k = t.bipartite[a2 | b2]
        # everything below lives inside K
        a_k, b_k = a2[in_k], b2[in_k]
        union = a_k | b_k
        in_j = (t.neighbourhood[a_k] & b_k) == 0
        in_i2 = t.independent[a_k] & t.independent[b_k]
        counts[FamilyKind.K] += len(a_k)
        counts[FamilyKind.J] += int(in_j.sum())
        counts[FamilyKind.I_PRODUCT] += int(in_i2.sum())
        size = t.size[a_k] + t.size[b_k]
        j_hist += np.bincount(size[in_j], minlength=2 * n + 1)

        w1 = t.left[union]
        w2 = union & ~w1
        a_img = (a_k & w1) | (b_k & w2)
        b_img = (a_k & w2) | (b_k & w1)
        img_union = a_img | b_img
        w1b = t.left[img_union]
        w2b = img_union & ~w1b
        a_back = (a_img & w1b) | (b_img & w2b)
        b_back = (a_img & w2b) | (b_img & w1b)
        img_in_j = t.bipartite[img_union] & ((t.neighbourhood[a_img] & b_img) == 0)
        img_in_i2 = t.independent[a_img] & t.independent[b_img]

        failures = {
            "involution": (a_back != a_k) | (b_back != b_k),
            "size_preserved": t.size[a_img] + t.size[b_img] != size,
            "union_preserved": img_union != union,
            "I2_to_J": in_i2 & ~img_in_j,
            "J_to_I2": in_j & ~img_in_i2,
        }
        for name, bad in failures.items():
            if report.checks[name] and bad.any():
                report.checks[name] = False
                if report.counterexample is None:
                    i = int(np.argmax(bad))
                    report.counterexample = {
                        "check": name,
                        "A": list(bits(int(a_k[i]))),
                        "B": list(bits(int(b_k[i]))),
                    }

    # I x I is contained in K iff every pair of independent sets was seen inside K
    independent_sets = int(t.independent.sum())
    report.checks["inclusions"] = counts[FamilyKind.I_PRODUCT] == independent_sets ** 2
    report.family_sizes = {kind.value: counts[kind] for kind in FamilyKind}
    report.checks["bijection_counts"] = counts[FamilyKind.J] == counts[FamilyKind.I_PRODUCT]
    p = independence_polynomial(g)
    square = (p * p).coeffs
    report.polynomial_identity = list(square) == [int(c) for c in np.trim_zeros(j_hist, "b")]
    return report
