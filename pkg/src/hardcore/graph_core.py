"""Graphs over a small vertex universe, stored as per-vertex neighbour bitsets.

Vertices are ``0..n-1``; ``adj[v]`` is an int whose bit ``u`` is set iff
``uv`` is an edge.  Graphs are immutable once built.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a construction would exceed ``MAX_VERTICES``."""


class GraphFormatError(ValueError):
    """Malformed graph6 / edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class NotBipartite(Exception):
    """Raised by helpers that need a bipartition when none exists."""


# -- bitset helpers ---------------------------------------------------------

def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _check_capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds the universe size {MAX_VERTICES}")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        _check_capacity(self.n)
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        _check_capacity(n)
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Bipartition:
    """Split of ``over`` into two sides, each independent in the graph."""

    left: int
    right: int
    over: int

    def swapped(self) -> "Bipartition":
        return Bipartition(self.right, self.left, self.over)


# -- constructions ----------------------------------------------------------

def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs a >= 1 and b >= 1")
    _check_capacity(a + b)
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    total = sum(g.n for g in gs)
    _check_capacity(total)
    adj: list[int] = []
    offset = 0
    for g in gs:
        adj.extend(nb << offset for nb in g.adj)
        offset += g.n
    return Graph(total, tuple(adj))


def double_cover(g: Graph) -> Graph:
    """Bipartite double cover: ``(v, i)`` is vertex ``v + i*n``."""
    n = g.n
    _check_capacity(2 * n)
    adj = [nb << n for nb in g.adj] + list(g.adj)
    return Graph(2 * n, tuple(adj))


def induced(g: Graph, s: int) -> tuple[Graph, list[int]]:
    """Subgraph induced by bitset ``s``, relabelled to ``0..k-1``.

    Returns the graph and ``labels`` with ``labels[new] = old``.
    """
    labels = list(bits(s))
    index = {old: new for new, old in enumerate(labels)}
    adj = []
    for old in labels:
        adj.append(mask_of(index[u] for u in bits(g.adj[old] & s)))
    return Graph(len(labels), tuple(adj)), labels


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        adj[perm[v]] = mask_of(perm[u] for u in bits(g.adj[v]))
    return Graph(g.n, tuple(adj))


# -- structure --------------------------------------------------------------

def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitsets, ordered by minimum vertex."""
    remaining = g.vertex_mask if within is None else within
    adj = g.adj
    comps = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= adj[v]
            frontier = reach & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(g: Graph) -> list[int]:
    return component_masks(g)


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def is_regular(g: Graph) -> int | None:
    """The common degree, or ``None`` when the graph is not regular.

    The empty graph on zero vertices has no well-defined degree and
    returns ``None``.
    """
    degs = set(g.degrees())
    return degs.pop() if len(degs) == 1 else None


def is_independent(g: Graph, s: int) -> bool:
    return all(not (g.adj[v] & s) for v in bits(s))


def canonical_bipartition(g: Graph, w: int) -> Bipartition | None:
    """Deterministic 2-colouring of ``G[w]``, or ``None`` on an odd cycle.

    Each component is coloured by BFS from its minimum-index vertex, which
    goes on the left.  The result depends only on ``(g, w)``.
    """
    adj = g.adj
    left = right = 0
    remaining = w
    while remaining:
        root = remaining & -remaining
        seen = frontier = root
        left |= root
        on_left = True
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= adj[v]
            frontier = reach & remaining & ~seen
            seen |= frontier
            on_left = not on_left
            if on_left:
                left |= frontier
            else:
                right |= frontier
        remaining &= ~seen
    for v in bits(left):
        if adj[v] & left:
            return None
    for v in bits(right):
        if adj[v] & right:
            return None
    return Bipartition(left, right, w)


def is_bipartite(g: Graph) -> bool:
    return canonical_bipartition(g, g.vertex_mask) is not None


def is_union_of_complete_bipartite(g: Graph, d: int) -> bool:
    """True iff every component of ``g`` is ``K_{d,d}``."""
    if g.n == 0:
        return True
    for comp in component_masks(g):
        if comp.bit_count() != 2 * d:
            return False
        bp = canonical_bipartition(g, comp)
        if bp is None or bp.left.bit_count() != d:
            return False
        if any(g.adj[v] != bp.right for v in bits(bp.left)):
            return False
    return True


# -- canonical forms --------------------------------------------------------

def _code(adj: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle bit code of the graph relabelled so ``order[i]`` -> ``i``."""
    n = len(order)
    code = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def brute_canonical_form(g: Graph) -> tuple[int, int]:
    """Minimal adjacency code over all ``n!`` labellings (small ``n`` only)."""
    best = min(_code(g.adj, p) for p in itertools.permutations(range(g.n)))
    return g.n, best


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbour counts into each cell."""
    while True:
        masks = [mask_of(c) for c in cells]
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for k in keys:
                new_cells.append([v for v in cell if sig[v] == k])
        cells = new_cells
        if not changed:
            return cells


def _connected_canonical_code(g: Graph) -> int:
    adj = g.adj
    degs = g.degrees()
    start = [[v for v in range(g.n) if degs[v] == k] for k in sorted(set(degs))]
    best: list[int | None] = [None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = _code(adj, [c[0] for c in cells])
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        cell = cells[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(start)
    return best[0] if best[0] is not None else 0


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-complete invariant of ``g``.

    Components are labelled by individualisation-refinement, taking the
    minimal adjacency code over the leaves of the search tree; the form of
    the whole graph is the sorted multiset of component forms.
    """
    parts = []
    for comp in component_masks(g):
        sub, _ = induced(g, comp)
        parts.append((sub.n, _connected_canonical_code(sub)))
    return tuple(sorted(parts))


def graph_from_code(n: int, code: int) -> Graph:
    edges = []
    shift = n * (n - 1) // 2
    for i in range(n):
        for j in range(i + 1, n):
            shift -= 1
            if code >> shift & 1:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def canonical_graph(g: Graph) -> Graph:
    """Representative of the isomorphism class of ``g`` (components in form order)."""
    return disjoint_union([graph_from_code(n, code) for n, code in canonical_form(g)])


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_form(g) == canonical_form(h)


# -- enumeration ------------------------------------------------------------

def _connected_regular_bfs(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """Connected d-regular graphs labelled in BFS order from vertex 0.

    Vertex ``i`` is processed in label order; its edges go either to already
    discovered, unprocessed vertices or to fresh vertices taking the next
    free labels.  Every connected graph has such a labelling.
    """
    adj = [0] * n
    deg = [0] * n

    def rec(i: int, discovered: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(adj)
            return
        if i >= discovered:
            return
        need = d - deg[i]
        cands = [j for j in range(i + 1, discovered) if deg[j] < d and not adj[i] >> j & 1]
        for s in range(min(need, len(cands)), -1, -1):
            fresh = need - s
            if discovered + fresh > n:
                continue
            if fresh == 0 and discovered < n and i + 1 == discovered:
                # nothing left to reach the undiscovered vertices
                continue
            for chosen in itertools.combinations(cands, s):
                targets = list(chosen) + list(range(discovered, discovered + fresh))
                for j in targets:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                    deg[j] += 1
                deg[i] = d
                yield from rec(i + 1, discovered + fresh)
                for j in targets:
                    adj[i] &= ~(1 << j)
                    adj[j] &= ~(1 << i)
                    deg[j] -= 1
                deg[i] = d - need

    if n == 0:
        return
    yield from rec(0, 1)


def connected_regular_classes(n: int, d: int) -> list[Graph]:
    """One representative per isomorphism class of connected d-regular graphs."""
    seen: dict[tuple, Graph] = {}
    for adj in _connected_regular_bfs(n, d):
        g = Graph(n, adj)
        key = canonical_form(g)
        if key not in seen:
            seen[key] = canonical_graph(g)
    return [seen[k] for k in sorted(seen)]


def _labelled_regular(n: int, d: int) -> Iterator[Graph]:
    adj = [0] * n
    deg = [0] * n

    def rec(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, tuple(adj))
            return
        need = d - deg[v]
        cands = [u for u in range(v + 1, n) if deg[u] < d]
        if need < 0 or need > len(cands):
            return
        for chosen in itertools.combinations(cands, need):
            for u in chosen:
                adj[v] |= 1 << u
                adj[u] |= 1 << v
                deg[u] += 1
            deg[v] = d
            yield from rec(v + 1)
            for u in chosen:
                adj[v] &= ~(1 << u)
                adj[u] &= ~(1 << v)
                deg[u] -= 1
            deg[v] = d - need

    yield from rec(0)


def enumerate_regular(n: int, d: int, dedup: bool = True) -> Iterator[Graph]:
    """Stream d-regular graphs on ``n`` vertices.

    With ``dedup`` each isomorphism class is emitted exactly once, built as a
    multiset of connected classes.  Without it every labelled graph is
    emitted, which is only practical for very small ``n``.
    """
    if n * d % 2:
        raise ValueError(f"no {d}-regular graph on {n} vertices (n*d is odd)")
    if not 0 <= d < max(n, 1):
        raise ValueError(f"need 0 <= d < n, got n={n}, d={d}")
    _check_capacity(n)
    if not dedup:
        yield from _labelled_regular(n, d)
        return
    pieces = {k: connected_regular_classes(k, d) for k in range(d + 1, n + 1) if k * d % 2 == 0}
    pieces = {k: v for k, v in pieces.items() if v}
    atoms = [(k, i) for k in sorted(pieces) for i in range(len(pieces[k]))]

    def multisets(start: int, left: int) -> Iterator[list[tuple[int, int]]]:
        if left == 0:
            yield []
            return
        for idx in range(start, len(atoms)):
            k, _ = atoms[idx]
            if k <= left:
                for rest in multisets(idx, left - k):
                    yield [atoms[idx]] + rest

    for combo in multisets(0, n):
        yield disjoint_union([pieces[k][i] for k, i in combo])


def enumerate_graphs(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, by vertex augmentation."""
    level = [Graph(0, ())]
    for k in range(n):
        seen: dict[tuple, Graph] = {}
        for g in level:
            for nb in range(1 << k):
                adj = [a | ((nb >> v & 1) << k) for v, a in enumerate(g.adj)] + [nb]
                h = Graph(k + 1, tuple(adj))
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = h
        level = [seen[key] for key in sorted(seen)]
    return level


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for i, p in enumerate(pairs) if code >> i & 1))


def random_graph(n: int, p: float, rng) -> Graph:
    return Graph.from_edges(
        n, (e for e in itertools.combinations(range(n), 2) if rng.random() < p)
    )


# -- I/O --------------------------------------------------------------------

def _g6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    raise CapacityError("graph6 size field overflow")


def write_graph6(g: Graph) -> str:
    out = bytearray(_g6_size(g.n))
    chunk = count = 0
    for j in range(1, g.n):
        for i in range(j):
            chunk = (chunk << 1) | (g.adj[i] >> j & 1)
            count += 1
            if count == 6:
                out.append(chunk + 63)
                chunk = count = 0
    if count:
        out.append((chunk << (6 - count)) + 63)
    return out.decode("ascii")


def read_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    if not data:
        raise GraphFormatError("empty graph6 string", 0)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"invalid graph6 byte {byte!r}", pos)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 4 and data[1] != 126:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        raise GraphFormatError("unsupported graph6 size field", 0)
    _check_capacity(n)
    nbits = n * (n - 1) // 2
    expected = pos + (nbits + 5) // 6
    if len(data) != expected:
        raise GraphFormatError(
            f"expected {expected} bytes for n={n}, got {len(data)}", min(len(data), expected)
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    pad = (6 - nbits % 6) % 6
    if pad and (data[-1] - 63) & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", len(data) - 1)
    return Graph(n, tuple(adj))


def read_edge_list(text: str) -> Graph:
    try:
        obj = json.loads(text)
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise GraphFormatError(f"bad edge-list JSON: {exc}") from exc
    try:
        return Graph.from_edges(n, edges)
    except CapacityError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def write_edge_list(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def degree_histogram(g: Graph) -> Counter:
    return Counter(g.degrees())
